#ifndef TRACTLAB_TENSOR_HPP
#define TRACTLAB_TENSOR_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "tractlab/spectra.hpp"
#include "tractlab/util.hpp"

namespace tractlab {

/// One d-variate product eigenvalue: the multi-index (1-based per factor)
/// and ln of the product value, reconstructible as the sum of the stored
/// univariate log-eigenvalues.
struct ProductEigenvalue {
  std::vector<std::uint32_t> index;
  double log_value = 0.0;
};

struct EnumerationStats {
  std::uint64_t popped = 0;
  std::uint64_t pushed = 0;
  std::uint64_t peak_frontier = 0;
};

/// Factor access used by the frontier search. Depth may be infinite
/// (extensible closed-form factors) or fixed (truncated spectra).
class FactorView {
public:
  virtual ~FactorView() = default;
  virtual std::size_t dimension() const = 0;
  /// ln lambda_{j,k}; j is 1-based. Returns nullopt when factor k cannot
  /// supply depth j (truncated grid).
  virtual std::optional<double> log_eigenvalue(std::size_t k, std::uint32_t j) = 0;
};

/// Best-first enumeration of product eigenvalues in non-increasing order,
/// ties broken by lexicographic index order. Successors follow the
/// predecessor rule: coordinate i may be incremented only when every later
/// coordinate equals 1, so each index is generated exactly once and the
/// frontier stays O(d * popped).
class ProductEnumerator {
public:
  explicit ProductEnumerator(FactorView& factors);

  /// Next largest product, or nullopt when the reachable grid is exhausted.
  std::optional<ProductEigenvalue> next();

  const EnumerationStats& stats() const { return stats_; }

  /// True once some successor was skipped because a factor was truncated.
  bool hit_truncation() const { return hit_truncation_; }

private:
  struct Entry {
    double log_value;
    std::uint64_t offset;  // start of d indices in the arena
  };
  struct Compare {
    ProductEnumerator* owner;
    bool operator()(const Entry& a, const Entry& b) const;
  };

  void push_successors(const Entry& e);

  FactorView& factors_;
  std::size_t d_;
  std::vector<std::uint32_t> arena_;
  std::priority_queue<Entry, std::vector<Entry>, Compare> heap_;
  EnumerationStats stats_;
  bool hit_truncation_ = false;
};

/// Enumerated account of the m largest product eigenvalues over truncated
/// spectra together with certified mass bookkeeping.
struct TensorAccount {
  std::vector<ProductEigenvalue> enumerated;  // non-increasing
  double log_trace_product = 0.0;
  double enumerated_mass_fraction = 0.0;      // of exp(log_trace_product)
  double truncation_loss_fraction = 0.0;      // certified upper bound
  EnumerationStats stats;

  double enumerated_mass() const { return enumerated_mass_fraction * std::exp(log_trace_product); }
  double truncation_loss() const { return truncation_loss_fraction * std::exp(log_trace_product); }

  /// CSV rows "rank,j_1,...,j_d,logValue" under a schema header.
  std::string to_csv() const;
};

/// The m largest products of the given truncated spectra, exactly and in
/// order. Throws when m exceeds the truncated grid size.
TensorAccount top_products(std::span<const UnivariateSpectrum> spectra, std::size_t m);

/// ln prod_k Lambda(k), from the exact per-factor traces.
double log_trace_product(std::span<const UnivariateSpectrum> spectra);

/// Certified upper bound on prod_k Lambda(k) - prod_k (stored mass of k),
/// computed as T * (1 - exp(sum_k ln(1 - tail_k / Lambda_k))).
double truncation_loss(std::span<const UnivariateSpectrum> spectra);
double truncation_loss_fraction(std::span<const UnivariateSpectrum> spectra);

/// FactorView over fixed truncated spectra.
class SpectrumFactorView final : public FactorView {
public:
  explicit SpectrumFactorView(std::span<const UnivariateSpectrum> spectra) : spectra_(spectra) {}
  std::size_t dimension() const override { return spectra_.size(); }
  std::optional<double> log_eigenvalue(std::size_t k, std::uint32_t j) override;

private:
  std::span<const UnivariateSpectrum> spectra_;
};

} // namespace tractlab

#endif
