#include "tractlab/tensor.hpp"

#include <cmath>
#include <cstdio>

namespace tractlab {

bool ProductEnumerator::Compare::operator()(const Entry& a, const Entry& b) const {
  // priority_queue pops the "largest" under this order: we want the larger
  // log_value first, ties resolved toward the lexicographically smaller index
  if (a.log_value != b.log_value) return a.log_value < b.log_value;
  const auto& arena = owner->arena_;
  for (std::size_t i = 0; i < owner->d_; ++i) {
    std::uint32_t ai = arena[a.offset + i], bi = arena[b.offset + i];
    if (ai != bi) return ai > bi;
  }
  return false;
}

ProductEnumerator::ProductEnumerator(FactorView& factors)
    : factors_(factors), d_(factors.dimension()), heap_(Compare{this}) {
  if (d_ == 0) throw invalid_argument_error("enumeration: dimension must be >= 1");
  double lv = 0.0;
  for (std::size_t k = 0; k < d_; ++k) {
    auto l = factors_.log_eigenvalue(k, 1);
    if (!l) throw invalid_argument_error("enumeration: factor has no eigenvalues");
    lv += *l;
    arena_.push_back(1);
  }
  heap_.push(Entry{lv, 0});
  stats_.pushed = 1;
  stats_.peak_frontier = 1;
}

void ProductEnumerator::push_successors(const Entry& e) {
  // last coordinate above 1 (position after which everything is 1)
  std::size_t first = 0;
  for (std::size_t i = d_; i-- > 0;) {
    if (arena_[e.offset + i] != 1) {
      first = i;
      break;
    }
  }
  for (std::size_t i = first; i < d_; ++i) {
    std::uint32_t j = arena_[e.offset + i];
    auto up = factors_.log_eigenvalue(i, j + 1);
    if (!up) {
      hit_truncation_ = true;
      continue;
    }
    std::uint64_t off = arena_.size();
    arena_.resize(off + d_);
    for (std::size_t t = 0; t < d_; ++t) arena_[off + t] = arena_[e.offset + t];
    arena_[off + i] = j + 1;
    // fresh left-to-right sum: the stored value is bit-for-bit the plain sum
    // of the univariate logs at the stored index, so ties stay exact
    double lv = 0.0;
    for (std::size_t t = 0; t < d_; ++t) lv += *factors_.log_eigenvalue(t, arena_[off + t]);
    heap_.push(Entry{lv, off});
    ++stats_.pushed;
  }
  stats_.peak_frontier = std::max<std::uint64_t>(stats_.peak_frontier, heap_.size());
}

std::optional<ProductEigenvalue> ProductEnumerator::next() {
  if (heap_.empty()) return std::nullopt;
  Entry top = heap_.top();
  heap_.pop();
  ++stats_.popped;
  push_successors(top);
  ProductEigenvalue out;
  out.log_value = top.log_value;
  out.index.assign(arena_.begin() + static_cast<std::ptrdiff_t>(top.offset),
                   arena_.begin() + static_cast<std::ptrdiff_t>(top.offset + d_));
  return out;
}

std::optional<double> SpectrumFactorView::log_eigenvalue(std::size_t k, std::uint32_t j) {
  const auto& s = spectra_[k];
  if (j < 1 || j > s.size()) return std::nullopt;
  return s.log_eigenvalues[j - 1];
}

double log_trace_product(std::span<const UnivariateSpectrum> spectra) {
  if (spectra.empty()) throw invalid_argument_error("log_trace_product: d must be >= 1");
  KahanSum s;
  for (const auto& sp : spectra) s.add(sp.log_trace);
  return s.get();
}

double truncation_loss_fraction(std::span<const UnivariateSpectrum> spectra) {
  KahanSum logp;
  for (const auto& sp : spectra) {
    double frac = std::exp(sp.log_tail - sp.log_trace);
    if (frac >= 1.0) return 1.0;
    logp.add(std::log1p(-frac));
  }
  return -std::expm1(logp.get());
}

double truncation_loss(std::span<const UnivariateSpectrum> spectra) {
  return truncation_loss_fraction(spectra) * std::exp(log_trace_product(spectra));
}

TensorAccount top_products(std::span<const UnivariateSpectrum> spectra, std::size_t m) {
  if (m == 0) throw invalid_argument_error("top_products: m must be >= 1");
  double log_grid = 0.0;
  for (const auto& sp : spectra) log_grid += std::log(static_cast<double>(sp.size()));
  if (std::log(static_cast<double>(m)) > log_grid + 1e-12)
    throw invalid_argument_error(
        "top_products: m exceeds the truncated grid; enlarge the per-factor truncation");

  SpectrumFactorView view(spectra);
  ProductEnumerator en(view);
  TensorAccount acc;
  acc.log_trace_product = log_trace_product(spectra);
  acc.truncation_loss_fraction = truncation_loss_fraction(spectra);
  acc.enumerated.reserve(m);
  KahanSum mass;
  while (acc.enumerated.size() < m) {
    auto pe = en.next();
    if (!pe) break;
    mass.add(std::exp(pe->log_value - acc.log_trace_product));
    acc.enumerated.push_back(std::move(*pe));
  }
  acc.enumerated_mass_fraction = mass.get();
  acc.stats = en.stats();
  return acc;
}

std::string TensorAccount::to_csv() const {
  std::string out = "#schema=tractlab.v1.products\n";
  std::size_t d = enumerated.empty() ? 0 : enumerated.front().index.size();
  out += "rank";
  for (std::size_t k = 1; k <= d; ++k) out += ",j" + std::to_string(k);
  out += ",logValue\n";
  char buf[64];
  for (std::size_t i = 0; i < enumerated.size(); ++i) {
    out += std::to_string(i + 1);
    for (auto j : enumerated[i].index) out += "," + std::to_string(j);
    std::snprintf(buf, sizeof buf, ",%.17g\n", enumerated[i].log_value);
    out += buf;
  }
  return out;
}

} // namespace tractlab
