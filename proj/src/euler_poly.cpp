#include <boost/multiprecision/cpp_int.hpp>

#include <mutex>
#include <vector>

#include "tractlab/util.hpp"

namespace tractlab {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Euler polynomials from E_n(x) = x^n - 1/2 sum_{k<n} C(n,k) E_k(x),
// a rearrangement of the Appell identity E_n(x+1) + E_n(x) = 2 x^n.
std::vector<std::vector<Rational>> euler_polynomials(int nmax) {
  std::vector<std::vector<Rational>> polys;
  polys.reserve(static_cast<std::size_t>(nmax) + 1);
  polys.push_back({Rational(1)});
  std::vector<BigInt> binom{1};
  for (int n = 1; n <= nmax; ++n) {
    binom.push_back(1);
    for (int k = n - 1; k >= 1; --k) binom[static_cast<std::size_t>(k)] += binom[static_cast<std::size_t>(k - 1)];
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
    c[static_cast<std::size_t>(n)] = 1;
    for (int k = 0; k < n; ++k) {
      Rational ck(binom[static_cast<std::size_t>(k)], 2);
      const auto& ek = polys[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < ek.size(); ++i) c[i] -= ck * ek[i];
    }
    polys.push_back(std::move(c));
  }
  return polys;
}

} // namespace

// Coefficients of (2^{2r} / (2r+1)!) * E_{2r+1}(x), lowest degree first,
// scaled exactly in rational arithmetic before the single rounding to double.
const std::vector<double>& scaled_euler_poly(int r) {
  constexpr int max_r = 30;
  if (r < 0 || r > max_r)
    throw invalid_argument_error(
        "euler kernel: smoothness above r=30 not supported by the polynomial table");
  static std::mutex mu;
  static std::vector<std::vector<double>> table;
  std::lock_guard<std::mutex> lock(mu);
  if (table.empty()) {
    auto polys = euler_polynomials(2 * max_r + 1);
    table.resize(max_r + 1);
    BigInt fact = 1;
    for (int n = 1; n <= 2 * max_r + 1; ++n) {
      fact *= n;
      if (n % 2 == 0) continue;
      int rr = (n - 1) / 2;
      Rational scale(BigInt(1) << (2 * rr), fact);
      auto& dst = table[static_cast<std::size_t>(rr)];
      dst.reserve(static_cast<std::size_t>(n) + 1);
      for (const auto& c : polys[static_cast<std::size_t>(n)])
        dst.push_back(static_cast<double>(Rational(c * scale)));
    }
  }
  return table[static_cast<std::size_t>(r)];
}

} // namespace tractlab
