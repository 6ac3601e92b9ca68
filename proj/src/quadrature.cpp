#include "tractlab/quadrature.hpp"

#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>

#include "tractlab/quadrature_impl.hpp"

namespace tractlab {

const QuadratureRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw invalid_argument_error("gauss_legendre: n must be positive");
  static std::mutex mu;
  static std::map<std::size_t, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto [x, w] = gauss_legendre_t<double>(n);
    it = cache.emplace(n, QuadratureRule{std::move(x), std::move(w)}).first;
  }
  return it->second;
}

unsigned thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("TRACTLAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v < 1024) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned nt = static_cast<unsigned>(std::min<std::size_t>(thread_budget(), n));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next.store(n);
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

} // namespace tractlab
