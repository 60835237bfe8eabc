#include "quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace betagof::quad {

namespace {

Rule compute(int m) {
  constexpr double pi = 3.141592653589793238462643383279502884;
  Rule r;
  r.x.assign(m, 0.0);
  r.w.assign(m, 0.0);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton on P_m, starting from the Chebyshev-like estimate.
    double x = std::cos(pi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = m * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[m - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.w[i] = w;
    r.w[m - 1 - i] = w;
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int m) {
  if (m < 1 || m > 4096) throw std::invalid_argument("gauss_legendre: bad order");
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, compute(m)).first;
  return it->second;
}

}  // namespace betagof::quad
