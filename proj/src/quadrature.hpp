#pragma once

// Gauss-Legendre quadrature with helpers for integrals over (0,1) whose
// integrand may kink at interior cut points and may behave like
// x^(a-1) * log^k(x) near either endpoint.  Every subinterval is integrated
// in log distance from the nearer endpoint, so panels shrink geometrically
// toward 0 and 1 and fractional-power behavior costs no accuracy.
//
// Nodes near 1 are closer to the endpoint than one ulp, where 1 - e rounds
// back to 1.0 in double.  The (0,1) helpers therefore hand integrands a Point
// carrying both the abscissa and its exactly-propagated complement; integrands
// singular in 1 - t should read `omt` instead of recomputing it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace betagof::quad {

struct Rule {
  std::vector<double> x;  // nodes on [-1, 1], ascending
  std::vector<double> w;  // weights, sum 2
};

// Abscissa in (0,1) together with its complement.  `omt` holds 1 - t to full
// precision even when t itself has rounded to 1.0, so integrands with
// (1-t)-power or log(1-t) behavior stay finite at deep right-endpoint nodes.
// Converts to double, so integrands that ignore the complement can keep a
// plain double parameter.
struct Point {
  double t;
  double omt;  // 1 - t
  operator double() const { return t; }
};

// Cached rule lookup; thread-safe.
const Rule& gauss_legendre(int m);

template <class F>
double panel(F&& f, double a, double b, int m = 64) {
  const Rule& r = gauss_legendre(m);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < m; ++i) acc += r.w[i] * f(mid + half * r.x[i]);
  return half * acc;
}

template <class F>
double composite(F&& f, double a, double b, int panels, int m = 32) {
  if (panels < 1) panels = 1;
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) acc += panel(f, a + p * h, a + (p + 1) * h, m);
  return acc;
}

namespace detail {

// Truncation depth in log scale: e^-110 ~ 1.7e-48, so the dropped tail of an
// x^(a-1) endpoint factor is below 1e-14 for exponents down to 0.3.
constexpr double kLogFloor = -110.0;

// Integral of f over [lo, hi] via t = e^y; lo == 0 means "from the endpoint".
// Only called with hi <= the piece midpoint, so 1 - t never cancels badly.
template <class F>
double in_log_left(F&& f, double lo, double hi, int m) {
  const double y_lo = lo > 0.0 ? std::log(lo) : kLogFloor;
  const double y_hi = std::log(hi);
  if (!(y_hi > y_lo)) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(y_hi - y_lo)));
  auto g = [&f](double y) {
    const double t = std::exp(y);
    return t * f(Point{t, 1.0 - t});
  };
  return composite(g, y_lo, y_hi, panels, m);
}

// Integral of f over [lo, hi] via 1 - t = e^y; hi == 1 means "to the endpoint".
// The complement e is the exact quantity here; 1 - e may round to 1.0.
template <class F>
double in_log_right(F&& f, double lo, double hi, int m) {
  const double y_lo = hi < 1.0 ? std::log(1.0 - hi) : kLogFloor;
  const double y_hi = std::log(1.0 - lo);
  if (!(y_hi > y_lo)) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(y_hi - y_lo)));
  auto g = [&f](double y) {
    const double e = std::exp(y);
    return e * f(Point{1.0 - e, e});
  };
  return composite(g, y_lo, y_hi, panels, m);
}

}  // namespace detail

// Integral of f over a subinterval [lo, hi] of [0,1] on which f is smooth,
// allowing endpoint-type behavior at 0 and 1: the left half is integrated in
// log t, the right half in log(1-t).
template <class F>
double split_panel(F&& f, double lo, double hi, int m = 32) {
  if (!(hi > lo)) return 0.0;
  if (hi - lo < 1e-13) {
    // sliver piece, one midpoint evaluation; the complement must come from
    // the endpoint complements or a piece hugging 1 collapses it to zero
    const double mid = 0.5 * (lo + hi);
    const double omt = 0.5 * ((1.0 - lo) + (1.0 - hi));
    return (hi - lo) * f(Point{mid, omt});
  }
  const double mid = 0.5 * (lo + hi);
  return detail::in_log_left(f, lo, mid, m) + detail::in_log_right(f, mid, hi, m);
}

// Integral of f over (0,1).  `cuts` lists interior points where f may be
// discontinuous or kinked; each becomes a piece boundary.
template <class F>
double unit_interval(F&& f, std::vector<double> cuts = {}, int m = 32) {
  std::vector<double> b;
  b.reserve(cuts.size() + 2);
  b.push_back(0.0);
  for (double c : cuts) {
    if (c > 0.0 && c < 1.0) b.push_back(c);
  }
  b.push_back(1.0);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    acc += split_panel(f, b[i], b[i + 1], m);
  }
  return acc;
}

}  // namespace betagof::quad
