#include "gof_stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "errors.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace betagof {

namespace {

void check_values(const std::vector<double>& xs, const char* who) {
  if (xs.empty()) throw std::invalid_argument(std::string(who) + ": empty sample");
  for (double x : xs) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::domain_error(std::string(who) + ": value outside [0,1]");
    }
  }
}

void check_params(BetaParams p, const char* who) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0)) {
    throw std::domain_error(std::string(who) + ": params must be positive");
  }
}

double g_of(double t, BetaParams p, double ln_b) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::exp(p.alpha * std::log(t) + p.beta * std::log1p(-t) - ln_b);
}

}  // namespace

std::string Statistic::name() const {
  switch (kind) {
    case StatKind::Tn:
      return "tn";
    case StatKind::KS:
      return "ks";
    case StatKind::CM:
      return "cm";
    case StatKind::AD:
      return "ad";
    case StatKind::RF: {
      // trim trailing zeros so rf:0.25 and rf:2 print naturally
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%g", a);
      return std::string("rf:") + buf;
    }
  }
  return "?";
}

Statistic parse_statistic(const std::string& text) {
  std::string s;
  for (char ch : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (s == "tn") return {StatKind::Tn};
  if (s == "ks") return {StatKind::KS};
  if (s == "cm") return {StatKind::CM};
  if (s == "ad") return {StatKind::AD};
  if (s.rfind("rf:", 0) == 0) {
    std::size_t pos = 0;
    double a = 0.0;
    try {
      a = std::stod(s.substr(3), &pos);
    } catch (const std::exception&) {
      throw ParseError("bad RF tuning parameter in '" + text + "'", 3);
    }
    if (pos != s.size() - 3 || !(a > 0.0)) {
      throw ParseError("RF tuning parameter must be a positive number", 3);
    }
    return {StatKind::RF, a};
  }
  throw ParseError("unknown statistic '" + text +
                       "' (expected tn, rf:a, ks, cm, or ad)",
                   0);
}

double t_statistic(const std::vector<double>& xs, BetaParams p) {
  check_values(xs, "t_statistic");
  check_params(p, "t_statistic");
  const std::size_t n = xs.size();
  std::vector<double> x(xs);
  std::sort(x.begin(), x.end());
  const double ab = p.alpha + p.beta;

  // (1/n) sum_{j,k} c_j c_k min(x_j, x_k) over sorted data via suffix sums:
  // the pair (j,k) with j<k contributes twice with min = x_j.
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = ab * x[i] - p.alpha;
  double suffix = 0.0;
  for (std::size_t i = 0; i < n; ++i) suffix += c[i];
  double term1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    suffix -= c[i];
    term1 += x[i] * c[i] * (c[i] + 2.0 * suffix);
  }
  term1 /= static_cast<double>(n);

  const double ln_b = specfun::ln_beta(p.alpha, p.beta);
  const double ratio =
      std::exp(specfun::ln_beta(p.alpha + 1.0, p.beta + 1.0) - ln_b);
  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cross += c[i] * specfun::reg_inc_beta(x[i], p.alpha + 1.0, p.beta + 1.0);
  }
  const double term2 = 2.0 * ratio * cross;

  const double term3 =
      static_cast<double>(n) *
      std::exp(specfun::ln_beta(2.0 * p.alpha + 1.0, 2.0 * p.beta + 1.0) -
               2.0 * ln_b);

  return term1 - term2 + term3;
}

double t_statistic_quadrature(const std::vector<double>& xs, BetaParams p) {
  check_values(xs, "t_statistic_quadrature");
  check_params(p, "t_statistic_quadrature");
  const std::size_t n = xs.size();
  std::vector<double> x(xs);
  std::sort(x.begin(), x.end());
  const double ab = p.alpha + p.beta;
  const double ln_b = specfun::ln_beta(p.alpha, p.beta);

  // On (x_(i), x_(i+1)) the empirical part is the constant
  // n^-1 sum_{j > i} c_j; walk pieces from 0 to 1.
  double total = 0.0;
  double suffix = 0.0;
  for (std::size_t i = 0; i < n; ++i) suffix += ab * x[i] - p.alpha;
  double lo = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double hi = (i == n) ? 1.0 : x[i];
    if (hi > lo) {
      const double level = suffix / static_cast<double>(n);
      total += quad::split_panel(
          [&](double t) {
            const double d = level - g_of(t, p, ln_b);
            return d * d;
          },
          lo, hi, 32);
      lo = hi;
    }
    if (i < n) suffix -= ab * x[i] - p.alpha;
  }
  return static_cast<double>(n) * total;
}

double rf_statistic(const std::vector<double>& xs, BetaParams p, double a) {
  check_values(xs, "rf_statistic");
  check_params(p, "rf_statistic");
  if (!(a > 0.0)) throw std::domain_error("rf_statistic: tuning parameter must be positive");
  const std::size_t n = xs.size();
  const double alpha2 = p.alpha * p.alpha;
  const double xbar = p.alpha / (p.alpha + p.beta);
  const double xbar2 = xbar * xbar;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = xs[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double xj = xs[j];
      const double den = xi + xj + a;
      // closed form of n * integral of D_n(t)^2 e^{-at} dt, where D_n is the
      // empirical Laplace transform pushed through the beta ODE
      // (t/a)L'' + (1/xbar + t/a)L' + L; the middle term carries one factor
      // of alpha (from the t-coefficient) and one of xbar
      const double t1 = 2.0 * (xi * xj * (xj * (xi - 2.0) + 1.0)) / alpha2;
      const double t2 = 2.0 * (xi * xj * (1.0 - xj) - xi * xbar * (1.0 - xi)) /
                        (p.alpha * xbar);
      const double t3 = (xi * xj - 2.0 * xi * xbar + xbar2) / xbar2;
      acc += t1 / (den * den * den) + t2 / (den * den) + t3 / den;
    }
  }
  return acc / static_cast<double>(n);
}

namespace {

std::vector<double> sorted_pit(const std::vector<double>& xs, BetaParams p) {
  std::vector<double> u(xs);
  std::sort(u.begin(), u.end());
  for (double& v : u) v = specfun::reg_inc_beta(v, p.alpha, p.beta);
  return u;
}

double ks_of(const std::vector<double>& u) {
  const double dn = static_cast<double>(u.size());
  double dplus = -1.0, dminus = -1.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double fi = static_cast<double>(i + 1);
    dplus = std::max(dplus, fi / dn - u[i]);
    dminus = std::max(dminus, u[i] - (fi - 1.0) / dn);
  }
  return std::max(dplus, dminus);
}

double cm_of(const std::vector<double>& u) {
  const double dn = static_cast<double>(u.size());
  double cm = 1.0 / (12.0 * dn);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - (2.0 * static_cast<double>(i + 1) - 1.0) / (2.0 * dn);
    cm += d * d;
  }
  return cm;
}

double ad_of(const std::vector<double>& u) {
  const std::size_t n = u.size();
  const double dn = static_cast<double>(n);
  double ad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ui = u[i];
    const double urev = u[n - 1 - i];
    if (ui <= 0.0 || ui >= 1.0 || urev <= 0.0 || urev >= 1.0) {
      throw DegenerateTransform(
          "probability integral transform hit 0 or 1; AD is undefined");
    }
    ad += (2.0 * static_cast<double>(i + 1) - 1.0) *
          (std::log(ui) + std::log1p(-urev));
  }
  return -dn - ad / dn;
}

}  // namespace

EdfValues edf_statistics(const std::vector<double>& xs, BetaParams p) {
  check_values(xs, "edf_statistics");
  check_params(p, "edf_statistics");
  const std::vector<double> u = sorted_pit(xs, p);
  return {ks_of(u), cm_of(u), ad_of(u)};
}

double evaluate_statistic(const Statistic& st, const std::vector<double>& xs,
                          BetaParams p) {
  switch (st.kind) {
    case StatKind::Tn:
      return t_statistic(xs, p);
    case StatKind::RF:
      return rf_statistic(xs, p, st.a);
    case StatKind::KS:
    case StatKind::CM:
    case StatKind::AD: {
      check_values(xs, "evaluate_statistic");
      check_params(p, "evaluate_statistic");
      const std::vector<double> u = sorted_pit(xs, p);
      if (st.kind == StatKind::KS) return ks_of(u);
      if (st.kind == StatKind::CM) return cm_of(u);
      return ad_of(u);
    }
  }
  throw std::logic_error("evaluate_statistic: unhandled kind");
}

std::vector<double> evaluate_battery(const std::vector<Statistic>& sts,
                                     const std::vector<double>& xs,
                                     BetaParams p) {
  std::vector<double> out(sts.size());
  std::vector<double> u;  // sorted PIT, built on first EDF member
  for (std::size_t i = 0; i < sts.size(); ++i) {
    const Statistic& st = sts[i];
    switch (st.kind) {
      case StatKind::Tn:
        out[i] = t_statistic(xs, p);
        break;
      case StatKind::RF:
        out[i] = rf_statistic(xs, p, st.a);
        break;
      case StatKind::KS:
      case StatKind::CM:
      case StatKind::AD:
        check_values(xs, "evaluate_battery");
        check_params(p, "evaluate_battery");
        if (u.empty()) u = sorted_pit(xs, p);
        if (st.kind == StatKind::KS) {
          out[i] = ks_of(u);
        } else if (st.kind == StatKind::CM) {
          out[i] = cm_of(u);
        } else {
          out[i] = ad_of(u);
        }
        break;
    }
  }
  return out;
}

}  // namespace betagof
