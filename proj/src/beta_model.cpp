#include "beta_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "errors.hpp"
#include "rng.hpp"
#include "specfun.hpp"

namespace betagof {

namespace {

void check_params(BetaParams p, const char* who) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0) || !std::isfinite(p.alpha) ||
      !std::isfinite(p.beta)) {
    throw std::domain_error(std::string(who) + ": shape parameters must be positive");
  }
}

}  // namespace

double beta_pdf(double x, BetaParams p) {
  check_params(p, "beta_pdf");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("beta_pdf: x outside [0,1]");
  const double ea = p.alpha - 1.0;
  const double eb = p.beta - 1.0;
  if (x == 0.0) {
    if (ea < 0.0) return std::numeric_limits<double>::infinity();
    if (ea > 0.0) return 0.0;
    return std::exp(-specfun::ln_beta(p.alpha, p.beta));  // alpha == 1
  }
  if (x == 1.0) {
    if (eb < 0.0) return std::numeric_limits<double>::infinity();
    if (eb > 0.0) return 0.0;
    return std::exp(-specfun::ln_beta(p.alpha, p.beta));
  }
  return std::exp(ea * std::log(x) + eb * std::log1p(-x) -
                  specfun::ln_beta(p.alpha, p.beta));
}

double beta_cdf(double t, BetaParams p) {
  check_params(p, "beta_cdf");
  return specfun::reg_inc_beta(t, p.alpha, p.beta);
}

double beta_quantile(double q, BetaParams p) {
  check_params(p, "beta_quantile");
  return specfun::inv_reg_inc_beta(q, p.alpha, p.beta);
}

std::vector<double> sample_beta(std::size_t n, BetaParams p, std::uint64_t seed) {
  check_params(p, "sample_beta");
  rng::Engine eng(seed);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = eng.beta(p.alpha, p.beta);
  return out;
}

std::vector<double> sample_beta_invcdf(std::size_t n, BetaParams p,
                                       std::uint64_t seed) {
  check_params(p, "sample_beta_invcdf");
  rng::Engine eng(seed);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = specfun::inv_reg_inc_beta(eng.uniform(), p.alpha, p.beta);
  }
  return out;
}

void require_interior(const std::vector<double>& xs) {
  for (double x : xs) {
    if (!(x > 0.0 && x < 1.0)) {
      throw NonInteriorData(
          "sample contains values at 0 or 1; the likelihood needs strictly "
          "interior data (consider explicit winsorizing)");
    }
  }
}

BetaParams moment_fit(const std::vector<double>& xs) {
  if (xs.empty()) throw DegenerateSample("moment_fit: empty sample");
  const std::size_t n = xs.size();
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(n);
  const double bound = mean * (1.0 - mean);
  if (!(var > 0.0) || var >= bound) {
    throw DegenerateSample(
        "moment_fit: sample variance outside (0, mean(1-mean))");
  }
  const double scale = bound / var - 1.0;
  return {mean * scale, (1.0 - mean) * scale};
}

FitResult fit_from_log_moments(double L1, double L2, BetaParams init,
                               double tol) {
  double a = init.alpha, b = init.beta;
  auto residual = [&](double aa, double bb, double& f1, double& f2) {
    const double ds = specfun::digamma(aa + bb);
    f1 = specfun::digamma(aa) - ds - L1;
    f2 = specfun::digamma(bb) - ds - L2;
    return std::max(std::fabs(f1), std::fabs(f2));
  };
  double f1, f2;
  double res = residual(a, b, f1, f2);
  int iter = 0;
  for (; iter < 200 && res > 1e-13; ++iter) {
    const double ts = specfun::trigamma(a + b);
    const double j11 = specfun::trigamma(a) - ts;
    const double j22 = specfun::trigamma(b) - ts;
    const double j12 = -ts;
    const double det = j11 * j22 - j12 * j12;
    if (det == 0.0 || !std::isfinite(det)) break;
    double da = -(f1 * j22 - f2 * j12) / det;
    double db = -(j11 * f2 - j12 * f1) / det;
    // halve until the iterate stays in the positive quadrant and the
    // residual does not increase
    double na = a + da, nb = b + db;
    double nres = std::numeric_limits<double>::infinity();
    double nf1 = f1, nf2 = f2;
    for (int halvings = 0; halvings < 60; ++halvings) {
      if (na > 0.0 && nb > 0.0) {
        nres = residual(na, nb, nf1, nf2);
        if (nres <= res || halvings >= 30) break;
      }
      da *= 0.5;
      db *= 0.5;
      na = a + da;
      nb = b + db;
    }
    if (!(na > 0.0 && nb > 0.0)) break;
    a = na;
    b = nb;
    f1 = nf1;
    f2 = nf2;
    res = nres;
  }
  if (!(res <= tol)) {
    throw NoConvergence("log-moment fit: residual " + std::to_string(res) +
                        " above tolerance after " + std::to_string(iter) +
                        " iterations");
  }
  return {{a, b}, iter, res};
}

FitResult mle_fit(const std::vector<double>& xs) {
  if (xs.size() < 2) throw DegenerateSample("mle_fit: need at least 2 values");
  require_interior(xs);
  const bool constant =
      std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs[0]; });
  if (constant) throw DegenerateSample("mle_fit: constant sample");
  double L1 = 0.0, L2 = 0.0;
  for (double x : xs) {
    L1 += std::log(x);
    L2 += std::log1p(-x);
  }
  L1 /= static_cast<double>(xs.size());
  L2 /= static_cast<double>(xs.size());
  BetaParams init{1.0, 1.0};
  try {
    init = moment_fit(xs);
  } catch (const DegenerateSample&) {
    // fall back to the flat start; interior nonconstant data cannot actually
    // trip the moment bounds, so this is belt and braces
  }
  return fit_from_log_moments(L1, L2, init, 1e-10);
}

BetaParams fit(const std::vector<double>& xs, EstimationMethod method) {
  if (method == EstimationMethod::MaximumLikelihood) return mle_fit(xs).params;
  return moment_fit(xs);
}

std::array<double, 4> fisher_inverse(BetaParams p) {
  check_params(p, "fisher_inverse");
  const double ta = specfun::trigamma(p.alpha);
  const double tb = specfun::trigamma(p.beta);
  const double ts = specfun::trigamma(p.alpha + p.beta);
  const double d = (ta + tb) * ts - ta * tb;
  return {(ts - tb) / d, -ts / d, -ts / d, (ts - ta) / d};
}

}  // namespace betagof
