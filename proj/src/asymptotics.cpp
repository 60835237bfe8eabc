#include "asymptotics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace betagof {

namespace {

void check_t(double t, const char* who) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error(std::string(who) + ": argument outside [0,1]");
  }
}

void check_params(BetaParams p, const char* who) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0)) {
    throw std::domain_error(std::string(who) + ": params must be positive");
  }
}

}  // namespace

double g_fn(double t, BetaParams p) {
  check_t(t, "g_fn");
  check_params(p, "g_fn");
  if (t == 0.0 || t == 1.0) return 0.0;
  return std::exp(p.alpha * std::log(t) + p.beta * std::log1p(-t) -
                  specfun::ln_beta(p.alpha, p.beta));
}

std::array<double, 2> g_grad(double t, BetaParams p) {
  check_t(t, "g_grad");
  check_params(p, "g_grad");
  if (t == 0.0 || t == 1.0) return {0.0, 0.0};
  const double g = g_fn(t, p);
  const double ds = specfun::digamma(p.alpha + p.beta);
  return {g * (std::log(t) - specfun::digamma(p.alpha) + ds),
          g * (std::log1p(-t) - specfun::digamma(p.beta) + ds)};
}

std::array<double, 2> score(double x, BetaParams p) {
  check_params(p, "score");
  if (!(x > 0.0 && x < 1.0)) {
    throw std::domain_error("score: x must lie strictly inside (0,1)");
  }
  const double ds = specfun::digamma(p.alpha + p.beta);
  return {ds - specfun::digamma(p.alpha) + std::log(x),
          ds - specfun::digamma(p.beta) + std::log1p(-x)};
}

std::array<double, 2> ell(double x, BetaParams p) {
  const std::array<double, 2> sc = score(x, p);
  const std::array<double, 4> fi = fisher_inverse(p);
  return {fi[0] * sc[0] + fi[1] * sc[1], fi[2] * sc[0] + fi[3] * sc[1]};
}

std::array<double, 2> upsilon(double t, BetaParams p) {
  check_t(t, "upsilon");
  check_params(p, "upsilon");
  const double mean = p.alpha / (p.alpha + p.beta);
  const double ex1 =
      mean * (1.0 - specfun::reg_inc_beta(t, p.alpha + 1.0, p.beta));
  const double e1 = 1.0 - specfun::reg_inc_beta(t, p.alpha, p.beta);
  const std::array<double, 2> gg = g_grad(t, p);
  return {ex1 - e1 - gg[0], ex1 - gg[1]};
}

KernelContext make_kernel_context(BetaParams p, int order) {
  check_params(p, "make_kernel_context");
  if (order < 8) throw std::invalid_argument("make_kernel_context: order < 8");
  KernelContext ctx;
  ctx.params = p;
  ctx.order = order;
  ctx.fisher_inv = fisher_inverse(p);
  ctx.dg_a = specfun::digamma(p.alpha);
  ctx.dg_b = specfun::digamma(p.beta);
  ctx.dg_s = specfun::digamma(p.alpha + p.beta);
  ctx.ln_b = specfun::ln_beta(p.alpha, p.beta);
  return ctx;
}

namespace {

// h(x, s) with the per-s pieces (upsilon(s), g(s)) precomputed.
struct HSlice {
  double s;
  double u1, u2;  // upsilon(s)
  double g;       // g(s)
};

HSlice make_slice(double s, const KernelContext& ctx) {
  const std::array<double, 2> u = upsilon(s, ctx.params);
  return {s, u[0], u[1], g_fn(s, ctx.params)};
}

// Evaluates h(x, slice) and the density f(x) in one pass.  Takes the
// quadrature point so the log of 1 - x stays finite at nodes where x has
// rounded to 1; the density with beta < 1 diverges there and must pair with
// the e^y node weight instead of overflowing.
struct PointEval {
  double h_common1, h_common2;  // ell(x)
  double cx;                    // (alpha+beta) x - alpha
  double f;                     // density
};

PointEval eval_point(quad::Point pt, const KernelContext& ctx) {
  const BetaParams p = ctx.params;
  const double x = pt.t;
  const double lx = std::log(pt.t);
  const double l1x = std::log(pt.omt);
  const double s1 = ctx.dg_s - ctx.dg_a + lx;
  const double s2 = ctx.dg_s - ctx.dg_b + l1x;
  PointEval e;
  e.h_common1 = ctx.fisher_inv[0] * s1 + ctx.fisher_inv[1] * s2;
  e.h_common2 = ctx.fisher_inv[2] * s1 + ctx.fisher_inv[3] * s2;
  e.cx = (p.alpha + p.beta) * x - p.alpha;
  e.f = std::exp((p.alpha - 1.0) * lx + (p.beta - 1.0) * l1x - ctx.ln_b);
  return e;
}

double h_of(const PointEval& e, double x, const HSlice& sl) {
  double h = e.h_common1 * sl.u1 + e.h_common2 * sl.u2 - sl.g;
  if (x >= sl.s) h += e.cx;
  return h;
}

}  // namespace

double kernel(double s, double t, const KernelContext& ctx) {
  check_t(s, "kernel");
  check_t(t, "kernel");
  const HSlice ss = make_slice(s, ctx);
  const HSlice st = make_slice(t, ctx);
  return quad::unit_interval(
      [&](quad::Point x) {
        const PointEval e = eval_point(x, ctx);
        return h_of(e, x.t, ss) * h_of(e, x.t, st) * e.f;
      },
      {s, t}, ctx.order);
}

double kernel_centring(double s, const KernelContext& ctx) {
  check_t(s, "kernel_centring");
  const HSlice ss = make_slice(s, ctx);
  return quad::unit_interval(
      [&](quad::Point x) {
        const PointEval e = eval_point(x, ctx);
        return h_of(e, x.t, ss) * e.f;
      },
      {s}, ctx.order);
}

EigenResult nystrom_eigenvalues(const KernelContext& ctx, int m, int threads) {
  if (m < 8) throw std::invalid_argument("nystrom_eigenvalues: m < 8");
  const quad::Rule& rule = quad::gauss_legendre(m);
  std::vector<double> node(m), weight(m);
  for (int i = 0; i < m; ++i) {
    node[i] = 0.5 * (1.0 + rule.x[i]);
    weight[i] = 0.5 * rule.w[i];
  }

  std::vector<HSlice> slices(m);
  for (int i = 0; i < m; ++i) slices[i] = make_slice(node[i], ctx);

  // Row-major upper triangle of the symmetrized matrix sqrt(w_i w_j) K_ij.
  Eigen::MatrixXd a(m, m);
  std::vector<double> diag_kernel(m, 0.0);
  parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t iu) {
    const int i = static_cast<int>(iu);
    for (int j = i; j < m; ++j) {
      const HSlice& si = slices[i];
      const HSlice& sj = slices[j];
      const double kij = quad::unit_interval(
          [&](quad::Point x) {
            const PointEval e = eval_point(x, ctx);
            return h_of(e, x.t, si) * h_of(e, x.t, sj) * e.f;
          },
          {si.s, sj.s}, ctx.order);
      const double v = std::sqrt(weight[i] * weight[j]) * kij;
      a(i, j) = v;
      a(j, i) = v;
      if (j == i) diag_kernel[i] = kij;
    }
  });

  double trace = 0.0;
  for (int i = 0; i < m; ++i) trace += weight[i] * diag_kernel[i];

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("nystrom_eigenvalues: eigensolver failed");
  }

  EigenResult r;
  r.m = m;
  r.trace = trace;
  r.eigenvalues.assign(solver.eigenvalues().data(),
                       solver.eigenvalues().data() + m);
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), std::greater<double>());
  r.min_raw = r.eigenvalues.back();
  for (double& v : r.eigenvalues) {
    if (v < 0.0 && v >= -1e-8) {
      v = 0.0;
      ++r.clipped;
    }
  }
  return r;
}

double delta_discrepancy(const AlternativeSpec& alt, BetaParams p) {
  check_params(p, "delta_discrepancy");
  const double ab = p.alpha + p.beta;
  const double ln_b = specfun::ln_beta(p.alpha, p.beta);
  auto g = [&](double t) {
    return std::exp(p.alpha * std::log(t) + p.beta * std::log1p(-t) - ln_b);
  };
  return quad::unit_interval(
      [&](double t) {
        const double d = ab * alternative_partial_mean(alt, t) -
                         p.alpha * (1.0 - alternative_cdf(alt, t)) - g(t);
        return d * d;
      },
      {}, 32);
}

FitResult pseudo_true_params(const AlternativeSpec& alt) {
  const LogMoments lm = population_log_moments(alt);
  const BetaParams starts[] = {{1.0, 1.0}, {2.0, 2.0}, {5.0, 1.0}, {1.0, 5.0},
                               {0.5, 0.5}, {8.0, 2.0}, {2.0, 8.0}};
  for (const BetaParams& s : starts) {
    try {
      return fit_from_log_moments(lm.ln_x, lm.ln_1mx, s, 1e-8);
    } catch (const NoConvergence&) {
    }
  }
  throw NoConvergence("pseudo_true_params: digamma system did not converge "
                      "from any starting point");
}

}  // namespace betagof
