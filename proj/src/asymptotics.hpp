#pragma once

// Limit machinery for the statistic: the mean function g and its gradient,
// the score and its Fisher-scaled version, the indicator expectation Upsilon,
// the covariance kernel of the limiting Gaussian process, its Fredholm
// eigenvalues by Nystrom discretization, and the population discrepancy that
// drives consistency against fixed alternatives.

#include <array>
#include <vector>

#include "alternatives.hpp"
#include "beta_model.hpp"

namespace betagof {

// g(t) = t^alpha (1-t)^beta / B(alpha, beta); 0 at both endpoints.
double g_fn(double t, BetaParams p);

// (d/dalpha, d/dbeta) of g; by continuity 0 at t in {0,1}.
std::array<double, 2> g_grad(double t, BetaParams p);

// Gradient of the log-density at x in (0,1).
std::array<double, 2> score(double x, BetaParams p);

// fisher_inverse(p) * score(x, p): the influence direction of the estimator.
std::array<double, 2> ell(double x, BetaParams p);

// (E[(X-1) 1{X>=t}], E[X 1{X>=t}]) minus the g gradient, in closed form.
std::array<double, 2> upsilon(double t, BetaParams p);

struct KernelContext {
  BetaParams params{1.0, 1.0};
  int order = 32;  // Gauss-Legendre order per quadrature panel, >= 8

  // cached pieces, filled by make_kernel_context
  std::array<double, 4> fisher_inv{};
  double dg_a = 0.0, dg_b = 0.0, dg_s = 0.0;  // digamma at alpha, beta, sum
  double ln_b = 0.0;
};

KernelContext make_kernel_context(BetaParams p, int order = 32);

// Covariance kernel K(s,t) = E[h(X,s) h(X,t)] with
// h(x,s) = ((alpha+beta)x - alpha) 1{x>=s} + ell(x)^T upsilon(s) - g(s),
// integrated against the null density with the domain split at s and t.
double kernel(double s, double t, const KernelContext& ctx);

// E[h(X,s)]; identically 0 in theory, exposed for the centring diagnostic.
double kernel_centring(double s, const KernelContext& ctx);

struct EigenResult {
  std::vector<double> eigenvalues;  // nonincreasing, clipped to >= 0
  int m = 0;                        // grid size
  double trace = 0.0;               // sum_i w_i K(x_i, x_i)
  double min_raw = 0.0;             // smallest eigenvalue before clipping
  int clipped = 0;                  // how many tiny negatives were clipped
};

// Eigenvalues of the symmetrized weighted kernel matrix on an m-point
// Gauss-Legendre grid over [0,1].
EigenResult nystrom_eigenvalues(const KernelContext& ctx, int m,
                                int threads = 1);

// integral_0^1 ((alpha+beta) E[X 1{X>=t}] - alpha P(X>=t) - g(t))^2 dt with
// the expectation and probability under the alternative law.
double delta_discrepancy(const AlternativeSpec& alt, BetaParams p);

// The limit of the MLE under the alternative: solves the digamma system at
// the population log-moments; residual tolerance 1e-8.
FitResult pseudo_true_params(const AlternativeSpec& alt);

}  // namespace betagof
