#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "asymptotics.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

using namespace betagof;

namespace {

// Density and score evaluated from the quadrature point, so deep
// right-endpoint nodes (where x rounds to 1) use the exact complement instead
// of log1p(-1).
double beta_density(quad::Point x, BetaParams p) {
  return std::exp((p.alpha - 1.0) * std::log(x.t) +
                  (p.beta - 1.0) * std::log(x.omt) -
                  specfun::ln_beta(p.alpha, p.beta));
}

std::array<double, 2> score_at(quad::Point x, BetaParams p) {
  const double ds = specfun::digamma(p.alpha + p.beta);
  return {ds - specfun::digamma(p.alpha) + std::log(x.t),
          ds - specfun::digamma(p.beta) + std::log(x.omt)};
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("mean function matches the density ratio form") {
  const BetaParams p{2.0, 3.0};
  // g(t) = t^2 (1-t)^3 / B(2,3), B(2,3) = 1/12
  CHECK(std::abs(g_fn(0.4, p) - 12.0 * 0.16 * 0.216) <= 1e-14);
  CHECK(g_fn(0.0, p) == 0.0);
  CHECK(g_fn(1.0, p) == 0.0);
  CHECK_THROWS_AS(g_fn(0.5, BetaParams{0.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(g_fn(1.5, p), std::domain_error);
}

TEST_CASE("gradient of the mean function agrees with finite differences") {
  const double h = 1e-5;
  for (BetaParams p : {BetaParams{2.0, 2.0}, BetaParams{0.5, 3.0},
                       BetaParams{6.36, 1.97}}) {
    for (double t : {0.05, 0.3, 0.5, 0.77, 0.95}) {
      CAPTURE(p.alpha);
      CAPTURE(p.beta);
      CAPTURE(t);
      const std::array<double, 2> an = g_grad(t, p);
      const double fd_a = (g_fn(t, {p.alpha + h, p.beta}) -
                           g_fn(t, {p.alpha - h, p.beta})) /
                          (2.0 * h);
      const double fd_b = (g_fn(t, {p.alpha, p.beta + h}) -
                           g_fn(t, {p.alpha, p.beta - h})) /
                          (2.0 * h);
      CHECK(std::abs(an[0] - fd_a) <= 1e-8);
      CHECK(std::abs(an[1] - fd_b) <= 1e-8);
    }
  }
}

TEST_CASE("score has mean zero and the scaled score has unit cross-moment") {
  for (BetaParams p : {BetaParams{2.0, 2.0}, BetaParams{2.5, 0.7}}) {
    CAPTURE(p.alpha);
    CAPTURE(p.beta);
    // the exported functions match the point-based form at interior x
    const std::array<double, 4> fi = fisher_inverse(p);
    for (double x : {0.07, 0.37, 0.93}) {
      const std::array<double, 2> sc = score(x, p);
      const std::array<double, 2> sp = score_at({x, 1.0 - x}, p);
      CHECK(std::abs(sc[0] - sp[0]) <= 1e-13);
      CHECK(std::abs(sc[1] - sp[1]) <= 1e-13);
      const std::array<double, 2> el = ell(x, p);
      CHECK(std::abs(el[0] - (fi[0] * sp[0] + fi[1] * sp[1])) <= 1e-13);
      CHECK(std::abs(el[1] - (fi[2] * sp[0] + fi[3] * sp[1])) <= 1e-13);
    }
    for (int i = 0; i < 2; ++i) {
      const double mean_score = quad::unit_interval(
          [&](quad::Point x) { return score_at(x, p)[i] * beta_density(x, p); },
          {}, 32);
      CHECK(std::abs(mean_score) <= 1e-10);
      const double mean_ell = quad::unit_interval(
          [&](quad::Point x) {
            const std::array<double, 2> s = score_at(x, p);
            return (fi[2 * i] * s[0] + fi[2 * i + 1] * s[1]) *
                   beta_density(x, p);
          },
          {}, 32);
      CHECK(std::abs(mean_ell) <= 1e-9);
    }
    // E[ell(X) score(X)^T] is the identity: the Fisher factor cancels
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double m = quad::unit_interval(
            [&](quad::Point x) {
              const std::array<double, 2> s = score_at(x, p);
              return (fi[2 * i] * s[0] + fi[2 * i + 1] * s[1]) * s[j] *
                     beta_density(x, p);
            },
            {}, 32);
        CHECK(std::abs(m - (i == j ? 1.0 : 0.0)) <= 1e-8);
      }
    }
  }
  CHECK_THROWS_AS(score(0.0, BetaParams{2.0, 2.0}), std::domain_error);
}

TEST_CASE("indicator expectation matches direct integrals") {
  for (BetaParams p : {BetaParams{2.0, 2.0}, BetaParams{0.5, 3.0}}) {
    for (double t : {0.1, 0.45, 0.9}) {
      CAPTURE(p.alpha);
      CAPTURE(t);
      const std::array<double, 2> u = upsilon(t, p);
      const std::array<double, 2> gg = g_grad(t, p);
      const double ex1 = quad::split_panel(
          [&](quad::Point x) { return x.t * beta_density(x, p); }, t, 1.0, 32);
      const double e1 = quad::split_panel(
          [&](quad::Point x) { return beta_density(x, p); }, t, 1.0, 32);
      CHECK(std::abs(u[0] - (ex1 - e1 - gg[0])) <= 1e-10);
      CHECK(std::abs(u[1] - (ex1 - gg[1])) <= 1e-10);
    }
  }
}

TEST_CASE("covariance kernel values, symmetry, and centring") {
  const KernelContext c22 = make_kernel_context({2.0, 2.0});
  CHECK(std::abs(kernel(0.3, 0.6, c22) - 0.026457165987772) <= 1e-9);
  CHECK(std::abs(kernel(0.3, 0.6, c22) - kernel(0.6, 0.3, c22)) <= 1e-14);

  const KernelContext chalf = make_kernel_context({0.5, 3.0});
  CHECK(std::abs(kernel(0.1, 0.1, chalf) - 0.010220439987431) <= 1e-9);

  const KernelContext cfit = make_kernel_context({6.36, 1.97});
  CHECK(std::abs(kernel(0.25, 0.7, cfit) - 0.010840516430191) <= 1e-9);

  for (const KernelContext* ctx : {&c22, &chalf, &cfit}) {
    for (double s : {0.05, 0.3, 0.5, 0.8, 0.95}) {
      CAPTURE(ctx->params.alpha);
      CAPTURE(s);
      CHECK(std::abs(kernel_centring(s, *ctx)) <= 1e-9);
    }
  }
  // variance on the diagonal
  CHECK(kernel(0.5, 0.5, c22) > 0.0);
  CHECK_THROWS_AS(kernel(-0.1, 0.5, c22), std::domain_error);
}

TEST_CASE("eigenvalue discretization is stable and traces match") {
  const KernelContext ctx = make_kernel_context({2.0, 2.0});
  const EigenResult e24 = nystrom_eigenvalues(ctx, 24);
  const EigenResult e48 = nystrom_eigenvalues(ctx, 48);
  REQUIRE(e24.eigenvalues.size() == 24);
  REQUIRE(e48.eigenvalues.size() == 48);

  for (std::size_t i = 1; i < e48.eigenvalues.size(); ++i) {
    CHECK(e48.eigenvalues[i] <= e48.eigenvalues[i - 1]);
  }
  for (double v : e48.eigenvalues) CHECK(v >= 0.0);
  CHECK(e48.min_raw >= -1e-8);

  // matrix trace equals the weighted diagonal, up to clipped negatives
  double sum48 = 0.0;
  for (double v : e48.eigenvalues) sum48 += v;
  CHECK(std::abs(sum48 - e48.trace) <= 1e-7);

  // leading eigenvalue is already close at these small grid sizes; the tight
  // convergence bound is asserted on the finer production grids
  CHECK(std::abs(e24.eigenvalues[0] - e48.eigenvalues[0]) <=
        1.5e-2 * e48.eigenvalues[0]);

  // the discretized trace tracks the integral of the diagonal
  const double diag_integral = quad::unit_interval(
      [&](double t) { return kernel(t, t, ctx); }, {}, 32);
  CHECK(std::abs(e48.trace - diag_integral) <= 1e-4 * diag_integral);

  // thread count cannot move the result
  const EigenResult t2 = nystrom_eigenvalues(ctx, 24, 2);
  CHECK(t2.eigenvalues == e24.eigenvalues);
  CHECK(t2.trace == e24.trace);

  CHECK_THROWS_AS(nystrom_eigenvalues(ctx, 4), std::invalid_argument);
}

TEST_CASE("discrepancy vanishes on the null and is positive off it") {
  const auto own = parse_alternative("B(2.5,1.5)");
  CHECK(std::abs(delta_discrepancy(own, {2.5, 1.5})) <= 1e-10);
  const auto spiky = parse_alternative("B(0.5,3)");
  CHECK(std::abs(delta_discrepancy(spiky, {0.5, 3.0})) <= 1e-10);
  // off the family the discrepancy is strictly positive
  const auto lt = parse_alternative("LT(3,2)");
  const FitResult pt = pseudo_true_params(lt);
  CHECK(std::abs(pt.params.alpha - 6.903970177384) <= 1e-5);
  CHECK(std::abs(pt.params.beta - 0.728387405083) <= 1e-5);
  CHECK(pt.residual <= 1e-8);
  const double delta = delta_discrepancy(lt, pt.params);
  CHECK(std::abs(delta - 3.747149832357e-03) <= 1e-6);
}

TEST_CASE("pseudo-true parameters recover a beta law exactly") {
  const FitResult r = pseudo_true_params(parse_alternative("B(2.5,1.5)"));
  CHECK(std::abs(r.params.alpha - 2.5) <= 1e-7);
  CHECK(std::abs(r.params.beta - 1.5) <= 1e-7);
}

}  // TEST_SUITE
