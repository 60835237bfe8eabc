#pragma once

// Beta family: density, CDF, quantile, sampling, and the two parameter
// estimators (maximum likelihood on the digamma score system, and the
// moment map).  All estimation errors are typed; see errors.hpp.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace betagof {

struct BetaParams {
  double alpha;
  double beta;
};

enum class EstimationMethod { MaximumLikelihood, Moments };

struct FitResult {
  BetaParams params;
  int iterations;
  double residual;  // sup-norm of the score system at the returned params
};

double beta_pdf(double x, BetaParams p);
double beta_cdf(double t, BetaParams p);
double beta_quantile(double q, BetaParams p);

// n i.i.d. draws; ratio-of-gammas construction.
std::vector<double> sample_beta(std::size_t n, BetaParams p, std::uint64_t seed);
// Inverse-CDF path, kept as an independent cross-check of the sampler.
std::vector<double> sample_beta_invcdf(std::size_t n, BetaParams p,
                                       std::uint64_t seed);

// Throws NonInteriorData unless every value lies strictly in (0,1).
void require_interior(const std::vector<double>& xs);

// alpha = m(m(1-m)/v - 1), beta = (1-m)(m(1-m)/v - 1) with the 1/n variance;
// throws DegenerateSample when v is 0 or >= m(1-m).
BetaParams moment_fit(const std::vector<double>& xs);

// Solves digamma(a) - digamma(a+b) = L1, digamma(b) - digamma(a+b) = L2 by
// damped Newton from `init`; throws NoConvergence if the residual cannot be
// brought under `tol` within 200 iterations.
FitResult fit_from_log_moments(double L1, double L2, BetaParams init,
                               double tol);

// MLE via fit_from_log_moments on the sample log-moments, initialized from
// moment_fit; residual tolerance 1e-10.
FitResult mle_fit(const std::vector<double>& xs);

BetaParams fit(const std::vector<double>& xs, EstimationMethod method);

// Inverse Fisher information for one observation, row-major 2x2.
std::array<double, 4> fisher_inverse(BetaParams p);

}  // namespace betagof
