#pragma once

// Alternative laws on [0,1] for the power study and the discrepancy
// functional: truncated normal, beta/truncated-normal mixture, logit-normal,
// and the three composed families built by pushing one closed-form law
// through another's CDF.  Parsed from shell-safe spec strings like
// "BN(0.25,0.5,0.5,0.25,0.25)" or "C(1)oGO(2,1)".

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "beta_model.hpp"

namespace betagof {

// Second parameter of TN and LT is the VARIANCE, not the standard deviation:
// TN(0.25, 0.25) has sigma = 0.5.  The same convention applies to the normal
// outer law N(mu, var) of a composition.
struct TruncNormalParams {
  double mu;
  double var;
};

enum class OuterKind { Cauchy, Exponential, Normal };
enum class InnerKind { Gompertz, HalfNormal, Laplace };

struct AlternativeSpec {
  enum class Tag { Beta, TruncNormal, Mixture, LogitNormal, Compose };
  Tag tag = Tag::Beta;

  BetaParams beta_params{1.0, 1.0};  // Beta and the beta part of Mixture
  TruncNormalParams tn{0.5, 0.25};   // TruncNormal and the TN part of Mixture
  double mix_p = 0.5;                // Mixture weight on the beta component

  double lt_mu = 0.0;  // LogitNormal
  double lt_var = 1.0;

  OuterKind outer = OuterKind::Cauchy;  // Compose
  std::vector<double> outer_args;
  InnerKind inner = InnerKind::Gompertz;
  std::vector<double> inner_args;

  std::string text;  // canonical spec string
};

// Grammar: NAME '(' decimal {',' decimal} ')' [ 'o' NAME '(' ... ')' ].
// Names (case-insensitive): B, TN, BN, LT; composition pairs C(th)oGO(eta,nu),
// EXP(lambda)oHN(sigma), N(mu,var)oL(mu,theta).  Throws ParseError with the
// offending position.
AlternativeSpec parse_alternative(const std::string& text);

std::vector<double> sample_alternative(const AlternativeSpec& spec,
                                       std::size_t n, std::uint64_t seed);

double alternative_cdf(const AlternativeSpec& spec, double t);

// E[X 1{X >= t}].  Closed forms for Beta/TN/Mixture; CDF-based quadrature
// (partial mean = t(1-F(t)) + integral of 1-F over [t,1]) otherwise.
double alternative_partial_mean(const AlternativeSpec& spec, double t);

// (E[ln X], E[ln(1-X)]) under the alternative; digamma closed form for Beta,
// CDF-based quadrature otherwise.
struct LogMoments {
  double ln_x;
  double ln_1mx;
};
LogMoments population_log_moments(const AlternativeSpec& spec);

}  // namespace betagof
