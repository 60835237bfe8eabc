#pragma once

// Test statistics: the L2 statistic on the integrated indicator functional
// (closed form plus an independent quadrature evaluation), the
// Laplace-transform statistic RF_{n,a}, and the estimated-parameter EDF trio.

#include <string>
#include <vector>

#include "beta_model.hpp"

namespace betagof {

enum class StatKind { Tn, RF, KS, CM, AD };

struct Statistic {
  StatKind kind;
  double a = 0.0;  // RF tuning parameter; ignored otherwise

  std::string name() const;
};

// Parses "tn", "rf:2", "rf:0.25", "ks", "cm", "ad" (case-insensitive).
Statistic parse_statistic(const std::string& text);

// Closed form of n * integral_0^1 (n^-1 sum_j ((a+b)X_j - a) 1{X_j >= t}
// - g(t))^2 dt, evaluated in O(n log n) by sorting and suffix sums.
double t_statistic(const std::vector<double>& xs, BetaParams p);

// Same integral by quadrature between consecutive order statistics, with the
// end pieces integrated in log scale so fractional-power behavior of g at the
// endpoints does not cost accuracy.  Independent of the closed form.
double t_statistic_quadrature(const std::vector<double>& xs, BetaParams p);

// Double sum exactly as the Laplace-transform ODE construction displays it;
// xbar is alpha/(alpha+beta) of the fitted params, not the sample mean.
double rf_statistic(const std::vector<double>& xs, BetaParams p, double a);

struct EdfValues {
  double ks;
  double cm;
  double ad;
};

// Probability integral transform with the supplied params, then the standard
// KS/CM/AD forms.  Throws DegenerateTransform if AD meets a transformed value
// at exactly 0 or 1.
EdfValues edf_statistics(const std::vector<double>& xs, BetaParams p);

double evaluate_statistic(const Statistic& st, const std::vector<double>& xs,
                          BetaParams p);

// Evaluates several statistics on the same (sample, params), sharing the
// sorted probability integral transform across the EDF members.
std::vector<double> evaluate_battery(const std::vector<Statistic>& sts,
                                     const std::vector<double>& xs,
                                     BetaParams p);

}  // namespace betagof
