#ifndef BETAGOF_SPECFUN_HPP
#define BETAGOF_SPECFUN_HPP

// Self-contained special functions. All functions are pure and throw
// std::domain_error on arguments outside their stated domain.

namespace betagof::specfun {

// log Gamma(x), x > 0. Lanczos approximation (g = 7, 9 terms).
double ln_gamma(double x);

// Psi(x) = d/dx log Gamma(x), x > 0.
double digamma(double x);

// Psi_1(x) = d^2/dx^2 log Gamma(x), x > 0.
double trigamma(double x);

// log B(a,b) = ln_gamma(a) + ln_gamma(b) - ln_gamma(a+b).
double ln_beta(double a, double b);

// Regularized incomplete beta I_t(a,b), t in [0,1], a,b > 0.
// Continued fraction (modified Lentz) with the symmetry switch at
// t > (a+1)/(a+b+2).
double reg_inc_beta(double t, double a, double b);

// Inverse of reg_inc_beta in t: bracketed Newton with bisection fallback.
double inv_reg_inc_beta(double p, double a, double b);

// Standard normal CDF and its inverse (Acklam's rational approximation
// polished with one Halley step). Used by the truncated-normal and
// composed alternatives.
double norm_cdf(double x);
double norm_quantile(double p);

}  // namespace betagof::specfun

#endif
