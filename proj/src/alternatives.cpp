#include "alternatives.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "errors.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "specfun.hpp"

namespace betagof {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double norm_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
}

// ---- truncated normal on [0,1], parameterized by (mu, variance) ----

struct TnWork {
  double mu, sigma, lo_z, hi_z, phi_lo, phi_hi, mass;
};

TnWork tn_work(TruncNormalParams p) {
  TnWork w;
  w.mu = p.mu;
  w.sigma = std::sqrt(p.var);
  w.lo_z = (0.0 - p.mu) / w.sigma;
  w.hi_z = (1.0 - p.mu) / w.sigma;
  w.phi_lo = specfun::norm_cdf(w.lo_z);
  w.phi_hi = specfun::norm_cdf(w.hi_z);
  w.mass = w.phi_hi - w.phi_lo;
  return w;
}

double tn_cdf(const TnWork& w, double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return (specfun::norm_cdf((t - w.mu) / w.sigma) - w.phi_lo) / w.mass;
}

// E[X 1{X >= t}] = (mu (Phi(b) - Phi(z_t)) + sigma (phi(z_t) - phi(b))) / mass
double tn_partial_mean(const TnWork& w, double t) {
  if (t >= 1.0) return 0.0;
  const double zt = t <= 0.0 ? w.lo_z : (t - w.mu) / w.sigma;
  return (w.mu * (w.phi_hi - specfun::norm_cdf(zt)) +
          w.sigma * (norm_pdf(zt) - norm_pdf(w.hi_z))) /
         w.mass;
}

double tn_quantile(const TnWork& w, double u) {
  return w.mu + w.sigma * specfun::norm_quantile(w.phi_lo + u * w.mass);
}

// ---- composition helpers: outer CDF F and quantile F^-1, inner CDF G and
// quantile G^-1, all in closed form ----

double outer_cdf(OuterKind k, const std::vector<double>& a, double x) {
  switch (k) {
    case OuterKind::Cauchy:
      return std::atan(x / a[0]) / kPi + 0.5;
    case OuterKind::Exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-a[0] * x);
    case OuterKind::Normal:
      return specfun::norm_cdf((x - a[0]) / std::sqrt(a[1]));
  }
  return 0.0;
}

double outer_quantile(OuterKind k, const std::vector<double>& a, double t) {
  switch (k) {
    case OuterKind::Cauchy:
      return a[0] * std::tan(kPi * (t - 0.5));
    case OuterKind::Exponential:
      return -std::log1p(-t) / a[0];
    case OuterKind::Normal:
      return a[0] + std::sqrt(a[1]) * specfun::norm_quantile(t);
  }
  return 0.0;
}

double inner_cdf(InnerKind k, const std::vector<double>& a, double x) {
  switch (k) {
    case InnerKind::Gompertz:
      if (x <= 0.0) return 0.0;
      return -std::expm1(-a[0] * std::expm1(a[1] * x));
    case InnerKind::HalfNormal:
      if (x <= 0.0) return 0.0;
      return std::erf(x / (a[0] * std::sqrt(2.0)));
    case InnerKind::Laplace: {
      const double mu = a[0], th = a[1];
      if (x <= mu) return 0.5 * std::exp((x - mu) / th);
      return 1.0 - 0.5 * std::exp(-(x - mu) / th);
    }
  }
  return 0.0;
}

double inner_quantile(InnerKind k, const std::vector<double>& a, double u) {
  switch (k) {
    case InnerKind::Gompertz:
      return std::log1p(-std::log1p(-u) / a[0]) / a[1];
    case InnerKind::HalfNormal:
      // erf(x / (sigma sqrt 2)) = u  <=>  x = sigma * Phi^-1((1+u)/2)
      return a[0] * specfun::norm_quantile(0.5 * (1.0 + u));
    case InnerKind::Laplace: {
      const double mu = a[0], th = a[1];
      if (u <= 0.5) return mu + th * std::log(2.0 * u);
      return mu - th * std::log(2.0 * (1.0 - u));
    }
  }
  return 0.0;
}

// ---- generic CDF-based integrals ----

// E[X 1{X >= t}] = t (1 - F(t)) + integral_t^1 (1 - F(x)) dx
template <class Cdf>
double partial_mean_from_cdf(Cdf&& F, double t) {
  if (t >= 1.0) return 0.0;
  if (t < 0.0) t = 0.0;
  const double tail = quad::split_panel([&](double x) { return 1.0 - F(x); },
                                        t, 1.0, 32);
  return t * (1.0 - F(t)) + tail;
}

void check_spec(const AlternativeSpec& s) {
  auto bad = [](const char* msg) { throw std::invalid_argument(msg); };
  switch (s.tag) {
    case AlternativeSpec::Tag::Beta:
      if (!(s.beta_params.alpha > 0.0 && s.beta_params.beta > 0.0)) {
        bad("beta alternative: shapes must be positive");
      }
      break;
    case AlternativeSpec::Tag::TruncNormal:
      if (!(s.tn.var > 0.0)) bad("TN: variance must be positive");
      break;
    case AlternativeSpec::Tag::Mixture:
      if (!(s.mix_p > 0.0 && s.mix_p < 1.0)) bad("BN: p must lie in (0,1)");
      if (!(s.beta_params.alpha > 0.0 && s.beta_params.beta > 0.0)) {
        bad("BN: beta shapes must be positive");
      }
      if (!(s.tn.var > 0.0)) bad("BN: variance must be positive");
      break;
    case AlternativeSpec::Tag::LogitNormal:
      if (!(s.lt_var > 0.0)) bad("LT: variance must be positive");
      break;
    case AlternativeSpec::Tag::Compose:
      break;  // validated at parse time
  }
}

}  // namespace

std::vector<double> sample_alternative(const AlternativeSpec& spec,
                                       std::size_t n, std::uint64_t seed) {
  check_spec(spec);
  rng::Engine eng(seed);
  std::vector<double> out(n);
  switch (spec.tag) {
    case AlternativeSpec::Tag::Beta:
      for (auto& v : out) v = eng.beta(spec.beta_params.alpha, spec.beta_params.beta);
      break;
    case AlternativeSpec::Tag::TruncNormal: {
      const TnWork w = tn_work(spec.tn);
      for (auto& v : out) v = tn_quantile(w, eng.uniform());
      break;
    }
    case AlternativeSpec::Tag::Mixture: {
      const TnWork w = tn_work(spec.tn);
      for (auto& v : out) {
        if (eng.uniform() <= spec.mix_p) {
          v = eng.beta(spec.beta_params.alpha, spec.beta_params.beta);
        } else {
          v = tn_quantile(w, eng.uniform());
        }
      }
      break;
    }
    case AlternativeSpec::Tag::LogitNormal: {
      const double sigma = std::sqrt(spec.lt_var);
      for (auto& v : out) {
        const double y = spec.lt_mu + sigma * eng.normal();
        v = 1.0 / (1.0 + std::exp(-y));
      }
      break;
    }
    case AlternativeSpec::Tag::Compose:
      for (auto& v : out) {
        const double x = inner_quantile(spec.inner, spec.inner_args, eng.uniform());
        v = outer_cdf(spec.outer, spec.outer_args, x);
      }
      break;
  }
  return out;
}

double alternative_cdf(const AlternativeSpec& spec, double t) {
  check_spec(spec);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("alternative_cdf: t outside [0,1]");
  }
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  switch (spec.tag) {
    case AlternativeSpec::Tag::Beta:
      return specfun::reg_inc_beta(t, spec.beta_params.alpha, spec.beta_params.beta);
    case AlternativeSpec::Tag::TruncNormal:
      return tn_cdf(tn_work(spec.tn), t);
    case AlternativeSpec::Tag::Mixture:
      return spec.mix_p * specfun::reg_inc_beta(t, spec.beta_params.alpha,
                                                spec.beta_params.beta) +
             (1.0 - spec.mix_p) * tn_cdf(tn_work(spec.tn), t);
    case AlternativeSpec::Tag::LogitNormal: {
      if (t <= 0.0) return 0.0;
      if (t >= 1.0) return 1.0;
      const double logit = std::log(t / (1.0 - t));
      return specfun::norm_cdf((logit - spec.lt_mu) / std::sqrt(spec.lt_var));
    }
    case AlternativeSpec::Tag::Compose: {
      // P(F(X) <= t) = G(F^-1(t))
      if (t <= 0.0) return 0.0;
      if (t >= 1.0) return 1.0;
      const double x = outer_quantile(spec.outer, spec.outer_args, t);
      const double v = inner_cdf(spec.inner, spec.inner_args, x);
      return std::min(1.0, std::max(0.0, v));
    }
  }
  throw std::logic_error("alternative_cdf: unhandled tag");
}

double alternative_partial_mean(const AlternativeSpec& spec, double t) {
  check_spec(spec);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("alternative_partial_mean: t outside [0,1]");
  }
  switch (spec.tag) {
    case AlternativeSpec::Tag::Beta: {
      const double a = spec.beta_params.alpha, b = spec.beta_params.beta;
      return a / (a + b) * (1.0 - specfun::reg_inc_beta(t, a + 1.0, b));
    }
    case AlternativeSpec::Tag::TruncNormal:
      return tn_partial_mean(tn_work(spec.tn), t);
    case AlternativeSpec::Tag::Mixture: {
      const double a = spec.beta_params.alpha, b = spec.beta_params.beta;
      const double pm_beta =
          a / (a + b) * (1.0 - specfun::reg_inc_beta(t, a + 1.0, b));
      return spec.mix_p * pm_beta +
             (1.0 - spec.mix_p) * tn_partial_mean(tn_work(spec.tn), t);
    }
    case AlternativeSpec::Tag::LogitNormal:
    case AlternativeSpec::Tag::Compose:
      return partial_mean_from_cdf(
          [&](double x) { return alternative_cdf(spec, x); }, t);
  }
  throw std::logic_error("alternative_partial_mean: unhandled tag");
}

LogMoments population_log_moments(const AlternativeSpec& spec) {
  check_spec(spec);
  if (spec.tag == AlternativeSpec::Tag::Beta) {
    const double a = spec.beta_params.alpha, b = spec.beta_params.beta;
    const double ds = specfun::digamma(a + b);
    return {specfun::digamma(a) - ds, specfun::digamma(b) - ds};
  }
  // E[ln X] = -integral_0^1 F(y)/y dy; E[ln(1-X)] = -integral (1-F(y))/(1-y),
  // both by parts from the CDF.  The right integrand divides by the quadrature
  // point's complement: at nodes within an ulp of 1 the numerator is exactly 0
  // and a recomputed 1 - y would be too.
  const double lx = -quad::unit_interval(
      [&](double y) { return alternative_cdf(spec, y) / y; }, {}, 32);
  const double l1mx = -quad::unit_interval(
      [&](quad::Point y) { return (1.0 - alternative_cdf(spec, y.t)) / y.omt; },
      {}, 32);
  return {lx, l1mx};
}

// ---- spec-string grammar ----

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c) {
      throw ParseError(std::string("expected '") + c + "'", pos);
    }
    ++pos;
  }
  std::string name() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw ParseError("expected a distribution name", pos);
    std::string out = s.substr(start, pos - start);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
  }
  double number() {
    skip_ws();
    const std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    bool digits = false;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      ++pos;
      digits = true;
    }
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        ++pos;
        digits = true;
      }
    }
    if (!digits) throw ParseError("expected a decimal number", start);
    return std::stod(s.substr(start, pos - start));
  }
  std::vector<double> args() {
    expect('(');
    std::vector<double> out;
    out.push_back(number());
    while (peek() == ',') {
      ++pos;
      out.push_back(number());
    }
    expect(')');
    return out;
  }
};

void need_arity(const std::string& name, const std::vector<double>& a,
                std::size_t k, std::size_t at) {
  if (a.size() != k) {
    throw ParseError(name + " expects " + std::to_string(k) + " parameter" +
                         (k == 1 ? "" : "s") + ", got " +
                         std::to_string(a.size()),
                     at);
  }
}

void need_positive(const std::string& name, double v, const char* what,
                   std::size_t at) {
  if (!(v > 0.0)) {
    throw ParseError(name + ": " + what + " must be positive", at);
  }
}

std::string format_args(const std::vector<double>& a) {
  std::string out = "(";
  char buf[40];
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%g", a[i]);
    if (i) out += ",";
    out += buf;
  }
  out += ")";
  return out;
}

}  // namespace

AlternativeSpec parse_alternative(const std::string& text) {
  Cursor c{text};
  const std::size_t name_at = c.pos;
  const std::string head = c.name();
  const std::size_t args_at = c.pos;
  const std::vector<double> a = c.args();

  AlternativeSpec spec;
  if (head == "B" || head == "BETA") {
    need_arity(head, a, 2, args_at);
    need_positive(head, a[0], "alpha", args_at);
    need_positive(head, a[1], "beta", args_at);
    spec.tag = AlternativeSpec::Tag::Beta;
    spec.beta_params = {a[0], a[1]};
    spec.text = "B" + format_args(a);
  } else if (head == "TN") {
    need_arity(head, a, 2, args_at);
    need_positive(head, a[1], "variance", args_at);
    spec.tag = AlternativeSpec::Tag::TruncNormal;
    spec.tn = {a[0], a[1]};
    spec.text = "TN" + format_args(a);
  } else if (head == "BN") {
    need_arity(head, a, 5, args_at);
    if (!(a[0] > 0.0 && a[0] < 1.0)) {
      throw ParseError("BN: mixing weight must lie in (0,1)", args_at);
    }
    need_positive(head, a[1], "alpha", args_at);
    need_positive(head, a[2], "beta", args_at);
    need_positive(head, a[4], "variance", args_at);
    spec.tag = AlternativeSpec::Tag::Mixture;
    spec.mix_p = a[0];
    spec.beta_params = {a[1], a[2]};
    spec.tn = {a[3], a[4]};
    spec.text = "BN" + format_args(a);
  } else if (head == "LT") {
    need_arity(head, a, 2, args_at);
    need_positive(head, a[1], "variance", args_at);
    spec.tag = AlternativeSpec::Tag::LogitNormal;
    spec.lt_mu = a[0];
    spec.lt_var = a[1];
    spec.text = "LT" + format_args(a);
  } else if (head == "C" || head == "EXP" || head == "N" || head == "PHI") {
    spec.tag = AlternativeSpec::Tag::Compose;
    std::string outer_name;
    if (head == "C") {
      need_arity(head, a, 1, args_at);
      need_positive(head, a[0], "scale", args_at);
      spec.outer = OuterKind::Cauchy;
      outer_name = "C";
    } else if (head == "EXP") {
      need_arity(head, a, 1, args_at);
      need_positive(head, a[0], "rate", args_at);
      spec.outer = OuterKind::Exponential;
      outer_name = "EXP";
    } else {
      need_arity(head, a, 2, args_at);
      need_positive(head, a[1], "variance", args_at);
      spec.outer = OuterKind::Normal;
      outer_name = "N";
    }
    spec.outer_args = a;
    c.skip_ws();
    if (c.pos >= text.size() ||
        (text[c.pos] != 'o' && text[c.pos] != 'O')) {
      throw ParseError(outer_name + " is an outer law and needs a composition "
                       "like " + outer_name + "(...)oGO(...)",
                       c.pos);
    }
    ++c.pos;
    const std::size_t inner_at = c.pos;
    const std::string inner = c.name();
    const std::size_t inner_args_at = c.pos;
    const std::vector<double> ia = c.args();
    std::string inner_name;
    if (inner == "GO") {
      need_arity(inner, ia, 2, inner_args_at);
      need_positive(inner, ia[0], "eta", inner_args_at);
      need_positive(inner, ia[1], "nu", inner_args_at);
      spec.inner = InnerKind::Gompertz;
      inner_name = "GO";
    } else if (inner == "HN") {
      need_arity(inner, ia, 1, inner_args_at);
      need_positive(inner, ia[0], "sigma", inner_args_at);
      spec.inner = InnerKind::HalfNormal;
      inner_name = "HN";
    } else if (inner == "L") {
      need_arity(inner, ia, 2, inner_args_at);
      need_positive(inner, ia[1], "scale", inner_args_at);
      spec.inner = InnerKind::Laplace;
      inner_name = "L";
    } else {
      throw ParseError("unknown inner law '" + inner +
                           "' (expected GO, HN, or L)",
                       inner_at);
    }
    const bool ok = (spec.outer == OuterKind::Cauchy &&
                     spec.inner == InnerKind::Gompertz) ||
                    (spec.outer == OuterKind::Exponential &&
                     spec.inner == InnerKind::HalfNormal) ||
                    (spec.outer == OuterKind::Normal &&
                     spec.inner == InnerKind::Laplace);
    if (!ok) {
      throw ParseError(
          "unsupported composition (supported: CoGO, EXPoHN, NoL)", inner_at);
    }
    spec.inner_args = ia;
    spec.text = outer_name + format_args(a) + "o" + inner_name + format_args(ia);
  } else {
    throw ParseError("unknown distribution '" + head +
                         "' (expected B, TN, BN, LT, C, EXP, or N)",
                     name_at);
  }
  if (!c.done()) {
    throw ParseError("unexpected trailing characters", c.pos);
  }
  return spec;
}

}  // namespace betagof
