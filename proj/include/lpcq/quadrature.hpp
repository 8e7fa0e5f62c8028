#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lpcq::quadrature {

/// One term c * t^b of a positive power sum.
struct Term {
  double coeff;
  double exponent;
};

inline constexpr double kRelTol = 1e-10;
inline constexpr unsigned kMaxDepth = 18;

template <class F>
double adaptive(F&& f, double a, double b) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, kMaxDepth, kRelTol, &err);
}

/// (sum_i c_i * t^(b_i - b_min))^p evaluated without forming the large
/// leading power.
inline double reduced_power(std::span<const Term> terms, double b_min, double t_log, double p) {
  double s = 0.0;
  for (const auto& term : terms) s += term.coeff * std::exp((term.exponent - b_min) * t_log);
  return std::pow(s, p);
}

/// Sum of the coefficients sharing the smallest exponent.
inline double terms_leading_coeff(std::span<const Term> terms, double b_min) {
  double c = 0.0;
  for (const auto& t : terms)
    if (t.exponent == b_min) c += t.coeff;
  return c;
}

/// Integral over (0,1] of (sum_i c_i t^{b_i})^p * t^shift, for a positive
/// power sum whose leading singular power p*b_min + shift exceeds -1.
///
/// The substitution t = s^k with k = 1/(beta + 1) turns the leading power
/// into a constant, so the integrand is bounded at s = 0 and the remaining
/// terms are handled by adaptive Gauss-Kronrod subdivision.
inline double unit_interval_power(std::span<const Term> terms, double p, double shift = 0.0) {
  if (terms.empty()) return 0.0;
  double b_min = std::numeric_limits<double>::infinity();
  for (const auto& t : terms) b_min = std::min(b_min, t.exponent);
  const double beta = p * b_min + shift;
  if (!(beta > -1.0)) return std::numeric_limits<double>::infinity();
  const double k = beta < 0.0 ? 1.0 / (beta + 1.0) : 1.0;
  const double leftover = k * (beta + 1.0) - 1.0;  // 0 when the substitution is active
  auto integrand = [&](double s) {
    if (s <= 0.0) return leftover == 0.0 ? k * std::pow(terms_leading_coeff(terms, b_min), p) : 0.0;
    double log_t = k * std::log(s);
    return k * reduced_power(terms, b_min, log_t, p) * std::exp(leftover * std::log(s));
  };
  return adaptive(integrand, 0.0, 1.0);
}

/// Integral over [1, inf) of (sum_i c_i x^{a_i})^p, mapped onto (0,1] by x = 1/t.
inline double half_line_tail_power(std::span<const Term> terms, double p) {
  std::vector<Term> flipped;
  flipped.reserve(terms.size());
  for (const auto& t : terms) flipped.push_back({t.coeff, -t.exponent});
  return unit_interval_power(flipped, p, -2.0);
}

/// Integral over [lo, hi] (0 < lo < hi < inf) of (sum_i c_i x^{a_i})^p.
inline double bounded_power(std::span<const Term> terms, double p, double lo, double hi) {
  if (terms.empty() || !(hi > lo)) return 0.0;
  auto integrand = [&](double u) {
    double x = std::exp(u);
    double s = 0.0;
    for (const auto& t : terms) s += t.coeff * std::pow(x, t.exponent);
    return std::pow(s, p) * x;
  };
  return adaptive(integrand, std::log(lo), std::log(hi));
}

/// Natural log of the integral of (sum_i c_i x^{a_i})^p over the dyadic shell
/// [2^-(k+1), 2^-k] (toward_zero) or [2^k, 2^(k+1)] (toward infinity).
/// The dominant power is factored out analytically so k may be in the hundreds.
inline double log_dyadic_shell(std::span<const Term> terms, double p, int k, bool toward_zero) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double ln2 = std::numbers::ln2;
  double lead = toward_zero ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) lead = toward_zero ? std::min(lead, t.exponent) : std::max(lead, t.exponent);
  // x = 2^{-k} t on [1/2, 1] or x = 2^{k} t on [1, 2].
  const double sign = toward_zero ? -1.0 : 1.0;
  auto integrand = [&](double t) {
    double s = 0.0;
    for (const auto& term : terms)
      s += term.coeff * std::exp(sign * k * ln2 * (term.exponent - lead)) * std::pow(t, term.exponent);
    return std::pow(s, p);
  };
  double inner = toward_zero ? adaptive(integrand, 0.5, 1.0) : adaptive(integrand, 1.0, 2.0);
  return sign * k * ln2 * (1.0 + p * lead) + std::log(inner);
}

}  // namespace lpcq::quadrature
