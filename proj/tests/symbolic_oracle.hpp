#pragma once

// Quadrature verdicts for symbolic functions, evaluated from the raw term list.

#include <functional>

#include "lpcq/spaces.hpp"
#include "oracles.hpp"

namespace oracle {

/// The expression of f on one side of 1.
inline std::function<double(double)> side(const lpcq::SymbolicFunction& f, lpcq::Support s) {
  std::vector<std::pair<double, double>> ts;
  for (const auto& t : f.terms())
    if (t.support == s) ts.emplace_back(boost::rational_cast<double>(t.coeff), boost::rational_cast<double>(t.exponent));
  return [ts](double x) {
    double v = 0.0;
    for (auto [c, a] : ts) v += c * std::pow(x, a);
    return v;
  };
}

inline std::function<double(double)> pointwise(const lpcq::SymbolicFunction& f) {
  auto n = side(f, lpcq::Support::NearZero), t = side(f, lpcq::Support::Tail);
  return [n, t](double x) { return x <= 1.0 ? n(x) : t(x); };
}

inline bool in_lq(const lpcq::SymbolicFunction& f, double q) {
  auto g = pointwise(f);
  auto F = [&](double x) { return std::pow(std::abs(g(x)), q); };
  bool ok = integral_converges(F, true);
  if (f.domain() == lpcq::Domain::HalfLine) ok = ok && integral_converges(F, false);
  return ok;
}

/// aq + 1 too close to zero for the chunk-ratio test to resolve.
inline bool borderline(const lpcq::SymbolicFunction& f, double q) {
  for (const auto& t : f.terms()) {
    double d = boost::rational_cast<double>(t.exponent) * q + 1.0;
    if (d != 0.0 && std::abs(d) < 0.01) return true;
  }
  return false;
}

}  // namespace oracle
