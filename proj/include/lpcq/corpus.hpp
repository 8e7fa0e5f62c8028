#pragma once

#include <vector>

#include "lpcq/spaces.hpp"

namespace lpcq {

/// Thirty positive power sums on the given domain: single powers across the
/// integrability thresholds, multi-term sums, and (on the half line) functions
/// with both a singular part and a tail.
inline std::vector<SymbolicFunction> symbolic_corpus(Domain d) {
  using R = Rational;
  auto near = [](R a, R c = R(1)) { return PowerTerm{c, a, Support::NearZero}; };
  auto tail = [](R a, R c = R(1)) { return PowerTerm{c, a, Support::Tail}; };
  std::vector<std::vector<PowerTerm>> shapes;
  if (d == Domain::UnitInterval) {
    shapes = {
        {near(R(0))},
        {near(R(-1, 8))},
        {near(R(-1, 5))},
        {near(R(-1, 4))},
        {near(R(-1, 3))},
        {near(R(-3, 8))},
        {near(R(-1, 2))},
        {near(R(-2, 3))},
        {near(R(-3, 4))},
        {near(R(-1))},
        {near(R(1, 4))},
        {near(R(1, 2))},
        {near(R(1))},
        {near(R(2), R(3))},
        {near(R(-1, 3), R(2))},
        {near(R(0)), near(R(-1, 4))},
        {near(R(0)), near(R(-1, 2))},
        {near(R(1)), near(R(-1, 8))},
        {near(R(-1, 8)), near(R(-1, 3))},
        {near(R(-1, 5)), near(R(-2, 5))},
        {near(R(1, 2)), near(R(2))},
        {near(R(0), R(5, 2)), near(R(1, 3))},
        {near(R(-1, 6))},
        {near(R(-1, 10))},
        {near(R(-3, 5))},
        {near(R(-5, 12))},
        {near(R(-1, 4)), near(R(-1, 6)), near(R(0))},
        {near(R(-1, 3), R(1, 2)), near(R(1, 3))},
        {near(R(3, 2)), near(R(0), R(1, 4))},
        {near(R(-7, 8))},
    };
  } else {
    shapes = {
        {near(R(0)), tail(R(-1))},
        {near(R(0)), tail(R(-2))},
        {near(R(-1, 8)), tail(R(-1))},
        {near(R(-1, 4)), tail(R(-1))},
        {near(R(-1, 3)), tail(R(-2))},
        {near(R(-1, 2)), tail(R(-1))},
        {near(R(-1, 3)), tail(R(-1, 3))},
        {near(R(-1, 8)), tail(R(-1, 8))},
        {near(R(-1, 4)), tail(R(-3, 4))},
        {near(R(-1, 5)), tail(R(-3, 5))},
        {near(R(0)), tail(R(0))},
        {near(R(1)), tail(R(-1, 2))},
        {near(R(1, 2)), tail(R(-3, 2))},
        {near(R(-2, 3)), tail(R(-2))},
        {near(R(-1, 6)), tail(R(-5, 6))},
        {near(R(0))},
        {near(R(-1, 3))},
        {near(R(-1, 2))},
        {tail(R(-1))},
        {tail(R(-1, 3))},
        {tail(R(-1, 2))},
        {tail(R(-2))},
        {near(R(0)), near(R(-1, 4)), tail(R(-1)), tail(R(-1, 2))},
        {near(R(-1, 8)), near(R(-1, 3)), tail(R(-3, 2))},
        {near(R(1, 4)), tail(R(-1, 4))},
        {near(R(-1, 4), R(3)), tail(R(-1), R(1, 2))},
        {near(R(-3, 8)), tail(R(-5, 8))},
        {near(R(-1, 10)), tail(R(-9, 10))},
        {near(R(-3, 4)), tail(R(-3))},
        {near(R(0), R(2)), tail(R(-1, 5))},
    };
  }
  std::vector<SymbolicFunction> out;
  out.reserve(shapes.size());
  for (auto& terms : shapes) out.emplace_back(d, std::move(terms));
  return out;
}

}  // namespace lpcq
