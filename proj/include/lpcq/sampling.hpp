#pragma once

#include <cmath>
#include <vector>

#include "lpcq/random.hpp"
#include "lpcq/spaces.hpp"

namespace lpcq {

/// Space with between 1 and max_atoms atoms and masses drawn from [0.05, 2].
inline DiscreteSpace random_space(Rng& rng, std::size_t min_atoms, std::size_t max_atoms) {
  std::size_t n = min_atoms + uniform_index(rng, max_atoms - min_atoms + 1);
  std::vector<double> w(n);
  for (auto& x : w) x = uniform(rng, 0.05, 2.0);
  return DiscreteSpace(std::move(w));
}

inline DiscreteFunction random_complex_function(const DiscreteSpace& space, Rng& rng, double scale = 1.0) {
  std::vector<Complex> v(space.size());
  for (auto& z : v) z = Complex(scale * standard_normal(rng), scale * standard_normal(rng));
  return {space, std::move(v)};
}

inline DiscreteFunction random_real_function(const DiscreteSpace& space, Rng& rng, double scale = 1.0) {
  std::vector<Complex> v(space.size());
  for (auto& z : v) z = scale * standard_normal(rng);
  return {space, std::move(v)};
}

inline DiscreteFunction random_nonnegative_function(const DiscreteSpace& space, Rng& rng, double scale = 1.0) {
  std::vector<Complex> v(space.size());
  for (auto& z : v) z = scale * std::abs(standard_normal(rng));
  return {space, std::move(v)};
}

/// Random element of the sup-norm unit ball, with some atoms set to zero.
inline DiscreteFunction random_bounded_function(const DiscreteSpace& space, Rng& rng) {
  std::vector<Complex> v(space.size());
  for (auto& z : v) {
    double r = uniform01(rng) < 0.15 ? 0.0 : uniform01(rng);
    z = std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
  }
  return {space, std::move(v)};
}

}  // namespace lpcq
