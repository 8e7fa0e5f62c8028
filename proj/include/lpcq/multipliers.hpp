#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpcq/exponents.hpp"
#include "lpcq/random.hpp"
#include "lpcq/report.hpp"
#include "lpcq/sampling.hpp"
#include "lpcq/spaces.hpp"

// Multiplication operators T_w : f -> fw between L^p spaces, the factorization
// of L^m functions into L^p * L^r' products, and the CQ*-norm conditions of
// L^p over bounded functions.

namespace lpcq {

/// ||fw||_r / ||f||_p, or 0 for f = 0.
inline double multiplication_ratio(const DiscreteFunction& f, const DiscreteFunction& w, const Exponent& p,
                                   const Exponent& r) {
  double den = norm(f, p);
  if (den == 0.0) return 0.0;
  return norm(multiply(f, w), r) / den;
}

struct OperatorNormResult {
  double value = 0.0;           // max ratio over the candidate set
  double multiplier_norm = 0.0; // ||w||_q
  Exponent q;
  DiscreteFunction maximizer;
  std::string attained_by;
};

/// Norm of T_w : L^p -> L^r with 1/p + 1/q = 1/r, by maximizing the ratio over
/// the closed-form maximizer |w|^{q/p} (or atom indicators when q = inf), the
/// unit, and `random_samples` seeded random functions.
inline OperatorNormResult operator_norm(const DiscreteFunction& w, const Exponent& p, const Exponent& r,
                                        std::uint64_t seed = 0, int random_samples = 32) {
  OperatorNormResult out;
  out.q = multiplier_exponent(p, r);
  out.multiplier_norm = norm(w, out.q);
  const auto& space = w.space();

  auto consider = [&](const DiscreteFunction& f, std::string label) {
    double v = multiplication_ratio(f, w, p, r);
    if (v > out.value || out.attained_by.empty()) {
      out.value = v;
      out.maximizer = f;
      out.attained_by = std::move(label);
    }
  };

  if (!out.q.is_infinite() && !p.is_infinite())
    consider(abs_power(w, to_double(p.reciprocal() / out.q.reciprocal())), "|w|^(q/p)");
  consider(DiscreteFunction::unit(space), "unit");
  for (std::size_t i = 0; i < space.size(); ++i) consider(DiscreteFunction::indicator(space, i), "indicator:" + std::to_string(i));
  Rng rng = make_rng(seed, 0x0b);
  for (int s = 0; s < random_samples; ++s) consider(random_complex_function(space, rng), "random");
  return out;
}

/// Lower bound on ||T_w||_{p,r} by stochastic hill climbing from a random
/// start, with no knowledge of the maximizer.
inline double random_search_lower_bound(const DiscreteFunction& w, const Exponent& p, const Exponent& r,
                                        std::uint64_t seed, int iterations = 20000) {
  Rng rng = make_rng(seed, 0x5e);
  const auto& space = w.space();
  std::vector<double> x(space.size());
  for (auto& v : x) v = 0.5 + uniform01(rng);
  auto eval = [&](const std::vector<double>& a) {
    return multiplication_ratio(DiscreteFunction(space, a), w, p, r);
  };
  double best = eval(x);
  // joint moves in log coordinates, alternating with single-coordinate moves
  // (which can drive one atom toward zero when the sup sits on a face)
  double step = 0.5;
  for (int it = 0; it < iterations; ++it) {
    const int kind = it % 2;
    auto y = x;
    if (kind == 0) {
      for (auto& v : y) v *= std::exp(step * standard_normal(rng));
    } else {
      auto i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(y.size())) % y.size();
      // step scale drawn log-uniformly on [1e-4, 20], no adaptation
      y[i] *= std::exp(std::exp(uniform(rng, std::log(1e-4), std::log(20.0))) * standard_normal(rng));
    }
    double val = eval(y);
    if (val > best) {
      best = val;
      x = std::move(y);
      const double top = *std::max_element(x.begin(), x.end());  // the ratio is scale-free
      for (auto& v : x) v = std::max(v / top, 1e-9);  // keep every atom reachable in log coordinates
      if (kind == 0) step = std::min(step * 1.2, 4.0);
    } else if (kind == 0) {
      step = std::max(step * 0.97, 1e-5);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Factorization psi = psi^{m/p} * psi^{m/r'}

inline void require_factor_exponents(const Exponent& m, const Exponent& p, const Exponent& r_dual) {
  if (m.reciprocal() != p.reciprocal() + r_dual.reciprocal())
    throw std::invalid_argument("factorization needs 1/m = 1/p + 1/r'; got m = " + m.to_string() + ", p = " +
                                p.to_string() + ", r' = " + r_dual.to_string());
}

inline std::pair<DiscreteFunction, DiscreteFunction> factorize(const DiscreteFunction& psi, const Exponent& m,
                                                               const Exponent& p, const Exponent& r_dual) {
  require_factor_exponents(m, p, r_dual);
  for (auto z : psi.values())
    if (z.imag() != 0.0 || z.real() < 0.0) throw std::invalid_argument("factorization needs a nonnegative function");
  if (m.is_infinite()) return {psi, DiscreteFunction::unit(psi.space())};
  auto e1 = to_double(p.reciprocal() / m.reciprocal());
  auto e2 = to_double(r_dual.reciprocal() / m.reciprocal());
  return {abs_power(psi, e1), abs_power(psi, e2)};
}

namespace detail {

inline std::optional<std::int64_t> exact_root(std::int64_t v, std::int64_t k) {
  if (v < 0) return std::nullopt;
  auto r = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(v), 1.0 / static_cast<double>(k))));
  for (std::int64_t c = std::max<std::int64_t>(0, r - 1); c <= r + 1; ++c) {
    std::int64_t acc = 1;
    for (std::int64_t i = 0; i < k; ++i) acc *= c;
    if (acc == v) return c;
  }
  return std::nullopt;
}

/// c^e for rational e when the result is rational.
inline std::optional<Rational> exact_power(const Rational& c, const Rational& e) {
  if (e == Rational(0)) return Rational(1);
  auto n = exact_root(c.numerator(), e.denominator());
  auto d = exact_root(c.denominator(), e.denominator());
  if (!n || !d) return std::nullopt;
  Rational base(*n, *d);
  std::int64_t k = e.numerator();
  Rational out(1);
  for (std::int64_t i = 0; i < std::abs(k); ++i) out *= base;
  return k < 0 ? 1 / out : out;
}

}  // namespace detail

/// Symbolic factorization. Each support may carry at most one term (pointwise
/// powers of a sum are not power sums). Exponents split exactly; a coefficient
/// whose rational root is not rational stays in the first factor.
inline std::pair<SymbolicFunction, SymbolicFunction> factorize(const SymbolicFunction& psi, const Exponent& m,
                                                               const Exponent& p, const Exponent& r_dual) {
  require_factor_exponents(m, p, r_dual);
  if (psi.has_support(Support::NearZero) && restrict_to(psi, Support::NearZero).terms().size() > 1)
    throw std::invalid_argument("symbolic factorization needs at most one term per support");
  if (psi.has_support(Support::Tail) && restrict_to(psi, Support::Tail).terms().size() > 1)
    throw std::invalid_argument("symbolic factorization needs at most one term per support");
  if (m.is_infinite()) return {psi, SymbolicFunction::unit(psi.domain())};
  const Rational e1 = p.reciprocal() / m.reciprocal();
  const Rational e2 = r_dual.reciprocal() / m.reciprocal();
  std::vector<PowerTerm> first, second;
  for (const auto& t : psi.terms()) {
    auto c1 = detail::exact_power(t.coeff, e1);
    auto c2 = detail::exact_power(t.coeff, e2);
    if (c1 && c2) {
      first.push_back({*c1, t.exponent * e1, t.support});
      second.push_back({*c2, t.exponent * e2, t.support});
    } else {
      first.push_back({t.coeff, t.exponent * e1, t.support});
      second.push_back({1, t.exponent * e2, t.support});
    }
  }
  return {SymbolicFunction(psi.domain(), std::move(first)), SymbolicFunction(psi.domain(), std::move(second))};
}

// ---------------------------------------------------------------------------
// Multiplier theorem: (fg in L^r for all f in L^p) <=> g in L^q

/// A test function x^b |log x|^{-c} near the singular end of one support.
struct CriticalTestFunction {
  Support support = Support::NearZero;
  Rational power{0};
  Rational log_power{0};
};

struct MultiplierTheoremReport {
  Exponent p, r, q;
  bool maps_into_lr = false;  // (A)
  bool in_lq = false;         // (B)
  std::optional<CriticalTestFunction> counterexample;  // an f in L^p with fg outside L^r when (A) fails
  bool consistent() const { return maps_into_lr == in_lq; }
};

/// Decides (A) from the test class f = x^b |log x|^{-c} of L^p functions
/// concentrated at 0 or at infinity. A term c x^a of g with k = a + 1/q is
/// harmless iff k > 0 near zero (k < 0 on the tail), or k = 0 and r = p;
/// at k = 0 with r < p the log-corrected function with 1/p < c <= 1/r in L^p
/// breaks L^r. (B) is read off the exponent set of g.
inline MultiplierTheoremReport multiplier_theorem_check(const SymbolicFunction& g, const Exponent& p,
                                                        const Exponent& r) {
  if (r > p) throw std::domain_error("multiplier theorem needs r <= p");
  MultiplierTheoremReport rep;
  rep.p = p;
  rep.r = r;
  rep.q = multiplier_exponent(p, r);
  const Rational inv_q = rep.q.reciprocal();
  const bool equal_exponents = p == r;
  rep.maps_into_lr = true;
  for (const auto& t : g.terms()) {
    const Rational k = t.exponent + inv_q;
    const bool near = t.support == Support::NearZero;
    bool ok = near ? k > 0 : k < 0;
    if (k == Rational(0)) ok = equal_exponents;
    if (ok) continue;
    rep.maps_into_lr = false;
    if (!rep.counterexample) {
      CriticalTestFunction f{t.support};
      if (k == Rational(0)) {
        f.power = -p.reciprocal();
        f.log_power = (p.reciprocal() + r.reciprocal()) / 2;
      } else {
        // move off the critical power by |k|/2 toward integrability in L^p
        Rational shift = (k < 0 ? -k : k) / 2;
        f.power = near ? -p.reciprocal() + shift : -p.reciprocal() - shift;
      }
      rep.counterexample = f;
    }
  }
  rep.in_lq = in_lp(g, rep.q);
  return rep;
}

// ---------------------------------------------------------------------------
// CQ*-algebra norm conditions for (L^p, bounded functions)

struct MultiplierSup {
  double value = 0.0;
  std::string attained_by;
};

/// sup over the unit p-ball of ||f phi||_p, over normalized atom indicators
/// and `random_samples` random directions.
inline MultiplierSup multiplier_sup(const DiscreteFunction& phi, const Exponent& p, std::uint64_t seed,
                                    int random_samples = 32) {
  MultiplierSup out;
  const auto& space = phi.space();
  for (std::size_t i = 0; i < space.size(); ++i) {
    double v = multiplication_ratio(DiscreteFunction::indicator(space, i), phi, p, p);
    if (v > out.value || out.attained_by.empty()) out = {v, "indicator:" + std::to_string(i)};
  }
  Rng rng = make_rng(seed, 0xc1);
  for (int s = 0; s < random_samples; ++s) {
    double v = multiplication_ratio(random_complex_function(space, rng), phi, p, p);
    if (v > out.value) out = {v, "random"};
  }
  return out;
}

inline Report cq_axioms_check(const DiscreteSpace& space, const Exponent& p, std::uint64_t seed, int samples = 32,
                              double tol = 1e-9) {
  Report rep{"cq_axioms"};
  auto& isometry = rep.add("involution_isometry", 0.0);
  auto& module_bound = rep.add("module_bound", tol);
  auto& mult_norm = rep.add("multiplier_norm_recovers_sup_norm", 1e-6);
  auto& assoc = rep.add("associativity", tol);
  Rng rng = make_rng(seed, 0xa1);
  for (int s = 0; s < samples; ++s) {
    auto f = random_complex_function(space, rng);
    auto phi = random_bounded_function(space, rng);
    auto chi = random_bounded_function(space, rng);
    nlohmann::json at{{"sample", s}};
    isometry.identity(norm(involution(f), p), norm(f, p), at);
    double fp = norm(f, p);
    module_bound.inequality(norm(multiply(f, phi), p) / std::max(1.0, fp), fp * norm(phi, Exponent::infinity()) / std::max(1.0, fp), at);
    auto sup = multiplier_sup(phi, p, seed + static_cast<std::uint64_t>(s), 8);
    mult_norm.relative_identity(sup.value, norm(phi, Exponent::infinity()), at);
    auto lhs = multiply(f, multiply(phi, chi));
    auto rhs = multiply(multiply(f, phi), chi);
    double dev = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) dev = std::max(dev, std::abs(lhs[i] - rhs[i]) / std::max(1.0, std::abs(lhs[i])));
    assoc.identity(dev, 0.0, at);
  }
  return rep;
}

}  // namespace lpcq
