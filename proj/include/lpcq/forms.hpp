#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpcq/exponents.hpp"
#include "lpcq/random.hpp"
#include "lpcq/report.hpp"
#include "lpcq/sampling.hpp"
#include "lpcq/spaces.hpp"

namespace lpcq {

/// A positive invariant form on L^p, represented by its weight:
/// Omega(f, g) = integral of f * conj(g) * psi.
///
/// `make` enforces membership of psi in the ball of nonnegative functions with
/// ||psi||_{p/(p-2)} <= 1. `candidate` only enforces psi >= 0; it exists so the
/// axiom checker can be pointed at weights outside the ball and so that the
/// p < 2 regime can be probed.
class FormWeight {
 public:
  static constexpr double kBallTolerance = 1e-12;

  static FormWeight make(Function psi, Exponent p) {
    if (p.reciprocal() > Rational(1, 2))
      throw std::domain_error("forms on L^p are weights only for p >= 2; got p = " + p.to_string());
    FormWeight w = candidate(std::move(psi), p);
    if (!w.in_ball())
      throw std::domain_error("weight outside the ball: ||psi||_" + gamma_exponent(p).to_string() + " = " +
                              std::to_string(w.ball_norm()));
    return w;
  }

  static FormWeight candidate(Function psi, Exponent p) {
    std::visit(
        [](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, DiscreteFunction>) {
            if (!f.is_nonnegative()) throw std::domain_error("form weight must be real and nonnegative");
          }
          // symbolic functions are positive by construction
        },
        psi);
    FormWeight w;
    w.psi_ = std::move(psi);
    w.p_ = p;
    return w;
  }

  const Function& psi() const { return psi_; }
  const Exponent& p() const { return p_; }
  bool is_discrete() const { return std::holds_alternative<DiscreteFunction>(psi_); }
  const DiscreteFunction& discrete() const { return std::get<DiscreteFunction>(psi_); }
  const SymbolicFunction& symbolic() const { return std::get<SymbolicFunction>(psi_); }

  /// ||psi||_{p/(p-2)}; NaN when p < 2.
  double ball_norm() const {
    if (p_.reciprocal() > Rational(1, 2)) return std::nan("");
    return norm(psi_, gamma_exponent(p_));
  }
  bool in_ball(double tol = kBallTolerance) const {
    double n = ball_norm();
    return !std::isnan(n) && n <= 1.0 + tol;
  }

 private:
  FormWeight() = default;
  Function psi_;
  Exponent p_;
};

/// Omega(f, g); `divergent` marks an integral that is not finite.
struct FormValue {
  Complex value{0.0};
  bool divergent = false;
};

inline FormValue evaluate(const FormWeight& w, const DiscreteFunction& f, const DiscreteFunction& g) {
  const auto& psi = w.discrete();
  require_same_space(f, g);
  require_same_space(f, psi);
  Complex s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]) * psi[i].real() * f.space().weight(i);
  return {s, false};
}

inline FormValue evaluate(const FormWeight& w, const SymbolicFunction& f, const SymbolicFunction& g) {
  auto integrand = multiply(multiply(f, g), w.symbolic());
  double v = integral(integrand);
  if (std::isinf(v)) return {Complex(kInf, 0.0), true};
  return {v, false};
}

inline FormValue evaluate(const FormWeight& w, const Function& f, const Function& g) {
  return std::visit(
      [&](const auto& a, const auto& b) -> FormValue {
        using A = std::decay_t<decltype(a)>;
        using B = std::decay_t<decltype(b)>;
        if constexpr (!std::is_same_v<A, B>) {
          throw std::invalid_argument("cannot evaluate a form on mixed backends");
        } else {
          if (!std::holds_alternative<A>(w.psi())) throw std::invalid_argument("form weight and arguments use different backends");
          return evaluate(w, a, b);
        }
      },
      f, g);
}

// ---------------------------------------------------------------------------
// Axioms

/// The pair on which |Omega(f,f)| / ||f||_p^2 is largest for a weight form:
/// f = psi^{1/(p-2)} for p > 2, the indicator of a heaviest atom at p = 2.
inline DiscreteFunction holder_extremal_argument(const FormWeight& w) {
  const auto& psi = w.discrete();
  if (w.p() == Exponent(2)) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < psi.size(); ++i)
      if (psi[i].real() > psi[best].real()) best = i;
    return DiscreteFunction::indicator(psi.space(), best);
  }
  if (w.p().is_infinite()) return DiscreteFunction::unit(psi.space());
  double e = to_double(1 / (w.p().value() - 2));
  auto f = abs_power(psi, e);
  double n = norm(f, w.p());
  return n > 0.0 ? scale(f, 1.0 / n) : DiscreteFunction::unit(psi.space());
}

/// Positivity, module invariance, boundedness by ||.||_p, and conjugation
/// symmetry on seeded samples (discrete backend).
inline Report check_form_axioms(const FormWeight& w, std::uint64_t seed, int samples = 64) {
  const auto& space = w.discrete().space();
  const auto& p = w.p();
  Report rep{"form_axioms"};
  auto& positivity = rep.add("positivity", 0.0);
  auto& invariance = rep.add("module_invariance", 1e-12);
  auto& bounded = rep.add("bounded_by_p_norm", 1e-12);
  auto& symmetry = rep.add("conjugation_symmetry", 1e-12);
  Rng rng = make_rng(seed, 0xf0);

  auto bound_slack = [&](const DiscreteFunction& f, const DiscreteFunction& g, const nlohmann::json& at) {
    double nf = norm(f, p), ng = norm(g, p);
    if (nf == 0.0 || ng == 0.0) return;
    bounded.inequality(std::abs(evaluate(w, f, g).value) / (nf * ng), 1.0, at);
  };

  for (int s = 0; s < samples; ++s) {
    auto f = random_complex_function(space, rng);
    auto g = random_complex_function(space, rng);
    auto phi = random_bounded_function(space, rng);
    nlohmann::json at{{"sample", s}};
    auto ff = evaluate(w, f, f).value;
    positivity.inequality(-ff.real(), 0.0, at);
    positivity.identity(ff.imag(), 0.0, at);
    auto lhs = evaluate(w, multiply(phi, f), g).value;
    auto rhs = evaluate(w, f, multiply(involution(phi), g)).value;
    invariance.identity(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), 0.0, at);
    bound_slack(f, g, at);
    auto fg = evaluate(w, f, g).value;
    auto star = evaluate(w, involution(g), involution(f)).value;
    symmetry.identity(std::abs(fg - star) / std::max(1.0, std::abs(fg)), 0.0, at);
  }
  auto ext = holder_extremal_argument(w);
  nlohmann::json at{{"sample", "holder_extremal"}};
  std::vector<double> vals;
  for (auto z : ext.values()) vals.push_back(std::abs(z));
  at["f"] = vals;
  bound_slack(ext, ext, at);
  return rep;
}

// ---------------------------------------------------------------------------
// Distinguished weights

/// psi = ||f||_p^{2-p} |f|^{p-2}, the weight whose form attains ||f||_p^2 at f.
/// At p = 2 the weight is the unit (|f|^0 = 1 everywhere, zeros included).
inline FormWeight extremal_weight(const DiscreteFunction& f, const Exponent& p) {
  if (p.reciprocal() > Rational(1, 2)) throw std::domain_error("extremal weight needs p >= 2");
  if (f.is_zero()) throw std::domain_error("extremal weight of the zero function");
  if (p == Exponent(2)) return FormWeight::make(DiscreteFunction::unit(f.space()), p);
  if (p.is_infinite()) throw std::domain_error("extremal weight needs finite p");
  const double pd = p.to_double();
  const double n = norm(f, p);
  // (|f|/n)^{p-2} keeps the computation in range
  std::vector<Complex> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(std::abs(f[i]) / n, pd - 2.0);
  return FormWeight::make(DiscreteFunction(f.space(), std::move(v)), p);
}

inline FormWeight extremal_weight(const SymbolicFunction& f, const Exponent& p) {
  if (p != Exponent(2))
    throw std::domain_error("symbolic extremal weights are only available at p = 2 (coefficients must stay rational)");
  if (f.empty()) throw std::domain_error("extremal weight of the zero function");
  return FormWeight::make(SymbolicFunction::unit(f.domain()), p);
}

/// The constant weight mu(X)^{(2-p)/p}: the unique form with Omega(u,u) = ||u||_p^2.
inline FormWeight normalized_weight(const DiscreteSpace& space, const Exponent& p) {
  if (p.reciprocal() > Rational(1, 2)) throw std::domain_error("normalized weight needs p >= 2");
  double c = std::pow(space.total_mass(), to_double(2 * p.reciprocal() - 1));
  return FormWeight::make(DiscreteFunction::constant(space, c), p);
}

inline FormWeight normalized_weight(Domain domain, const Exponent& p) {
  if (!finite_measure(domain)) throw std::domain_error("normalized weight needs a finite-measure domain");
  return FormWeight::make(SymbolicFunction::unit(domain), p);
}

// ---------------------------------------------------------------------------
// Uniqueness of the normalized form

struct UniquenessReport {
  double target = 0.0;          // ||u||_p^2 = mu(X)^{2/p}
  double value = 0.0;           // Omega(u,u)
  double gap = 0.0;             // target - value
  bool normalized = false;      // |gap| <= tol
  double constant = 0.0;        // mu(X)^{(2-p)/p}
  double max_deviation = 0.0;   // max_i |psi_i - constant|
  double deviation_bound = 0.0; // implied by the gap (when normalized)
  bool passed = true;
};

namespace detail {

/// Largest |d| with (1+d)^s - 1 - s*d <= H, separately for d < 0 and d > 0.
inline double invert_convexity_gap(double s, double H) {
  auto h = [s](double d) { return std::pow(1.0 + d, s) - 1.0 - s * d; };
  double neg = 1.0;
  if (h(-1.0) > H) {
    double lo = -1.0, hi = 0.0;  // h(lo) > H >= h(hi)
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      (h(mid) > H ? lo : hi) = mid;
    }
    neg = -lo;
  }
  double hi = 1.0;
  while (h(hi) <= H && hi < 1e12) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (h(mid) > H ? hi : lo) = mid;
  }
  return std::max(neg, hi);
}

}  // namespace detail

/// If Omega(u,u) is within `tol` of ||u||_p^2 then psi must be within a
/// derived distance of the constant weight. The bound follows from
/// sum_i nu_i h(d_i) <= s * relative_gap + ball slack, with psi_i = c (1 + d_i),
/// nu = mu / mu(X), s = p/(p-2) and h(d) = (1+d)^s - 1 - s d >= 0.
inline UniquenessReport uniqueness_check(const FormWeight& w, double tol) {
  const auto& psi = w.discrete();
  const auto& space = psi.space();
  const auto& p = w.p();
  UniquenessReport rep;
  const double M = space.total_mass();
  rep.target = std::pow(M, 2.0 * to_double(p.reciprocal()));
  rep.constant = std::pow(M, to_double(2 * p.reciprocal() - 1));
  rep.value = evaluate(w, DiscreteFunction::unit(space), DiscreteFunction::unit(space)).value.real();
  rep.gap = rep.target - rep.value;
  rep.normalized = std::abs(rep.gap) <= tol;
  for (std::size_t i = 0; i < psi.size(); ++i)
    rep.max_deviation = std::max(rep.max_deviation, std::abs(psi[i].real() - rep.constant));
  if (!rep.normalized) return rep;

  double min_mass = *std::min_element(space.weights().begin(), space.weights().end());
  const double gap = std::max(rep.gap, 0.0) + tol;
  if (p == Exponent(2)) {
    // psi <= 1 pointwise and sum (1 - psi_i) mu_i = gap
    rep.deviation_bound = gap / min_mass + FormWeight::kBallTolerance;
  } else {
    const double s = gamma_exponent(p).to_double();
    const double ball = std::max(w.ball_norm(), 1.0);
    const double H = std::pow(ball, s) - 1.0 + s * gap / rep.target;
    const double nu_min = min_mass / M;
    rep.deviation_bound = rep.constant * detail::invert_convexity_gap(s, H / nu_min);
  }
  rep.passed = rep.max_deviation <= rep.deviation_bound + 1e-12;
  return rep;
}

// ---------------------------------------------------------------------------
// The p < 2 regime: forms with a weight bounded below blow up

struct DivergenceCertificate {
  double threshold = 1e6;
  int max_halvings = 40;  // smallest truncation is eps = 2^-max_halvings
};

struct DivergenceWitness {
  SymbolicFunction f;
  Rational exponent;
  Rational coeff;
  bool in_lp = false;
  bool in_l2 = false;
  BlowUp truncated;        // truncated Omega(f,f) along eps = 2^-k
  double growth_rate = 0;  // log2 increment of the last two truncated values' increments
  bool monotone = false;
};

/// Exponents a with x^a in L^p((0,1]) but not in L^2((0,1]): (-1/p, -1/2].
inline ReciprocalInterval divergence_exponent_range(const Exponent& p) {
  return ReciprocalInterval(-p.reciprocal(), Rational(-1, 2), false, true);
}

/// Lower bound on a symbolic weight over (0,1]: the sum of its non-increasing
/// near-zero terms.
inline double lower_bound_near_zero(const SymbolicFunction& psi) {
  double s = 0.0;
  for (const auto& t : psi.terms())
    if (t.support == Support::NearZero && t.exponent <= 0) s += to_double(t.coeff);
  return s;
}

/// Returns f = c x^a on (0,1] with f in L^p, f not in L^2, and Omega(f,f) = inf
/// for a form whose weight is at least `alpha` on (0,1]. The exponent is the
/// midpoint of (-1/p, -1/2]; the integer coefficient c is the smallest one for
/// which the truncated energy at the certificate floor clears the threshold.
inline DivergenceWitness divergence_witness(const Exponent& p, const FormWeight& omega, double alpha,
                                            const DivergenceCertificate& cert = {}) {
  if (p.reciprocal() <= Rational(1, 2)) throw std::domain_error("divergence witness needs p < 2; got p = " + p.to_string());
  if (!(alpha > 0.0)) throw std::domain_error("divergence witness needs alpha > 0");
  const auto& psi = omega.symbolic();
  if (lower_bound_near_zero(psi) < alpha) throw std::domain_error("weight is not bounded below by alpha on (0,1]");

  DivergenceWitness out;
  auto range = divergence_exponent_range(p);
  out.exponent = (range.lower() + range.upper()) / 2;
  const double e = to_double(2 * out.exponent + 1);  // < 0
  const double floor_eps = std::ldexp(1.0, -cert.max_halvings);
  const double energy = (std::pow(floor_eps, e) - 1.0) / (-e);
  const double c = std::ceil(std::sqrt(2.0 * cert.threshold / (alpha * energy)));
  out.coeff = Rational(static_cast<std::int64_t>(std::max(1.0, c)));
  out.f = SymbolicFunction::power(psi.domain(), out.exponent, Support::NearZero, out.coeff);
  out.in_lp = in_lp(out.f, p);
  out.in_l2 = in_lp(out.f, Exponent(2));

  auto integrand = multiply(multiply(out.f, out.f), restrict_to(psi, Support::NearZero));
  out.truncated = blow_up(integrand, cert.threshold, cert.max_halvings);
  const auto& tr = out.truncated.trajectory;
  out.monotone = std::is_sorted(tr.begin(), tr.end()) && std::adjacent_find(tr.begin(), tr.end()) == tr.end();
  if (tr.size() >= 3) {
    double d1 = tr[tr.size() - 2] - tr[tr.size() - 3];
    double d2 = tr[tr.size() - 1] - tr[tr.size() - 2];
    out.growth_rate = std::log2(d2 / d1);
  }
  return out;
}

}  // namespace lpcq
