#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpcq/exponents.hpp"
#include "lpcq/forms.hpp"
#include "lpcq/quadrature.hpp"
#include "lpcq/random.hpp"
#include "lpcq/report.hpp"
#include "lpcq/spaces.hpp"

namespace lpcq {

struct GammaVerdict {
  bool f_in_lp = false;
  bool g_in_lp = false;
  bool in_gamma1 = false;
  bool in_gamma2 = false;
  std::optional<std::pair<Exponent, Exponent>> witness;  // (r, s) for Gamma_2
  bool in_gamma_w = false;
  bool in_gamma_s = false;
  std::optional<SymbolicFunction> product;
  double weak_identity_residual = 0.0;  // worst residual of the weak-multiplier identity
};

/// fg in L^p, decided exactly from E(fg).
inline GammaVerdict gamma1_check(const SymbolicFunction& f, const SymbolicFunction& g, const Exponent& p) {
  GammaVerdict v;
  v.f_in_lp = in_lp(f, p);
  v.g_in_lp = in_lp(g, p);
  auto h = multiply(f, g);
  v.in_gamma1 = in_lp(h, p);
  if (v.in_gamma1) v.product = h;
  return v;
}

/// Exponent split: r in E(f), s in E(g) (both finite) with 1/r + 1/s = 1/p.
/// Membership of f and g in L^p is reported, not required.
inline GammaVerdict gamma2_check(const SymbolicFunction& f, const SymbolicFunction& g, const Exponent& p) {
  GammaVerdict v;
  v.f_in_lp = in_lp(f, p);
  v.g_in_lp = in_lp(g, p);
  v.witness = reciprocal_sum_witness(finite_part(exponent_set(f)), finite_part(exponent_set(g)), p);
  v.in_gamma2 = v.witness.has_value();
  return v;
}

// ---------------------------------------------------------------------------
// Discrete shadow of a symbolic pair: atoms at the geometric midpoints of a
// dyadic partition of the domain, carrying the shell lengths as masses.

inline DiscreteSpace shadow_space(Domain d, int shells_per_side = 24) {
  std::vector<double> w;
  for (int k = shells_per_side - 1; k >= 0; --k) w.push_back(std::ldexp(1.0, -(k + 1)));  // [2^-(k+1), 2^-k]
  if (d == Domain::HalfLine)
    for (int k = 0; k < shells_per_side; ++k) w.push_back(std::ldexp(1.0, k));  // [2^k, 2^(k+1)]
  return DiscreteSpace(std::move(w));
}

inline std::vector<double> shadow_points(Domain d, int shells_per_side = 24) {
  std::vector<double> x;
  for (int k = shells_per_side - 1; k >= 0; --k) x.push_back(std::ldexp(std::sqrt(2.0), -(k + 1)));
  if (d == Domain::HalfLine)
    for (int k = 0; k < shells_per_side; ++k) x.push_back(std::ldexp(std::sqrt(2.0), k));
  return x;
}

inline DiscreteFunction shadow(const SymbolicFunction& f, int shells_per_side = 24) {
  auto space = shadow_space(f.domain(), shells_per_side);
  auto xs = shadow_points(f.domain(), shells_per_side);
  std::vector<Complex> v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = f(xs[i]);
  return DiscreteFunction(space, std::move(v));
}

/// f is a weak multiplier of g iff h = fg lies in L^p. When it does, the
/// identity Omega(g phi, f* psi) = Omega(h phi, psi) is checked on sampled
/// forms and test functions in the discrete shadow. Uniqueness of h is not
/// re-verified; it follows from *-semisimplicity.
inline GammaVerdict weak_mul_check(const SymbolicFunction& f, const SymbolicFunction& g, const Exponent& p,
                                   std::uint64_t seed, int samples = 8) {
  if (p.reciprocal() > Rational(1, 2)) throw std::domain_error("weak multiplication needs p >= 2");
  GammaVerdict v = gamma1_check(f, g, p);
  v.in_gamma_w = v.in_gamma1;
  if (!v.in_gamma_w) return v;
  auto fs = shadow(f), gs = shadow(g), hs = shadow(*v.product);
  const auto& space = fs.space();
  Rng rng = make_rng(seed, 0x3c);
  for (int s = 0; s < samples; ++s) {
    auto psi_w = random_nonnegative_function(space, rng);
    double n = p == Exponent(2) ? norm(psi_w, Exponent::infinity()) : norm(psi_w, gamma_exponent(p));
    auto omega = FormWeight::candidate(scale(psi_w, 1.0 / n), p);
    auto phi = random_bounded_function(space, rng);
    auto psi = random_bounded_function(space, rng);
    Complex lhs = evaluate(omega, multiply(gs, phi), multiply(involution(fs), psi)).value;
    Complex rhs = evaluate(omega, multiply(hs, phi), psi).value;
    v.weak_identity_residual = std::max(v.weak_identity_residual, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return v;
}

/// f . g = closure of T_f applied to g; defined iff fg in L^p (p > 1).
inline std::optional<SymbolicFunction> strong_product(const SymbolicFunction& f, const SymbolicFunction& g,
                                                      const Exponent& p) {
  if (p.reciprocal() >= Rational(1)) throw std::domain_error("strong product needs p > 1");
  auto h = multiply(f, g);
  if (!in_lp(h, p)) return std::nullopt;
  return h;
}

/// All four relations for one pair (Gamma_w and Gamma_s only for p >= 2 / p > 1).
inline GammaVerdict classify_pair(const SymbolicFunction& f, const SymbolicFunction& g, const Exponent& p,
                                  std::uint64_t seed, int weak_samples = 4) {
  GammaVerdict v = p.reciprocal() <= Rational(1, 2) ? weak_mul_check(f, g, p, seed, weak_samples) : gamma1_check(f, g, p);
  auto g2 = gamma2_check(f, g, p);
  v.in_gamma2 = g2.in_gamma2;
  v.witness = g2.witness;
  if (p.reciprocal() < Rational(1)) v.in_gamma_s = strong_product(f, g, p).has_value();
  return v;
}

// ---------------------------------------------------------------------------
// Closability

struct ClosabilityReport {
  bool closable = false;
  std::string status;  // "closable" or "not_guaranteed"
  Exponent dual;       // p'
  // A power x^b on (0,1] lies in D(T_f') iff b > near_lower; a power x^b on
  // (1,inf) iff b < tail_upper. Both bounds are attained when p' = inf.
  Rational near_lower;
  Rational tail_upper;
  bool bounds_attained = false;
  bool has_near = false;
  bool has_tail = false;
  std::string density_evidence;
};

inline ClosabilityReport closability_report(const SymbolicFunction& f, const Exponent& p) {
  if (p.is_infinite()) throw std::domain_error("closability needs p < inf");
  ClosabilityReport r;
  r.dual = conjugate(p);
  const Rational crit = -r.dual.reciprocal();  // x^b in L^{p'} near zero iff b > crit
  std::optional<Rational> a_min, a_max;
  for (const auto& t : f.terms()) {
    if (t.support == Support::NearZero)
      a_min = a_min ? std::min(*a_min, t.exponent) : t.exponent;
    else
      a_max = a_max ? std::max(*a_max, t.exponent) : t.exponent;
  }
  r.has_near = true;
  r.near_lower = a_min ? std::max(crit, crit - *a_min) : crit;
  r.has_tail = f.domain() == Domain::HalfLine;
  r.tail_upper = a_max ? std::min(crit, crit - *a_max) : crit;
  r.bounds_attained = r.dual.is_infinite();
  const bool finite = finite_measure(f.domain());
  if (p.reciprocal() < Rational(1) || finite) {
    r.closable = true;
    r.status = "closable";
  } else {
    r.status = "not_guaranteed";
  }
  r.density_evidence = "D(T_f') contains every bounded function supported in [1/n, n], hence C_0(X)";
  return r;
}

// ---------------------------------------------------------------------------
// Approximating sequences g_n = g 1_(1/n, n)

struct ApproxSequenceReport {
  bool convergent = false;     // the increments ||f g_m - f g_n||_p are summable
  bool g_approximable = false; // ||g - g_n||_p -> 0
  double rate = 0.0;           // measured decay rate per dyadic shell (log2)
  double predicted_rate = 0.0; // from the leading exponents
  std::vector<double> increments;       // ||f g_{2^(k+1)} - f g_{2^k}||_p for small k
  std::vector<double> g_tail_norms;     // ||g - g_{2^k}||_p for small k (inf when g is not in L^p)
  int far_shell = 0;
};

namespace detail {

/// log of the p-th power integral of h over the k-th dyadic shell on each side.
inline std::pair<double, double> log_shells(const SymbolicFunction& h, const Exponent& p, int k) {
  const double pd = p.to_double();
  auto near = h.numeric_terms(Support::NearZero);
  auto tail = h.numeric_terms(Support::Tail);
  double ln = near.empty() ? -kInf : quadrature::log_dyadic_shell(near, pd, k, true);
  double lt = tail.empty() ? -kInf : quadrature::log_dyadic_shell(tail, pd, k, false);
  return {ln, lt};
}

/// Measured decay rate (log2 per shell) of the p-th power shell integrals at
/// shell K; +inf when h has no terms on either side.
inline double shell_decay_rate(const SymbolicFunction& h, const Exponent& p, int K) {
  auto [n0, t0] = log_shells(h, p, K - 1);
  auto [n1, t1] = log_shells(h, p, K);
  double rate = kInf;
  if (std::isfinite(n0)) rate = std::min(rate, (n0 - n1) / std::numbers::ln2);
  if (std::isfinite(t0)) rate = std::min(rate, (t0 - t1) / std::numbers::ln2);
  return rate;
}

/// 1 + p a_min near zero, -(1 + p a_max) at infinity.
inline double predicted_decay_rate(const SymbolicFunction& h, const Exponent& p) {
  const double pd = p.to_double();
  double rate = kInf;
  for (const auto& t : h.terms()) {
    double a = to_double(t.exponent);
    rate = std::min(rate, t.support == Support::NearZero ? 1.0 + pd * a : -(1.0 + pd * a));
  }
  return rate;
}

inline double shell_sum_norm(const SymbolicFunction& h, const Exponent& p, int from, int to) {
  // ||h 1_{[2^-to, 2^-from] u [2^from, 2^to]}||_p over whole shells
  double s = 0.0;
  for (int k = from; k < to; ++k) {
    auto [ln, lt] = log_shells(h, p, k);
    if (std::isfinite(ln)) s += std::exp(ln);
    if (std::isfinite(lt)) s += std::exp(lt);
  }
  return std::pow(s, 1.0 / p.to_double());
}

/// ||h - h 1_(2^-k, 2^k)||_p: the parts of h on (0, 2^-k] and [2^k, inf),
/// rescaled onto the unit interval / half line so the leading power factors out.
inline double truncation_error(const SymbolicFunction& h, const Exponent& p, int k) {
  if (!in_lp(h, p)) return kInf;
  const double pd = p.to_double();
  double total = 0.0;
  for (Support side : {Support::NearZero, Support::Tail}) {
    auto terms = h.numeric_terms(side);
    if (terms.empty()) continue;
    const bool near = side == Support::NearZero;
    double lead = terms.front().exponent;
    for (const auto& t : terms) lead = near ? std::min(lead, t.exponent) : std::max(lead, t.exponent);
    const double sign = near ? -1.0 : 1.0;
    for (auto& t : terms) t.coeff *= std::exp2(sign * k * (t.exponent - lead));
    double scaled = near ? quadrature::unit_interval_power(terms, pd) : quadrature::half_line_tail_power(terms, pd);
    total += std::exp2(sign * k * (1.0 + pd * lead)) * scaled;
  }
  return std::pow(total, 1.0 / pd);
}

}  // namespace detail

/// The truncations are sharp cutoffs, each a limit of C_0 functions in L^p.
/// Convergence is decided from the decay of the far shells: the Cauchy
/// increments are tails of a geometric series iff the shell integrals decay.
inline ApproxSequenceReport approx_sequence_check(const SymbolicFunction& f, const SymbolicFunction& g, const Exponent& p,
                                                  int N = 400) {
  if (p.reciprocal() >= Rational(1) || p.is_infinite()) throw std::domain_error("approximating sequences need 1 < p < inf");
  if (N < 8) throw std::invalid_argument("approximation depth N must be at least 8");
  ApproxSequenceReport r;
  r.far_shell = N;
  auto h = multiply(f, g);
  constexpr double kRateFloor = 1e-3;
  r.rate = detail::shell_decay_rate(h, p, N);
  r.predicted_rate = detail::predicted_decay_rate(h, p);
  r.convergent = r.rate > kRateFloor;
  r.g_approximable = detail::shell_decay_rate(g, p, N) > kRateFloor;
  for (int k = 0; k < 6; ++k) {
    r.increments.push_back(detail::shell_sum_norm(h, p, k, k + 1));
    r.g_tail_norms.push_back(detail::truncation_error(g, p, k));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Distributivity of Gamma_2

/// A function with one term on each side of 1 (or only the near-zero term on
/// the unit interval), unit coefficients.
inline SymbolicFunction two_sided_power(Domain d, const Rational& near, std::optional<Rational> tail) {
  std::vector<PowerTerm> terms{{Rational(1), near, Support::NearZero}};
  if (tail && d == Domain::HalfLine) terms.push_back({Rational(1), *tail, Support::Tail});
  return SymbolicFunction(d, std::move(terms));
}

struct DistributivityWitness {
  SymbolicFunction f, g, h;
  std::pair<Exponent, Exponent> split_fg, split_fh;
  ExponentInterval e_sum;  // E(g + h), finite part
};

struct DistributivitySearch {
  std::optional<DistributivityWitness> witness;
  std::size_t candidates = 0;  // distinct functions examined
  std::size_t triples = 0;
  Rational grid_min, grid_max;
  std::size_t grid_size = 0;
};

/// Searches (f, g, h) with (f,g), (f,h) in Gamma_2 but (f, g+h) not, over
/// functions whose exponents come from `grid`. Each hit is re-verified from the
/// actual sum g + h. The lexicographically least witness in the candidate
/// order is returned.
inline DistributivitySearch distributivity_witness_search(Domain d, const Exponent& p, std::vector<Rational> grid) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  DistributivitySearch out;
  out.grid_size = grid.size();
  if (grid.empty()) return out;
  out.grid_min = grid.front();
  out.grid_max = grid.back();

  struct Candidate {
    SymbolicFunction fn;
    ReciprocalInterval r;
  };
  std::vector<Candidate> cands;
  auto push = [&](SymbolicFunction fn) {
    auto R = reciprocal_image(finite_part(exponent_set(fn)));
    if (R.is_empty()) return;
    for (const auto& c : cands)
      if (c.r == R) return;  // same E: interchangeable for Gamma_2
    cands.push_back({std::move(fn), R});
  };
  for (const auto& a : grid) {
    if (d == Domain::UnitInterval) {
      push(two_sided_power(d, a, std::nullopt));
    } else {
      push(two_sided_power(d, a, std::nullopt));
      for (const auto& b : grid) push(two_sided_power(d, a, b));
    }
  }
  out.candidates = cands.size();

  for (std::size_t i = 0; i < cands.size(); ++i) {
    const auto Ef = finite_part(exponent_set(cands[i].fn));
    for (std::size_t j = 0; j < cands.size(); ++j) {
      auto fg = reciprocal_sum_witness(Ef, finite_part(exponent_set(cands[j].fn)), p);
      if (!fg) continue;
      for (std::size_t k = j + 1; k < cands.size(); ++k) {
        ++out.triples;
        auto fh = reciprocal_sum_witness(Ef, finite_part(exponent_set(cands[k].fn)), p);
        if (!fh) continue;
        auto sum = add(cands[j].fn, cands[k].fn);
        auto Esum = finite_part(exponent_set(sum));
        if (reciprocal_sum_contains(Ef, Esum, p)) continue;
        out.witness = DistributivityWitness{cands[i].fn, cands[j].fn, cands[k].fn, *fg, *fh, Esum};
        return out;
      }
    }
  }
  return out;
}

/// Grid lo, lo + step, ..., hi.
inline std::vector<Rational> exponent_grid(const Rational& lo, const Rational& hi, const Rational& step) {
  if (step <= Rational(0)) throw std::invalid_argument("grid step must be positive");
  std::vector<Rational> g;
  for (Rational x = lo; x <= hi; x += step) g.push_back(x);
  return g;
}

// ---------------------------------------------------------------------------
// Partial *-algebra axioms

enum class GammaKind { Gamma1, Gamma2 };

inline const char* to_string(GammaKind k) { return k == GammaKind::Gamma1 ? "gamma1" : "gamma2"; }

inline bool in_gamma(GammaKind k, const SymbolicFunction& f, const SymbolicFunction& g, const Exponent& p) {
  return k == GammaKind::Gamma1 ? gamma1_check(f, g, p).in_gamma1 : gamma2_check(f, g, p).in_gamma2;
}

/// (i) symmetry under involution, (ii) closure of right multipliers under
/// sums, (iii) distributivity of the product, and the unit axiom on
/// finite-measure domains. Checked over all corpus pairs / triples; with
/// `ambient_only` the corpus is first restricted to L^p.
inline Report partial_algebra_axioms_check(GammaKind kind, const std::vector<SymbolicFunction>& corpus, const Exponent& p,
                                           bool ambient_only = true) {
  Report rep{std::string("partial_algebra_") + to_string(kind)};
  auto& sym = rep.add("involution_symmetry", 0.0);
  auto& sums = rep.add("right_multipliers_closed_under_sums", 0.0);
  auto& distrib = rep.add("distributivity", 0.0);
  std::vector<const SymbolicFunction*> members;
  for (const auto& f : corpus)
    if (!ambient_only || in_lp(f, p)) members.push_back(&f);
  if (!corpus.empty() && finite_measure(corpus.front().domain())) {
    auto& unit = rep.add("unit", 0.0);
    auto u = SymbolicFunction::unit(corpus.front().domain());
    for (const auto* f : members) {
      bool ok = in_gamma(kind, u, *f, p) && in_gamma(kind, *f, u, p) && multiply(u, *f) == multiply(*f, u) &&
                multiply(u, *f) == *f;
      unit.flag(ok, {{"f", f->to_string()}});
    }
  }
  for (const auto* f : members)
    for (const auto* g : members) {
      bool fg = in_gamma(kind, *f, *g, p);
      if (fg) sym.flag(in_gamma(kind, involution(*g), involution(*f), p), {{"f", f->to_string()}, {"g", g->to_string()}});
    }
  for (const auto* f : members)
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (!in_gamma(kind, *f, *members[j], p)) continue;
      for (std::size_t k = j; k < members.size(); ++k) {
        if (!in_gamma(kind, *f, *members[k], p)) continue;
        const auto& g = *members[j];
        const auto& h = *members[k];
        auto gh = add(g, h);
        nlohmann::json at{{"f", f->to_string()}, {"g", g.to_string()}, {"h", h.to_string()}};
        bool closed = in_gamma(kind, *f, gh, p);
        sums.flag(closed, at);
        if (closed) distrib.flag(add(multiply(*f, g), multiply(*f, h)) == multiply(*f, gh), at);
      }
    }
  return rep;
}

inline void to_json(nlohmann::json& j, const GammaVerdict& v) {
  j = {{"f_in_lp", v.f_in_lp},       {"g_in_lp", v.g_in_lp},     {"gamma1", v.in_gamma1}, {"gamma2", v.in_gamma2},
       {"gamma_w", v.in_gamma_w},    {"gamma_s", v.in_gamma_s}};
  if (v.witness) j["witness"] = {{"r", v.witness->first.to_string()}, {"s", v.witness->second.to_string()}};
  else j["witness"] = nullptr;
  j["product"] = v.product ? nlohmann::json(v.product->to_string()) : nlohmann::json(nullptr);
}

}  // namespace lpcq
