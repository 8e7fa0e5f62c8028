#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpcq/exponents.hpp"
#include "lpcq/forms.hpp"
#include "lpcq/random.hpp"
#include "lpcq/report.hpp"
#include "lpcq/sampling.hpp"
#include "lpcq/spaces.hpp"

namespace lpcq {

/// GNS data of a weight form on a discrete space: H = L^2(X, w dmu), with
/// the null atoms (w_i mu_i = 0) masked out. Finite dimension makes the
/// completion a no-op.
class GnsModel {
 public:
  static GnsModel build(const FormWeight& w) {
    if (!w.is_discrete()) throw std::invalid_argument("GNS model needs a discrete weight");
    GnsModel m(w);
    const auto& psi = w.discrete();
    const auto& space = psi.space();
    m.hweights_.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
      m.hweights_[i] = psi[i].real() * space.weight(i);
      if (m.hweights_[i] == 0.0) m.kernel_.push_back(i);
    }
    return m;
  }

  const DiscreteSpace& space() const { return weight_.discrete().space(); }
  const Exponent& p() const { return weight_.p(); }
  const FormWeight& weight() const { return weight_; }
  const std::vector<std::size_t>& kernel() const { return kernel_; }
  const std::vector<double>& hilbert_weights() const { return hweights_; }
  std::size_t dimension() const { return hweights_.size() - kernel_.size(); }
  bool in_kernel(std::size_t i) const { return hweights_[i] == 0.0; }

  /// lambda(f): the class of f, represented by its values with null atoms zeroed.
  std::vector<Complex> lambda(const DiscreteFunction& f) const {
    require_same_space(f, weight_.discrete());
    std::vector<Complex> v(f.values().begin(), f.values().end());
    for (auto i : kernel_) v[i] = 0.0;
    return v;
  }

  Complex inner(const std::vector<Complex>& xi, const std::vector<Complex>& eta) const {
    Complex s = 0.0;
    for (std::size_t i = 0; i < hweights_.size(); ++i) s += xi[i] * std::conj(eta[i]) * hweights_[i];
    return s;
  }

 private:
  explicit GnsModel(FormWeight w) : weight_(std::move(w)) {}
  FormWeight weight_;
  std::vector<std::size_t> kernel_;
  std::vector<double> hweights_;
};

struct OperatorReport {
  std::vector<Complex> diagonal;  // zero on null atoms
  bool bounded = true;
  double op_norm = 0.0;
};

/// pi(f): multiplication by f on H.
inline OperatorReport represent(const GnsModel& m, const DiscreteFunction& f) {
  OperatorReport r;
  r.diagonal = m.lambda(f);
  for (std::size_t i = 0; i < r.diagonal.size(); ++i)
    if (!m.in_kernel(i)) r.op_norm = std::max(r.op_norm, std::abs(r.diagonal[i]));
  return r;
}

inline std::vector<Complex> apply_operator(const OperatorReport& op, const std::vector<Complex>& xi) {
  std::vector<Complex> out(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) out[i] = op.diagonal[i] * xi[i];
  return out;
}

struct DomainReport {
  bool in_domain = false;
  double ratio_sup = 0.0;       // sup_B Omega(fB,fB) / Omega(B,B)
  double linf_mu_w_sq = 0.0;    // ||f||^2 in L^inf(mu_w)
  bool bounded_on_support = false;
  bool in_lp = false;
  nlohmann::json witness;
};

/// D_Omega membership on the discrete backend: the ratio sup is taken over atom
/// indicators, which attain it for diagonal operators.
inline DomainReport domain_check(const GnsModel& m, const DiscreteFunction& f) {
  DomainReport r;
  const auto& space = m.space();
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (m.in_kernel(i)) continue;
    auto B = DiscreteFunction::indicator(space, i);
    auto fB = multiply(f, B);
    double ratio = evaluate(m.weight(), fB, fB).value.real() / evaluate(m.weight(), B, B).value.real();
    if (ratio > r.ratio_sup) {
      r.ratio_sup = ratio;
      r.witness = {{"atom", i}};
    }
    r.linf_mu_w_sq = std::max(r.linf_mu_w_sq, std::norm(f[i]));
  }
  r.bounded_on_support = true;
  r.in_lp = true;
  r.in_domain = true;
  return r;
}

/// D_Omega for a symbolic weight and function: f must be bounded on every
/// support where w is positive, and lie in L^p.
inline DomainReport domain_check(const FormWeight& w, const SymbolicFunction& f) {
  if (w.is_discrete()) throw std::invalid_argument("symbolic domain check needs a symbolic weight");
  const auto& psi = w.symbolic();
  require_same_domain(f, psi);
  DomainReport r;
  bool weighted[2] = {false, false};
  for (const auto& t : psi.terms()) weighted[t.support == Support::NearZero ? 0 : 1] = true;
  r.bounded_on_support = true;
  for (const auto& t : f.terms()) {
    const bool near = t.support == Support::NearZero;
    if (!weighted[near ? 0 : 1]) continue;
    const bool bounded = near ? t.exponent >= Rational(0) : t.exponent <= Rational(0);
    if (!bounded) {
      r.bounded_on_support = false;
      r.witness = {{"term", lpcq::to_string(t.exponent)}, {"support", to_string(t.support)}};
    }
  }
  r.in_lp = in_lp(f, w.p());
  r.in_domain = r.bounded_on_support && r.in_lp;
  if (r.bounded_on_support) {
    double sup = 0.0;
    for (int s = 0; s < 2; ++s) {
      if (!weighted[s]) continue;
      double c = 0.0;
      for (const auto& t : f.terms())
        if ((t.support == Support::NearZero) == (s == 0)) c += to_double(t.coeff);
      sup = std::max(sup, c);
    }
    r.linf_mu_w_sq = sup * sup;
    r.ratio_sup = r.linf_mu_w_sq;
  } else {
    r.linf_mu_w_sq = kInf;
    r.ratio_sup = kInf;
  }
  return r;
}

/// Ratio Omega(fB,fB)/Omega(B,B) for B the indicator of a dyadic shell
/// [2^-(k+1), 2^-k] (toward_zero) or [2^k, 2^(k+1)], in closed form.
inline double shell_ratio(const FormWeight& w, const SymbolicFunction& f, int k, bool toward_zero) {
  const double lo = toward_zero ? std::ldexp(1.0, -(k + 1)) : std::ldexp(1.0, k);
  const double hi = 2.0 * lo;
  const auto& psi = w.symbolic();
  double den = integral_between(psi, lo, hi);
  if (den <= 0.0) return 0.0;
  return integral_between(multiply(multiply(f, f), psi), lo, hi) / den;
}

/// Always true at desk scale: the model is finite-dimensional.
inline bool completion_is_trivial(const GnsModel&) { return true; }

inline Report representation_axioms_check(const GnsModel& m, std::uint64_t seed, int samples = 32) {
  const auto& space = m.space();
  Report rep{"gns_representation"};
  auto& rep_identity = rep.add("form_identity", 1e-12);
  auto& adjoint = rep.add("adjoint_identity", 1e-12);
  auto& multiplicative = rep.add("multiplicativity", 1e-12);
  auto& schwarz = rep.add("cauchy_schwarz", 1e-12);
  auto& kernel = rep.add("kernel_consistency", 0.0);
  auto& density = rep.add("density_bound", 1e-12);
  Rng rng = make_rng(seed, 0x65);
  auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  for (int s = 0; s < samples; ++s) {
    auto f = random_complex_function(space, rng);
    auto g = random_complex_function(space, rng);
    auto phi = random_complex_function(space, rng);
    auto psi = random_complex_function(space, rng);
    nlohmann::json at{{"sample", s}};
    auto pf = represent(m, f);
    // <pi(f) lambda(phi), lambda(psi)> = Omega(f phi, psi)
    Complex lhs = m.inner(apply_operator(pf, m.lambda(phi)), m.lambda(psi));
    Complex rhs = evaluate(m.weight(), multiply(f, phi), psi).value;
    rep_identity.identity(rel(lhs, rhs), 0.0, at);
    // <pi(f) xi, eta> = <xi, pi(f*) eta>
    auto xi = m.lambda(phi), eta = m.lambda(psi);
    Complex a = m.inner(apply_operator(pf, xi), eta);
    Complex b = m.inner(xi, apply_operator(represent(m, involution(f)), eta));
    adjoint.identity(rel(a, b), 0.0, at);
    // pi(fg) xi = pi(f)(pi(g) xi)
    auto left = apply_operator(represent(m, multiply(f, g)), xi);
    auto right = apply_operator(pf, apply_operator(represent(m, g), xi));
    double worst = 0.0;
    for (std::size_t i = 0; i < left.size(); ++i) worst = std::max(worst, rel(left[i], right[i]));
    multiplicative.identity(worst, 0.0, at);
    schwarz.inequality(std::abs(m.inner(xi, eta)), std::sqrt(m.inner(xi, xi).real() * m.inner(eta, eta).real()) * (1 + 1e-14),
                       at);
    double ng = norm(g, m.p());
    density.inequality(evaluate(m.weight(), g, g).value.real() / (ng * ng), 1.0, at);
  }
  // functions carried by null atoms act as zero
  std::vector<Complex> v(space.size(), 0.0);
  for (auto i : m.kernel()) v[i] = Complex(1.0, 1.0);
  auto op = represent(m, DiscreteFunction(space, v));
  kernel.flag(op.op_norm == 0.0, {{"kernel", m.kernel()}});
  return rep;
}

/// Derived flag: D_Omega contains every tested function.
template <class Range>
bool admissible_on(const FormWeight& w, const Range& corpus) {
  for (const auto& f : corpus)
    if (!domain_check(w, f).in_domain) return false;
  return true;
}

inline void to_json(nlohmann::json& j, const GnsModel& m) {
  j = {{"kernel", m.kernel()}, {"hweights", m.hilbert_weights()}, {"dimension", m.dimension()},
       {"completion_trivial", completion_is_trivial(m)}};
}

inline void to_json(nlohmann::json& j, const OperatorReport& r) {
  std::vector<double> re, im;
  for (auto z : r.diagonal) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  j = {{"diagonal", {{"re", re}, {"im", im}}}, {"bounded", r.bounded}, {"op_norm", r.op_norm}};
}

inline void to_json(nlohmann::json& j, const DomainReport& r) {
  j = {{"in_domain", r.in_domain},
       {"ratio_sup", slack_to_json(r.ratio_sup)},
       {"linf_mu_w_sq", slack_to_json(r.linf_mu_w_sq)},
       {"bounded_on_support", r.bounded_on_support},
       {"in_lp", r.in_lp},
       {"witness", r.witness}};
}

}  // namespace lpcq
