#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
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

/// Finite family of measures on the atoms of a discrete space, uniformly
/// bounded in total mass by C.
class MeasureFamily {
 public:
  MeasureFamily(DiscreteSpace base, std::vector<std::vector<double>> members, double C)
      : base_(std::move(base)), members_(std::move(members)), C_(C) {
    if (members_.empty()) throw std::invalid_argument("measure family is empty");
    if (!(C_ > 0.0)) throw std::invalid_argument("mass bound C must be positive");
    for (std::size_t k = 0; k < members_.size(); ++k) {
      const auto& m = members_[k];
      if (m.size() != base_.size()) throw std::invalid_argument("member " + std::to_string(k) + " has the wrong number of atoms");
      double total = 0.0;
      for (double x : m) {
        if (!(x >= 0.0)) throw std::invalid_argument("member " + std::to_string(k) + " has a negative mass");
        total += x;
      }
      if (total > C_ * (1.0 + 1e-12))
        throw std::invalid_argument("member " + std::to_string(k) + " exceeds the mass bound C");
    }
  }

  const DiscreteSpace& base() const { return base_; }
  const std::vector<std::vector<double>>& members() const { return members_; }
  double bound() const { return C_; }
  std::size_t size() const { return members_.size(); }

  double member_norm(const DiscreteFunction& phi, const Exponent& p, std::size_t k) const {
    require_same_space(phi, DiscreteFunction::unit(base_));
    const auto& m = members_[k];
    if (p.is_infinite()) {
      double s = 0.0;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0.0) s = std::max(s, std::abs(phi[i]));
      return s;
    }
    const double pd = p.to_double();
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) s += std::pow(std::abs(phi[i]), pd) * m[i];
    return std::pow(s, 1.0 / pd);
  }

 private:
  DiscreteSpace base_;
  std::vector<std::vector<double>> members_;
  double C_;
};

struct FamilyNorm {
  double value = 0.0;
  std::size_t member = 0;
};

/// ||phi||_{p,I} = max over members of the p-norm with respect to that member.
inline FamilyNorm sup_norm_at(const DiscreteFunction& phi, const Exponent& p, const MeasureFamily& fam) {
  FamilyNorm r;
  for (std::size_t k = 0; k < fam.size(); ++k) {
    double v = fam.member_norm(phi, p, k);
    if (v > r.value) {
      r.value = v;
      r.member = k;
    }
  }
  return r;
}

inline double sup_norm(const DiscreteFunction& phi, const Exponent& p, const MeasureFamily& fam) {
  return sup_norm_at(phi, p, fam).value;
}

/// Involution invariance and the module bound ||phi psi|| <= ||phi|| ||psi||_inf,
/// plus the mass bound ||phi||_{p,I} <= C^{1/p} ||phi||_inf (and the cruder
/// C ||phi||_inf, which follows from it only when C >= 1).
inline Report family_axioms_check(const MeasureFamily& fam, const Exponent& p, std::uint64_t seed, int samples = 64) {
  Report rep{"family_axioms"};
  auto& inv = rep.add("involution_invariance", 0.0);
  auto& module = rep.add("module_bound", 1e-12);
  auto& mass = rep.add("mass_bound", 1e-12);
  Check* crude = fam.bound() >= 1.0 ? &rep.add("mass_bound_linear_in_C", 1e-12) : nullptr;
  Rng rng = make_rng(seed, 0x6e);
  const double Cp = p.is_infinite() ? 1.0 : std::pow(fam.bound(), to_double(p.reciprocal()));
  for (int s = 0; s < samples; ++s) {
    auto phi = random_complex_function(fam.base(), rng);
    auto psi = s % 4 == 0 ? DiscreteFunction::unit(fam.base()) : random_complex_function(fam.base(), rng);
    nlohmann::json at{{"sample", s}};
    double n = sup_norm(phi, p, fam);
    inv.identity(sup_norm(involution(phi), p, fam), n, at);
    double sup_psi = norm(psi, Exponent::infinity());
    module.inequality(sup_norm(multiply(phi, psi), p, fam), n * sup_psi * (1 + 1e-14), at);
    double sup_phi = norm(phi, Exponent::infinity());
    mass.inequality(n, Cp * sup_phi * (1 + 1e-14), at);
    if (crude) crude->inequality(n, fam.bound() * sup_phi * (1 + 1e-14), at);
  }
  return rep;
}

/// mu_Omega has atom masses psi_i mu_i, since Omega(B, u) = sum B_i psi_i mu_i.
/// The mass bound is ||u||_p^2 = mu(X)^{2/p}.
inline MeasureFamily measures_from_forms(const std::vector<FormWeight>& weights) {
  if (weights.empty()) throw std::invalid_argument("no weights given");
  const auto& space = weights.front().discrete().space();
  const Exponent p = weights.front().p();
  std::vector<std::vector<double>> members;
  for (const auto& w : weights) {
    if (w.p() != p) throw std::invalid_argument("weights for different exponents");
    const auto& psi = w.discrete();
    require_same_space(psi, weights.front().discrete());
    std::vector<double> m(space.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = psi[i].real() * space.weight(i);
    members.push_back(std::move(m));
  }
  double C = std::pow(space.total_mass(), 2.0 * to_double(p.reciprocal()));
  return MeasureFamily(space, std::move(members), C);
}

/// Phi(f): on a finite atom space the characters of C(X) are the atom
/// evaluations, so the Gel'fand transform is the identity on values.
inline DiscreteFunction gelfand_image(const DiscreteFunction& f) { return f; }

struct TransformReport {
  DiscreteFunction image;
  double embedding_norm = 0.0;  // ||Phi(f)||_{2,I}
  double p_norm = 0.0;          // ||f||_p
  double isometry_gap = 0.0;
  bool extremal_included = false;
  bool isometric = false;       // gap within tolerance and certified by the extremal member
  std::optional<std::size_t> injectivity_witness;  // member with Omega(f,f) > 0
  bool linear = true;
  bool injective = false;
  bool multiplicative = true;
  bool involutive = true;
};

/// Isometry and the *-homomorphism identities of Phi on seeded samples. The
/// isometry is only certified when the family contains the extremal weight of f;
/// otherwise the embedding norm is a lower bound.
inline TransformReport transform(const DiscreteFunction& f, const std::vector<FormWeight>& weights, std::uint64_t seed,
                                 int samples = 16, double tol = 1e-6) {
  const auto fam = measures_from_forms(weights);
  const Exponent p = weights.front().p();
  TransformReport r;
  r.image = gelfand_image(f);
  auto at = sup_norm_at(r.image, Exponent(2), fam);
  r.embedding_norm = at.value;
  r.p_norm = norm(f, p);
  r.isometry_gap = std::abs(r.embedding_norm - r.p_norm);
  if (!f.is_zero() && p.reciprocal() <= Rational(1, 2) && !p.is_infinite()) {
    const auto ext = extremal_weight(f, p).discrete();
    for (const auto& w : weights) {
      const auto& psi = w.discrete();
      bool same = true;
      for (std::size_t i = 0; i < psi.size() && same; ++i)
        same = std::abs(psi[i] - ext[i]) <= 1e-12 * std::max(1.0, std::abs(ext[i]));
      if (same) {
        r.extremal_included = true;
        break;
      }
    }
  }
  r.isometric = r.extremal_included && r.isometry_gap <= tol * std::max(1.0, r.p_norm);
  if (!f.is_zero()) {
    for (std::size_t k = 0; k < fam.size(); ++k)
      if (fam.member_norm(f, Exponent(2), k) > 0.0) {
        r.injectivity_witness = k;
        break;
      }
  }
  r.injective = f.is_zero() || r.injectivity_witness.has_value();

  Rng rng = make_rng(seed, 0x7f);
  const auto& space = f.space();
  auto same = [](const DiscreteFunction& a, const DiscreteFunction& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return false;
    return true;
  };
  for (int s = 0; s < samples; ++s) {
    auto g = random_complex_function(space, rng);
    Complex lam(standard_normal(rng), standard_normal(rng));
    r.linear = r.linear && same(gelfand_image(add(f, scale(g, lam))), add(gelfand_image(f), scale(gelfand_image(g), lam)));
    r.multiplicative = r.multiplicative && same(gelfand_image(multiply(f, g)), multiply(gelfand_image(f), gelfand_image(g)));
    r.involutive = r.involutive && same(gelfand_image(involution(g)), involution(gelfand_image(g)));
  }
  r.involutive = r.involutive && same(gelfand_image(involution(f)), involution(gelfand_image(f)));
  return r;
}

inline void to_json(nlohmann::json& j, const MeasureFamily& fam) { j = {{"C", fam.bound()}, {"members", fam.members()}}; }

inline void to_json(nlohmann::json& j, const TransformReport& r) {
  j = {{"embedding_norm", r.embedding_norm},
       {"p_norm", r.p_norm},
       {"isometry_gap", r.isometry_gap},
       {"extremal_included", r.extremal_included},
       {"isometric", r.isometric},
       {"linear", r.linear},
       {"injective", r.injective},
       {"multiplicative", r.multiplicative},
       {"involutive", r.involutive}};
  j["injectivity_witness"] = r.injectivity_witness ? nlohmann::json(*r.injectivity_witness) : nlohmann::json(nullptr);
}

}  // namespace lpcq
