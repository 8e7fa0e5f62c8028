#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpcq/corpus.hpp"
#include "lpcq/exponents.hpp"
#include "lpcq/forms.hpp"
#include "lpcq/gelfand.hpp"
#include "lpcq/gns.hpp"
#include "lpcq/multipliers.hpp"
#include "lpcq/partialmul.hpp"
#include "lpcq/random.hpp"
#include "lpcq/report.hpp"
#include "lpcq/sampling.hpp"
#include "lpcq/seminorms.hpp"
#include "lpcq/spaces.hpp"

namespace lpcq {

struct SuiteEntry {
  std::string property;
  std::string reference;  // the statement being exercised
  Report report;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  int samples = 24;
  double tol = 1e-6;
};

/// Every invariant of the library on seeded samples and the bundled corpora.
inline std::vector<SuiteEntry> run_suite(const SuiteOptions& opt) {
  std::vector<SuiteEntry> out;
  const std::vector<Exponent> ps{Exponent(2), Exponent(Rational(5, 2)), Exponent(3), Exponent(4)};
  Rng rng = make_rng(opt.seed, 0x5017e);

  {
    Report r{"exponents"};
    auto& conj = r.add("conjugate_involutive", 0.0);
    auto& gam = r.add("gamma_exponent_is_conjugate_of_half", 0.0);
    auto& comm = r.add("holder_combine_commutative", 0.0);
    for (int n = 1; n <= 12; ++n)
      for (int d = 1; d <= n; ++d) {
        Exponent p(Rational(n, d));
        conj.flag(conjugate(conjugate(p)) == p && p.reciprocal() + conjugate(p).reciprocal() == Rational(1));
        if (p > Exponent(2)) gam.flag(gamma_exponent(p) == conjugate(half(p)));
        Exponent q(Rational(n + 1, d));
        if (p.reciprocal() + q.reciprocal() <= Rational(1)) comm.flag(holder_combine(p, q) == holder_combine(q, p));
      }
    out.push_back({"exponent_arithmetic", "conjugate and gamma exponents", r});
  }
  {
    Report r{"holder"};
    auto& h = r.add("holder_inequality", 1e-12);
    for (int s = 0; s < opt.samples; ++s) {
      auto space = random_space(rng, 1, 8);
      auto f = random_complex_function(space, rng);
      auto g = random_complex_function(space, rng);
      Exponent p = ps[static_cast<std::size_t>(s) % ps.size()];
      Exponent q = conjugate(p);
      h.inequality(norm(multiply(f, g), Exponent(1)), norm(f, p) * norm(g, q) * (1 + 1e-14));
    }
    out.push_back({"holder_inequality", "norm conditions of the completion", r});
  }
  {
    auto space = random_space(rng, 2, 8);
    for (const auto& p : {Exponent(1), Exponent(2), Exponent(3)})
      out.push_back({"cq_axioms_p" + p.to_string(), "C*-norm recovered from multiplication operators",
                     cq_axioms_check(space, p, opt.seed, opt.samples)});
  }
  {
    Report r{"operator_norm"};
    auto& c = r.add("candidate_max_equals_q_norm", opt.tol);
    for (int s = 0; s < opt.samples; ++s) {
      auto space = random_space(rng, 1, 8);
      auto w = random_complex_function(space, rng);
      Exponent p = ps[static_cast<std::size_t>(s) % ps.size()];
      Exponent r2 = Exponent(2) <= p ? Exponent(2) : p;
      auto res = operator_norm(w, p, r2, opt.seed + static_cast<std::uint64_t>(s), 8);
      c.relative_identity(res.value, res.multiplier_norm, {{"sample", s}});
    }
    out.push_back({"operator_norm_lemma", "||T_w||_{p,r} = ||w||_q", r});
  }
  {
    Report r{"multiplier_theorem"};
    auto& c = r.add("A_iff_B", 0.0);
    for (auto d : {Domain::UnitInterval, Domain::HalfLine})
      for (const auto& g : symbolic_corpus(d))
        for (const auto& [p, q] : {std::pair{Exponent(4), Exponent(2)}, std::pair{Exponent(3), Exponent(3)},
                                   std::pair{Exponent(6), Exponent(Rational(3, 2))}}) {
          auto rep = multiplier_theorem_check(g, p, q);
          c.flag(rep.consistent(), {{"g", g.to_string()}, {"p", p.to_string()}, {"r", q.to_string()}});
        }
    out.push_back({"multiplier_theorem", "fg in L^r for all f in L^p iff g in L^q", r});
  }
  {
    Report r{"forms"};
    auto& semi = r.add("extremal_weight_attains_norm", 1e-9);
    auto& diag = r.add("diagonal_bound", 1e-12);
    for (int s = 0; s < opt.samples; ++s) {
      auto space = random_space(rng, 1, 8);
      auto f = random_complex_function(space, rng);
      Exponent p = ps[static_cast<std::size_t>(s) % ps.size()];
      auto w = extremal_weight(f, p);
      double n = norm(f, p);
      semi.relative_identity(evaluate(w, f, f).value.real(), n * n, {{"sample", s}});
      auto rand_w = FormWeight::make(detail::random_ball_weight(space, p, rng), p);
      auto g = random_complex_function(space, rng);
      double ng = norm(g, p);
      diag.inequality(evaluate(rand_w, g, g).value.real() / (ng * ng), 1.0, {{"sample", s}});
      auto ax = check_form_axioms(rand_w, opt.seed + static_cast<std::uint64_t>(s), 8);
      for (const auto& chk : ax.checks) r.add("axiom_" + chk.name, chk.tolerance).record(chk.worst_slack, chk.witness);
    }
    out.push_back({"form_set", "weight forms are positive, invariant and bounded; *-semisimplicity", r});
  }
  {
    Report r{"uniqueness"};
    auto& c = r.add("normalized_forces_constant", 0.0);
    for (int s = 0; s < opt.samples; ++s) {
      auto space = random_space(rng, 1, 6);
      Exponent p = ps[static_cast<std::size_t>(s) % ps.size()];
      auto rep = uniqueness_check(normalized_weight(space, p), 1e-12);
      c.flag(rep.normalized && rep.passed, {{"sample", s}});
    }
    out.push_back({"normalized_form_uniqueness", "one and only one form with Omega(u,u) = ||u||_p^2", r});
  }
  {
    Report r{"seminorms"};
    auto& alpha = r.add("alpha_optimize_equals_closed", opt.tol);
    auto& beta = r.add("beta_below_half_norm", 1e-9);
    auto& beta_pos = r.add("beta_equals_half_norm_for_positive", opt.tol);
    auto& gamma = r.add("gamma_equals_sup_norm", 1e-9);
    for (int s = 0; s < opt.samples; ++s) {
      auto space = random_space(rng, 1, 8);
      Exponent p = ps[static_cast<std::size_t>(s) % ps.size()];
      auto f = random_real_function(space, rng);
      auto seed = opt.seed + static_cast<std::uint64_t>(s);
      alpha.relative_identity(alpha_norm(f, p, NormMode::Optimize, seed).value, norm(f, p), {{"sample", s}});
      beta.inequality(beta_norm(f, p, NormMode::Optimize, seed).value, norm(f, half(p)), {{"sample", s}});
      auto fp = random_nonnegative_function(space, rng);
      beta_pos.relative_identity(beta_norm(fp, p, NormMode::Optimize, seed).value, norm(fp, half(p)), {{"sample", s}});
      gamma.relative_identity(gamma_norm(f, p, NormMode::Optimize, seed).value, norm(f, Exponent::infinity()),
                              {{"sample", s}});
    }
    auto& member = r.add("gamma_membership_is_boundedness", 0.0);
    for (auto d : {Domain::UnitInterval, Domain::HalfLine})
      for (const auto& f : symbolic_corpus(d))
        member.flag(gamma_membership(f, Exponent(2)) == std::isfinite(norm(f, Exponent::infinity())),
                    {{"f", f.to_string()}});
    out.push_back({"alpha_beta_gamma", "||f||_alpha = ||f||_p, ||f||_beta <= ||f||_{p/2}, ||f||_gamma = ||f||_inf", r});
  }
  {
    for (int s = 0; s < 3; ++s) {
      auto space = random_space(rng, 2, 8);
      Exponent p = ps[static_cast<std::size_t>(s) % ps.size()];
      auto psi = detail::random_ball_weight(space, p, rng);
      psi[0] = 0.0;  // exercise the kernel
      auto model = GnsModel::build(FormWeight::make(psi, p));
      out.push_back({"gns_representation_" + std::to_string(s), "pi_Omega is a *-representation",
                     representation_axioms_check(model, opt.seed + static_cast<std::uint64_t>(s), opt.samples)});
    }
  }
  {
    Report r{"gelfand"};
    auto& iso = r.add("isometry", opt.tol);
    auto& props = r.add("star_homomorphism", 0.0);
    for (int s = 0; s < opt.samples; ++s) {
      auto space = random_space(rng, 1, 8);
      Exponent p = ps[static_cast<std::size_t>(s) % ps.size()];
      auto f = random_complex_function(space, rng);
      std::vector<FormWeight> ws{extremal_weight(f, p), normalized_weight(space, p)};
      auto t = transform(f, ws, opt.seed + static_cast<std::uint64_t>(s), 4, opt.tol);
      iso.relative_identity(t.embedding_norm, t.p_norm, {{"sample", s}});
      props.flag(t.linear && t.injective && t.multiplicative && t.involutive && t.extremal_included, {{"sample", s}});
      if (s == 0) {
        auto fam = measures_from_forms(ws);
        auto ax = family_axioms_check(fam, p, opt.seed, opt.samples);
        for (const auto& chk : ax.checks) r.add("family_" + chk.name, chk.tolerance).record(chk.worst_slack, chk.witness);
      }
    }
    out.push_back({"gelfand_embedding", "Phi is an isometric *-isomorphism", r});
  }
  {
    Report r{"gamma_sets"};
    auto& inc = r.add("gamma2_subset_gamma1", 0.0);
    auto& weak = r.add("gamma_w_equals_gamma1", 0.0);
    auto& strong = r.add("gamma_s_equals_gamma1", 0.0);
    auto& ident = r.add("weak_identity", 1e-9);
    auto& approx = r.add("approximation_iff_gamma1", 0.0);
    for (auto d : {Domain::UnitInterval, Domain::HalfLine}) {
      auto corpus = symbolic_corpus(d);
      const Exponent p(2);
      for (std::size_t i = 0; i < corpus.size(); i += 3)
        for (std::size_t j = 0; j < corpus.size(); j += 2) {
          const auto& f = corpus[i];
          const auto& g = corpus[j];
          if (!in_lp(f, p) || !in_lp(g, p)) continue;
          auto v = classify_pair(f, g, p, opt.seed, 2);
          nlohmann::json at{{"f", f.to_string()}, {"g", g.to_string()}};
          inc.flag(!v.in_gamma2 || v.in_gamma1, at);
          weak.flag(v.in_gamma_w == v.in_gamma1, at);
          strong.flag(v.in_gamma_s == v.in_gamma1, at);
          ident.inequality(v.weak_identity_residual, 0.0, at);
          approx.flag(approx_sequence_check(f, g, p).convergent == v.in_gamma1, at);
        }
    }
    out.push_back({"gamma_set_coherence", "Gamma_2 in Gamma_1 = Gamma_w = Gamma_s; approximating sequences", r});
  }
  {
    auto corpus = symbolic_corpus(Domain::UnitInterval);
    out.push_back({"partial_algebra_gamma1", "(L^p, Gamma_1) is a partial *-algebra",
                   partial_algebra_axioms_check(GammaKind::Gamma1, corpus, Exponent(2))});
    out.push_back({"partial_algebra_gamma2_finite_measure", "(L^p, Gamma_2) is a partial *-algebra when mu(X) < inf",
                   partial_algebra_axioms_check(GammaKind::Gamma2, corpus, Exponent(2))});
  }
  {
    Report r{"distributivity"};
    auto fine = exponent_grid(Rational(-2), Rational(2), Rational(1, 8));
    auto half_line = distributivity_witness_search(Domain::HalfLine, Exponent(2), fine);
    r.add("half_line_witness_found", 0.0).flag(half_line.witness.has_value(), {{"grid_step", "1/8"}});
    auto unit = distributivity_witness_search(Domain::UnitInterval, Exponent(2), fine);
    r.add("unit_interval_exhausted", 0.0).flag(!unit.witness.has_value(), {{"grid_step", "1/8"}});
    out.push_back({"gamma2_distributivity", "distributivity may fail when mu(X) = inf", r});
  }
  return out;
}

inline nlohmann::json suite_to_json(const std::vector<SuiteEntry>& entries) {
  nlohmann::json rows = nlohmann::json::array();
  bool all = true;
  for (const auto& e : entries) {
    all = all && e.report.passed();
    rows.push_back({{"property", e.property}, {"reference", e.reference}, {"passed", e.report.passed()}, {"report", e.report}});
  }
  return {{"passed", all}, {"entries", rows}};
}

}  // namespace lpcq
