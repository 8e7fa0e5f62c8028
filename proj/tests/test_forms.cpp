#include <gtest/gtest.h>

#include <cmath>

#include "lpcq/corpus.hpp"
#include "lpcq/forms.hpp"
#include "lpcq/random.hpp"
#include "lpcq/sampling.hpp"
#include "lpcq/seminorms.hpp"
#include "oracles.hpp"

using namespace lpcq;
using R = Rational;

namespace {

Exponent E(std::int64_t n, std::int64_t d = 1) { return Exponent(R(n, d)); }

const Check& check_named(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  throw std::runtime_error("no check " + name);
}

// sum f conj(g) psi mu, written out
Complex direct_form(const std::vector<Complex>& f, const std::vector<Complex>& g, const std::vector<double>& psi,
                    const std::vector<double>& mu) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]) * psi[i] * mu[i];
  return s;
}

}  // namespace

TEST(Evaluate, Examples) {
  DiscreteSpace s({1.0, 1.0});
  auto zero = FormWeight::make(DiscreteFunction(s, {0.0, 0.0}), E(4));
  Rng rng = make_rng(1);
  for (int i = 0; i < 10; ++i) {
    auto f = random_complex_function(s, rng), g = random_complex_function(s, rng);
    EXPECT_EQ(evaluate(zero, f, g).value, Complex(0.0));
  }
  DiscreteSpace prob({0.25, 0.75});
  auto u = DiscreteFunction::unit(prob);
  EXPECT_NEAR(evaluate(FormWeight::make(u, E(2)), u, u).value.real(), 1.0, 1e-15);

  DiscreteFunction f(s, {1.0, 2.0});
  auto w = FormWeight::make(DiscreteFunction(s, {0.5, 0.5}), E(4));
  EXPECT_NEAR(evaluate(w, f, f).value.real(), 2.5, 1e-15);
}

TEST(Evaluate, MatchesDirectSummation) {
  Rng rng = make_rng(2);
  for (int k = 0; k < 50; ++k) {
    auto space = random_space(rng, 1, 8);
    auto f = random_complex_function(space, rng), g = random_complex_function(space, rng);
    auto psi = random_nonnegative_function(space, rng);
    std::vector<Complex> fv(f.values().begin(), f.values().end()), gv(g.values().begin(), g.values().end());
    std::vector<double> pv, mu(space.weights().begin(), space.weights().end());
    for (auto z : psi.values()) pv.push_back(z.real());
    auto w = FormWeight::candidate(psi, E(3));
    auto ref = direct_form(fv, gv, pv, mu);
    EXPECT_NEAR(std::abs(evaluate(w, f, g).value - ref), 0.0, 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Weights, BallIsEnforced) {
  DiscreteSpace s({1.0, 1.0});
  EXPECT_THROW(FormWeight::make(DiscreteFunction(s, {1.0, 1.0}), E(4)), std::domain_error);  // ||psi||_2 = sqrt 2
  EXPECT_THROW(FormWeight::make(DiscreteFunction(s, {0.5, 0.5}), E(3, 2)), std::domain_error);
  EXPECT_THROW(FormWeight::candidate(DiscreteFunction(s, {-0.5, 0.5}), E(4)), std::domain_error);
  EXPECT_NO_THROW(FormWeight::make(DiscreteFunction(s, {1.0, 1.0}), E(2)));
}

TEST(Axioms, ValidWeightsPass) {
  Rng rng = make_rng(3);
  for (int k = 0; k < 30; ++k) {
    auto space = random_space(rng, 1, 8);
    Exponent p = std::vector<Exponent>{E(2), E(5, 2), E(3), E(4), E(6)}[static_cast<std::size_t>(k) % 5];
    auto w = FormWeight::make(detail::random_ball_weight(space, p, rng), p);
    auto rep = check_form_axioms(w, static_cast<std::uint64_t>(k));
    EXPECT_TRUE(rep.passed()) << nlohmann::json(rep).dump();
  }
}

TEST(Axioms, BallViolationIsCaughtAtHolderPair) {
  // ||psi||_2 = 2 at p = 4
  DiscreteSpace s({1.0, 1.0});
  const double c = std::sqrt(2.0);
  auto w = FormWeight::candidate(DiscreteFunction(s, {c, c}), E(4));
  EXPECT_NEAR(w.ball_norm(), 2.0, 1e-12);
  auto rep = check_form_axioms(w, 1, 4);
  const auto& b = check_named(rep, "bounded_by_p_norm");
  EXPECT_FALSE(b.passed());
  EXPECT_EQ(b.witness["sample"], "holder_extremal");
  // the witness f = g = psi^{1/(p-2)} scaled: Omega(f,f)/||f||_4^2 = ||psi||_2
  DiscreteFunction f(s, {std::sqrt(c), std::sqrt(c)});
  double ratio = evaluate(w, f, f).value.real() / std::pow(norm(f, E(4)), 2);
  EXPECT_NEAR(ratio, 2.0, 1e-12);
  EXPECT_NEAR(b.worst_slack, -1.0, 1e-12);
  EXPECT_TRUE(check_named(rep, "positivity").passed());
}

TEST(Axioms, ModuleIdentityAndConjugationSymmetry) {
  Rng rng = make_rng(4);
  for (int k = 0; k < 40; ++k) {
    auto space = random_space(rng, 1, 8);
    auto w = FormWeight::make(detail::random_ball_weight(space, E(3), rng), E(3));
    auto f = random_complex_function(space, rng), g = random_complex_function(space, rng);
    auto phi = random_bounded_function(space, rng);
    auto a = evaluate(w, multiply(f, phi), g).value;
    auto b = evaluate(w, f, multiply(involution(phi), g)).value;
    EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a)));
    auto c = evaluate(w, involution(g), involution(f)).value;
    auto d = evaluate(w, f, g).value;
    EXPECT_LE(std::abs(c - d), 1e-12 * std::max(1.0, std::abs(d)));
    EXPECT_GE(evaluate(w, f, f).value.real(), 0.0);
    double nf = norm(f, E(3));
    EXPECT_LE(evaluate(w, f, f).value.real(), nf * nf * (1 + 1e-12));
  }
}

TEST(Extremal, Examples) {
  DiscreteSpace prob({0.5, 0.5});
  auto u = DiscreteFunction::unit(prob);
  auto wu = extremal_weight(u, E(4)).discrete();
  EXPECT_NEAR(wu[0].real(), 1.0, 1e-15);
  EXPECT_NEAR(wu[1].real(), 1.0, 1e-15);

  DiscreteSpace s({1.0, 1.0});
  DiscreteFunction z(s, {0.0, 3.0});
  auto w2 = extremal_weight(z, E(2)).discrete();
  EXPECT_EQ(w2[0], Complex(1.0));  // |f|^0 = 1 at zeros too
  EXPECT_NEAR(evaluate(extremal_weight(z, E(2)), z, z).value.real(), 9.0, 1e-12);

  DiscreteFunction f(s, {1.0, 2.0});
  auto w = extremal_weight(f, E(4));
  const double k = 1.0 / std::sqrt(17.0);
  EXPECT_NEAR(w.discrete()[0].real(), k, 1e-15);
  EXPECT_NEAR(w.discrete()[1].real(), 4 * k, 1e-15);
  EXPECT_NEAR(evaluate(w, f, f).value.real(), std::sqrt(17.0), 1e-12);
  EXPECT_NEAR(w.ball_norm(), 1.0, 1e-12);
}

TEST(Extremal, AttainsNormSquared) {
  Rng rng = make_rng(5);
  for (int k = 0; k < 200; ++k) {
    auto space = random_space(rng, 1, 8);
    auto f = random_complex_function(space, rng);
    Exponent p = std::vector<Exponent>{E(2), E(5, 2), E(3), E(4), E(7)}[static_cast<std::size_t>(k) % 5];
    double n = norm(f, p);
    EXPECT_NEAR(evaluate(extremal_weight(f, p), f, f).value.real(), n * n, 1e-9 * n * n);
  }
  // symbolic at p = 2
  for (const auto& f : symbolic_corpus(Domain::UnitInterval)) {
    if (!in_lp(f, E(2))) continue;
    double n = norm(f, E(2));
    EXPECT_NEAR(evaluate(extremal_weight(f, E(2)), f, f).value.real(), n * n, 1e-9 * n * n) << f.to_string();
  }
}

TEST(Extremal, PhiRescalingStaysInBall) {
  Rng rng = make_rng(6);
  for (int k = 0; k < 50; ++k) {
    auto space = random_space(rng, 1, 8);
    const Exponent p(4);
    auto psi = detail::random_ball_weight(space, p, rng);
    auto phi = random_bounded_function(space, rng);
    double sup = norm(phi, Exponent::infinity());
    if (sup == 0.0) continue;
    std::vector<Complex> v(space.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = psi[i].real() * std::norm(phi[i]) / (sup * sup);
    EXPECT_TRUE(FormWeight::candidate(DiscreteFunction(space, v), p).in_ball());
  }
}

TEST(Normalized, Examples) {
  auto prob = DiscreteSpace::uniform(3);
  auto w1 = normalized_weight(prob, E(4)).discrete();
  for (auto z : w1.values()) EXPECT_NEAR(z.real(), 1.0, 1e-15);

  DiscreteSpace s({1.0, 3.0});
  auto w2 = normalized_weight(s, E(2));
  for (auto z : w2.discrete().values()) EXPECT_EQ(z, Complex(1.0));
  auto u = DiscreteFunction::unit(s);
  EXPECT_NEAR(evaluate(w2, u, u).value.real(), 4.0, 1e-15);

  auto w4 = normalized_weight(s, E(4));
  for (auto z : w4.discrete().values()) EXPECT_NEAR(z.real(), 0.5, 1e-15);
  EXPECT_NEAR(evaluate(w4, u, u).value.real(), 2.0, 1e-15);
}

TEST(Uniqueness, NormalizedPassesWithZeroDeviation) {
  DiscreteSpace s({1.0, 2.0, 0.5});
  for (const auto& p : {E(2), E(3), E(4)}) {
    auto rep = uniqueness_check(normalized_weight(s, p), 1e-12);
    EXPECT_TRUE(rep.normalized);
    EXPECT_TRUE(rep.passed);
    EXPECT_LE(rep.max_deviation, 1e-15);
  }
}

TEST(Uniqueness, ExhaustiveAtPTwo) {
  // psi on a grid of [0,1]^3 with sum psi mu = mu(X) forces psi = 1
  DiscreteSpace s({1.0, 2.0, 1.0});
  const double M = s.total_mass();
  int normalized = 0;
  for (int a = 0; a <= 20; ++a)
    for (int b = 0; b <= 20; ++b)
      for (int c = 0; c <= 20; ++c) {
        std::vector<double> psi{a / 20.0, b / 20.0, c / 20.0};
        double v = psi[0] * 1.0 + psi[1] * 2.0 + psi[2] * 1.0;
        if (std::abs(v - M) > 1e-12) continue;
        ++normalized;
        EXPECT_EQ(a + b + c, 60);
        auto rep = uniqueness_check(FormWeight::make(DiscreteFunction(s, psi), E(2)), 1e-12);
        EXPECT_TRUE(rep.normalized);
        EXPECT_LE(rep.max_deviation, 1e-12);
      }
  EXPECT_EQ(normalized, 1);
}

TEST(Uniqueness, PerturbationOpensGap) {
  DiscreteSpace s({1.0, 1.0, 1.0, 1.0});
  const Exponent p(4);
  auto psi = normalized_weight(s, p).discrete();
  std::vector<Complex> v(psi.values().begin(), psi.values().end());
  v[0] *= 1.5;
  auto raised = FormWeight::candidate(DiscreteFunction(s, v), p);
  double n = raised.ball_norm();
  for (auto& z : v) z /= n;
  auto w = FormWeight::make(DiscreteFunction(s, v), p);
  auto rep = uniqueness_check(w, 1e-12);
  EXPECT_GT(rep.gap, 1e-3);
  EXPECT_FALSE(rep.normalized);
  EXPECT_LT(rep.value, rep.target);
}

TEST(Divergence, ExponentRange) {
  auto r1 = divergence_exponent_range(E(1));
  EXPECT_TRUE(r1.contains(R(-1, 2)));
  EXPECT_FALSE(r1.contains(R(-1)));
  auto r32 = divergence_exponent_range(E(3, 2));
  EXPECT_TRUE(r32.contains(R(-3, 5)));
  EXPECT_FALSE(r32.contains(R(-2, 3)));
  EXPECT_TRUE(divergence_exponent_range(E(2)).is_empty());
  auto unit = FormWeight::candidate(SymbolicFunction::unit(Domain::UnitInterval), E(2));
  EXPECT_THROW(divergence_witness(E(2), unit, 1.0), std::domain_error);
}

TEST(Divergence, SquareOfHalfPowerDivergesByQuadrature) {
  // a = -1/2: the truncated integral of x^{-1} grows by 20 ln 2 per 20 halvings
  auto F = [](double x) { return 1.0 / x; };
  EXPECT_FALSE(oracle::integral_converges(F, true));
}

TEST(Divergence, WitnessesBelowTwo) {
  for (const auto& p : {E(1), E(3, 2), E(9, 5)}) {
    auto w = FormWeight::candidate(SymbolicFunction::unit(Domain::UnitInterval), p);
    auto wit = divergence_witness(p, w, 1.0);
    EXPECT_TRUE(wit.in_lp) << p;
    EXPECT_FALSE(wit.in_l2) << p;
    EXPECT_TRUE(wit.truncated.exceeded) << p;
    EXPECT_LE(wit.truncated.at_halving, 40);
    EXPECT_TRUE(wit.monotone);
    EXPECT_TRUE(divergence_exponent_range(p).contains(wit.exponent));
    // growth per halving of c^2 x^{2a}: 2^{-(2a+1)}
    EXPECT_NEAR(wit.growth_rate, -boost::rational_cast<double>(2 * wit.exponent + 1), 1e-6);
    // independent: c^2 * integral of x^{2a} from 2^-k to 1 in closed form
    const double c = boost::rational_cast<double>(wit.coeff);
    const double e = boost::rational_cast<double>(2 * wit.exponent);
    const double at = c * c * (1.0 - std::pow(2.0, -wit.truncated.at_halving * (e + 1))) / (e + 1);
    EXPECT_GT(at, 1e6);
    // the symbolic form reports divergence
    EXPECT_TRUE(evaluate(w, wit.f, wit.f).divergent);
  }
}
