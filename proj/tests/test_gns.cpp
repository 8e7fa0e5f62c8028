#include <gtest/gtest.h>

#include <cmath>

#include "lpcq/corpus.hpp"
#include "lpcq/gns.hpp"
#include "lpcq/random.hpp"
#include "lpcq/sampling.hpp"
#include "lpcq/seminorms.hpp"
#include "symbolic_oracle.hpp"

using namespace lpcq;
using R = Rational;

namespace {

Exponent E(std::int64_t n, std::int64_t d = 1) { return Exponent(R(n, d)); }

// |f| far out on the weighted sides, read from the raw terms
bool bounded_where_weighted(const SymbolicFunction& f, bool near_w, bool tail_w) {
  auto n = oracle::side(f, Support::NearZero), t = oracle::side(f, Support::Tail);
  bool ok = true;
  if (near_w) ok = ok && std::abs(n(std::ldexp(1.0, -400))) < 1e6;
  if (tail_w && f.domain() == Domain::HalfLine) ok = ok && std::abs(t(std::ldexp(1.0, 400))) < 1e6;
  return ok;
}

}  // namespace

TEST(Model, KernelAndHilbertWeights) {
  DiscreteSpace prob({0.25, 0.75});
  auto m = GnsModel::build(FormWeight::make(DiscreteFunction::unit(prob), E(2)));
  EXPECT_TRUE(m.kernel().empty());
  EXPECT_EQ(m.hilbert_weights(), (std::vector<double>{0.25, 0.75}));

  DiscreteSpace s({1.0, 1.0});
  auto k = GnsModel::build(FormWeight::make(DiscreteFunction(s, {1.0, 0.0}), E(2)));
  EXPECT_EQ(k.kernel(), std::vector<std::size_t>{1});
  EXPECT_EQ(k.dimension(), 1u);

  DiscreteSpace four({1.0, 2.0, 1.0});
  auto n = GnsModel::build(normalized_weight(four, E(4)));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(n.hilbert_weights()[i], four.weight(i) / 2, 1e-15);
}

TEST(Represent, Examples) {
  DiscreteSpace s({1.0, 1.0});
  auto id = represent(GnsModel::build(FormWeight::make(DiscreteFunction::unit(s), E(2))), DiscreteFunction::unit(s));
  EXPECT_EQ(id.op_norm, 1.0);
  auto m = GnsModel::build(FormWeight::make(DiscreteFunction(s, {0.0, 1.0}), E(2)));
  auto op = represent(m, DiscreteFunction(s, {5.0, 2.0}));
  EXPECT_EQ(op.op_norm, 2.0);
  EXPECT_EQ(op.diagonal[0], Complex(0.0));
  // a function living on the kernel acts as zero
  auto z = represent(m, DiscreteFunction(s, {7.0, 0.0}));
  EXPECT_EQ(z.op_norm, 0.0);
}

TEST(Represent, InnerProductIdentityByDirectSummation) {
  Rng rng = make_rng(31);
  for (int k = 0; k < 50; ++k) {
    auto space = random_space(rng, 1, 8);
    auto w = FormWeight::make(detail::random_ball_weight(space, E(4), rng), E(4));
    auto m = GnsModel::build(w);
    auto f = random_complex_function(space, rng), phi = random_complex_function(space, rng),
         psi = random_complex_function(space, rng);
    auto op = represent(m, f);
    Complex lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
      lhs += op.diagonal[i] * phi[i] * std::conj(psi[i]) * w.discrete()[i].real() * space.weight(i);
      rhs += f[i] * phi[i] * std::conj(psi[i]) * w.discrete()[i].real() * space.weight(i);
    }
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
    EXPECT_LE(std::abs(m.inner(apply_operator(op, m.lambda(phi)), m.lambda(psi)) - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
    auto xi = m.lambda(phi), eta = m.lambda(psi);
    double cs = std::abs(m.inner(xi, eta)), bound = std::sqrt(m.inner(xi, xi).real() * m.inner(eta, eta).real());
    EXPECT_LE(cs, bound * (1 + 1e-12));
  }
}

TEST(Represent, AxiomsReport) {
  Rng rng = make_rng(32);
  for (int k = 0; k < 10; ++k) {
    auto space = random_space(rng, 2, 8);
    auto m = GnsModel::build(FormWeight::make(detail::random_ball_weight(space, E(3), rng), E(3)));
    auto rep = representation_axioms_check(m, static_cast<std::uint64_t>(k));
    EXPECT_TRUE(rep.passed()) << nlohmann::json(rep).dump();
  }
}

TEST(Domain, DiscreteRatioIsSupOnSupport) {
  Rng rng = make_rng(33);
  for (int k = 0; k < 50; ++k) {
    auto space = random_space(rng, 1, 8);
    auto w = FormWeight::make(detail::random_ball_weight(space, E(4), rng), E(4));
    auto m = GnsModel::build(w);
    auto f = random_complex_function(space, rng);
    double sup = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i)
      if (w.discrete()[i].real() > 0.0) sup = std::max(sup, std::norm(f[i]));
    auto d = domain_check(m, f);
    EXPECT_TRUE(d.in_domain);
    EXPECT_NEAR(d.ratio_sup, sup, 1e-12 * std::max(1.0, sup));
    EXPECT_NEAR(d.linf_mu_w_sq, sup, 1e-12 * std::max(1.0, sup));
  }
  DiscreteSpace s({1.0, 1.0});
  auto u = GnsModel::build(FormWeight::make(DiscreteFunction::unit(s), E(2)));
  EXPECT_NEAR(domain_check(u, DiscreteFunction::unit(s)).ratio_sup, 1.0, 1e-15);
}

TEST(Domain, SymbolicExample) {
  auto w = FormWeight::candidate(SymbolicFunction::power(Domain::UnitInterval, R(0), Support::NearZero, R(1, 4)), E(4));
  // x^{-1/3} fails both conditions at p = 4; x^{-1/5} is in L^4 but unbounded
  auto c = domain_check(w, SymbolicFunction::power(Domain::UnitInterval, R(-1, 3)));
  EXPECT_FALSE(c.in_lp);
  EXPECT_FALSE(c.in_domain);
  EXPECT_FALSE(oracle::in_lq(SymbolicFunction::power(Domain::UnitInterval, R(-1, 3)), 4.0));
  auto d = domain_check(w, SymbolicFunction::power(Domain::UnitInterval, R(-1, 5)));
  EXPECT_TRUE(d.in_lp);
  EXPECT_FALSE(d.bounded_on_support);
  EXPECT_FALSE(d.in_domain);
  EXPECT_TRUE(std::isinf(d.ratio_sup));
}

TEST(Domain, SymbolicCorpusMatchesCriterion) {
  const auto p = E(4);
  struct W {
    Domain d;
    bool near, tail;
  };
  for (auto [d, near, tail] : {W{Domain::UnitInterval, true, false}, W{Domain::HalfLine, true, false},
                               W{Domain::HalfLine, false, true}, W{Domain::HalfLine, true, true}}) {
    std::vector<PowerTerm> terms;
    if (near) terms.push_back({R(1, 4), R(0), Support::NearZero});
    if (tail) terms.push_back({R(1, 4), R(-2), Support::Tail});
    auto w = FormWeight::candidate(SymbolicFunction(d, terms), p);
    for (const auto& f : symbolic_corpus(d)) {
      if (oracle::borderline(f, 4.0)) continue;
      bool expected = bounded_where_weighted(f, near, tail) && oracle::in_lq(f, 4.0);
      EXPECT_EQ(domain_check(w, f).in_domain, expected) << f.to_string();
    }
  }
}
