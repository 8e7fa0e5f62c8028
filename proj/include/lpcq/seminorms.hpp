#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpcq/exponents.hpp"
#include "lpcq/forms.hpp"
#include "lpcq/random.hpp"
#include "lpcq/report.hpp"
#include "lpcq/spaces.hpp"

namespace lpcq {

enum class NormMode { Closed, Optimize };

inline const char* to_string(NormMode m) { return m == NormMode::Closed ? "closed" : "optimize"; }

inline NormMode parse_norm_mode(const std::string& s) {
  if (s == "closed") return NormMode::Closed;
  if (s == "optimize") return NormMode::Optimize;
  throw std::invalid_argument("unknown mode '" + s + "' (expected closed|optimize)");
}

struct NormResult {
  double value = 0.0;
  NormMode mode = NormMode::Closed;
  nlohmann::json attained_at;                           // weight or phi witness
  double gap = std::numeric_limits<double>::quiet_NaN();  // closed - optimize, when both are known
};

namespace detail {

inline void require_p_at_least_two(const Exponent& p, const char* what) {
  if (p.reciprocal() > Rational(1, 2)) throw std::domain_error(std::string(what) + " needs p >= 2; got p = " + p.to_string());
}

inline std::vector<double> real_parts(const DiscreteFunction& f) {
  std::vector<double> v;
  v.reserve(f.size());
  for (auto z : f.values()) v.push_back(z.real());
  return v;
}

/// Random point on the boundary of the ball B^p_+ (norm p/(p-2) equal to 1).
inline DiscreteFunction random_ball_weight(const DiscreteSpace& space, const Exponent& p, Rng& rng) {
  auto psi = random_nonnegative_function(space, rng);
  if (uniform01(rng) < 0.3) psi = multiply(psi, psi);  // some peaked samples
  double n = norm(psi, gamma_exponent(p));
  if (n == 0.0) return DiscreteFunction::unit(space);
  return scale(psi, 1.0 / n);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// alpha: sqrt of sup Omega(f,f) over the form set

struct AlphaOptions {
  int random_weights = 64;
  bool include_extremal = true;
};

inline NormResult alpha_norm(const DiscreteFunction& f, const Exponent& p, NormMode mode, std::uint64_t seed,
                             const AlphaOptions& opt = {}) {
  detail::require_p_at_least_two(p, "alpha norm");
  const double closed = norm(f, p);
  NormResult r;
  r.mode = mode;
  if (mode == NormMode::Closed) {
    r.value = closed;
    r.attained_at = {{"weight", "extremal"}};
    return r;
  }
  double best = 0.0;
  nlohmann::json where = {{"weight", "none"}};
  auto consider = [&](const FormWeight& w, const nlohmann::json& tag) {
    double v = evaluate(w, f, f).value.real();
    if (v > best) {
      best = v;
      where = tag;
    }
  };
  if (opt.include_extremal && !f.is_zero()) {
    consider(extremal_weight(f, p), {{"weight", "extremal"}});
  }
  Rng rng = make_rng(seed, 0xa1);
  for (int i = 0; i < opt.random_weights; ++i)
    consider(FormWeight::candidate(detail::random_ball_weight(f.space(), p, rng), p), {{"weight", "random"}, {"index", i}});
  r.value = std::sqrt(best);
  r.attained_at = where;
  r.gap = closed - r.value;
  return r;
}

inline NormResult alpha_norm(const SymbolicFunction& f, const Exponent& p, NormMode mode, std::uint64_t seed) {
  detail::require_p_at_least_two(p, "alpha norm");
  NormResult r;
  r.mode = mode;
  const double closed = norm(f, p);
  if (mode == NormMode::Closed) {
    r.value = closed;
    r.attained_at = {{"weight", "extremal"}};
    return r;
  }
  (void)seed;
  if (p != Exponent(2)) throw std::domain_error("symbolic alpha optimization is only available at p = 2");
  if (f.empty()) return r;
  auto v = evaluate(extremal_weight(f, p), f, f);
  r.value = v.divergent ? kInf : std::sqrt(v.value.real());
  r.attained_at = {{"weight", "extremal"}};
  r.gap = closed - r.value;
  return r;
}

// ---------------------------------------------------------------------------
// beta: sup |Omega(f phi, phi)| with ||phi||_inf <= 1

/// sup over psi in B^p_+ of |sum g psi mu| for real g: max(||g+||, ||g-||) in L^{p/2}.
inline double real_dual_sup(const std::vector<double>& g, const DiscreteSpace& space, const Exponent& p) {
  std::vector<Complex> pos(g.size()), neg(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    pos[i] = std::max(g[i], 0.0);
    neg[i] = std::max(-g[i], 0.0);
  }
  const Exponent h = half(p);
  return std::max(norm(DiscreteFunction(space, pos), h), norm(DiscreteFunction(space, neg), h));
}

/// Exhaustive search over h in {0,1}^n with the exact inner maximization over psi.
inline NormResult beta_vertex_search(const DiscreteFunction& f, const Exponent& p) {
  detail::require_p_at_least_two(p, "beta norm");
  if (!f.is_real()) throw std::domain_error("vertex search needs a real function");
  const std::size_t n = f.size();
  if (n > 24) throw std::domain_error("vertex search is exhaustive; too many atoms");
  const auto v = detail::real_parts(f);
  NormResult r;
  r.mode = NormMode::Optimize;
  std::vector<double> g(n);
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) g[i] = (mask >> i) & 1 ? v[i] : 0.0;
    double val = real_dual_sup(g, f.space(), p);
    if (val > r.value) {
      r.value = val;
      best_mask = mask;
    }
  }
  std::vector<int> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = static_cast<int>((best_mask >> i) & 1);
  r.attained_at = {{"h", h}};
  return r;
}

namespace detail {

/// psi in B^p_+ maximizing sum g psi mu for real g (the Hölder equality case).
inline std::vector<double> dual_maximizer(const std::vector<double>& g, const DiscreteSpace& space, const Exponent& p) {
  std::vector<double> psi(g.size(), 0.0);
  if (p == Exponent(2)) {
    for (std::size_t i = 0; i < g.size(); ++i) psi[i] = g[i] > 0.0 ? 1.0 : 0.0;
    return psi;
  }
  const double e = to_double(p.value() / 2 - 1);  // Hölder equality: psi^s proportional to g^{p/2}
  for (std::size_t i = 0; i < g.size(); ++i) psi[i] = g[i] > 0.0 ? std::pow(g[i], e) : 0.0;
  std::vector<Complex> z(psi.begin(), psi.end());
  double n = norm(DiscreteFunction(space, z), gamma_exponent(p));
  if (n > 0.0)
    for (auto& x : psi) x /= n;
  return psi;
}

}  // namespace detail

struct BetaOptions {
  int restarts = 64;
  int iterations = 400;
};

/// Projected-gradient ascent of |sum f h psi mu| over h in [0,1]^n and psi in
/// B^p_+ (64 seeded restarts), each run finished with exact block updates.
inline NormResult beta_gradient_search(const DiscreteFunction& f, const Exponent& p, std::uint64_t seed,
                                       const BetaOptions& opt = {}) {
  detail::require_p_at_least_two(p, "beta norm");
  const auto& space = f.space();
  const std::size_t n = f.size();
  const Exponent s = gamma_exponent(p);
  auto objective = [&](const std::vector<double>& h, const std::vector<double>& psi) {
    Complex S = 0.0;
    for (std::size_t i = 0; i < n; ++i) S += f[i] * h[i] * psi[i] * space.weight(i);
    return S;
  };
  auto project_psi = [&](std::vector<double>& psi) {
    for (auto& x : psi) x = std::max(x, 0.0);
    if (s.is_infinite()) {
      for (auto& x : psi) x = std::min(x, 1.0);
      return;
    }
    std::vector<Complex> z(psi.begin(), psi.end());
    double nrm = norm(DiscreteFunction(space, z), s);
    if (nrm > 1.0)
      for (auto& x : psi) x /= nrm;
  };

  NormResult best;
  best.mode = NormMode::Optimize;
  std::vector<double> best_h, best_psi;
  for (int restart = 0; restart < opt.restarts; ++restart) {
    Rng rng = make_rng(seed, 0xb0000 + static_cast<std::uint64_t>(restart));
    std::vector<double> h(n), psi(n);
    for (auto& x : h) x = uniform01(rng);
    for (auto& x : psi) x = uniform01(rng);
    project_psi(psi);
    double step = 0.5;
    double cur = std::abs(objective(h, psi));
    for (int it = 0; it < opt.iterations && step > 1e-14; ++it) {
      Complex S = objective(h, psi);
      Complex dir = std::abs(S) > 0.0 ? std::conj(S) / std::abs(S) : Complex(1.0);
      std::vector<double> gh(n), gp(n);
      for (std::size_t i = 0; i < n; ++i) {
        double base = (dir * f[i]).real() * space.weight(i);
        gh[i] = base * psi[i];
        gp[i] = base * h[i];
      }
      auto h2 = h;
      auto p2 = psi;
      for (std::size_t i = 0; i < n; ++i) {
        h2[i] = std::clamp(h[i] + step * gh[i], 0.0, 1.0);
        p2[i] = psi[i] + step * gp[i];
      }
      project_psi(p2);
      double next = std::abs(objective(h2, p2));
      if (next >= cur) {
        h = std::move(h2);
        psi = std::move(p2);
        cur = next;
        step *= 1.2;
      } else {
        step *= 0.5;
      }
    }
    // exact block updates: psi given the phase of S, then h given psi
    for (int round = 0; round < 8; ++round) {
      Complex S = objective(h, psi);
      Complex dir = std::abs(S) > 0.0 ? std::conj(S) / std::abs(S) : Complex(1.0);
      std::vector<double> g(n);
      for (std::size_t i = 0; i < n; ++i) g[i] = (dir * f[i]).real() * h[i];
      auto psi2 = detail::dual_maximizer(g, space, p);
      std::vector<double> h2(n);
      for (std::size_t i = 0; i < n; ++i) h2[i] = (dir * f[i]).real() * psi2[i] > 0.0 ? 1.0 : 0.0;
      double next = std::abs(objective(h2, psi2));
      if (next <= cur) break;
      h = std::move(h2);
      psi = std::move(psi2);
      cur = next;
    }
    if (cur > best.value) {
      best.value = cur;
      best_h = h;
      best_psi = psi;
      best.attained_at = {{"restart", restart}};
    }
  }
  best.attained_at["h"] = best_h;
  best.attained_at["psi"] = best_psi;
  return best;
}

/// Closed form: ||f||_{p/2} for f >= 0, max(||f+||, ||f-||) in L^{p/2} for real f.
inline double beta_closed(const DiscreteFunction& f, const Exponent& p) {
  detail::require_p_at_least_two(p, "beta norm");
  if (!f.is_real()) throw std::domain_error("closed beta norm is only characterized for real functions");
  return real_dual_sup(detail::real_parts(f), f.space(), p);
}

inline NormResult beta_norm(const DiscreteFunction& f, const Exponent& p, NormMode mode, std::uint64_t seed) {
  detail::require_p_at_least_two(p, "beta norm");
  if (mode == NormMode::Closed) {
    NormResult r;
    r.value = beta_closed(f, p);
    r.mode = mode;
    r.attained_at = {{"h", "sign pattern"}};
    return r;
  }
  NormResult r = f.is_real() && f.size() <= 16 ? beta_vertex_search(f, p) : beta_gradient_search(f, p, seed);
  if (f.is_real()) r.gap = beta_closed(f, p) - r.value;
  return r;
}

inline NormResult beta_norm(const SymbolicFunction& f, const Exponent& p, NormMode mode, std::uint64_t /*seed*/) {
  detail::require_p_at_least_two(p, "beta norm");
  if (mode == NormMode::Optimize) throw std::domain_error("beta optimization needs the discrete backend");
  NormResult r;
  r.value = norm(f, half(p));  // symbolic functions are positive
  r.mode = mode;
  r.attained_at = {{"h", "unit"}};
  return r;
}

// ---------------------------------------------------------------------------
// gamma: sqrt of sup Omega(f,f)/Omega(u,u)

inline NormResult gamma_norm(const DiscreteFunction& f, const Exponent& p, NormMode mode, std::uint64_t seed,
                             int random_weights = 32) {
  detail::require_p_at_least_two(p, "gamma norm");
  const double closed = norm(f, Exponent::infinity());
  NormResult r;
  r.mode = mode;
  if (mode == NormMode::Closed) {
    r.value = closed;
    return r;
  }
  const auto& space = f.space();
  const auto unit = DiscreteFunction::unit(space);
  double best = 0.0;
  auto consider = [&](const DiscreteFunction& psi, const nlohmann::json& tag) {
    auto w = FormWeight::candidate(psi, p);
    double den = evaluate(w, unit, unit).value.real();
    if (den <= 0.0) return;
    double v = evaluate(w, f, f).value.real() / den;
    if (v > best) {
      best = v;
      r.attained_at = tag;
    }
  };
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto ind = DiscreteFunction::indicator(space, i);
    double n = norm(ind, gamma_exponent(p));
    consider(scale(ind, 1.0 / n), {{"weight", "indicator"}, {"atom", i}});
  }
  Rng rng = make_rng(seed, 0x9a);
  for (int k = 0; k < random_weights; ++k)
    consider(detail::random_ball_weight(space, p, rng), {{"weight", "random"}, {"index", k}});
  r.value = std::sqrt(best);
  r.gap = closed - r.value;
  return r;
}

inline NormResult gamma_norm(const SymbolicFunction& f, const Exponent& p, NormMode mode, std::uint64_t /*seed*/) {
  detail::require_p_at_least_two(p, "gamma norm");
  if (mode == NormMode::Optimize) throw std::domain_error("gamma optimization needs the discrete backend");
  NormResult r;
  r.mode = mode;
  r.value = is_bounded(f) ? norm(f, Exponent::infinity()) : kInf;
  return r;
}

inline bool gamma_membership(const DiscreteFunction&, const Exponent& p) {
  detail::require_p_at_least_two(p, "gamma membership");
  return true;
}

inline bool gamma_membership(const SymbolicFunction& f, const Exponent& p) {
  detail::require_p_at_least_two(p, "gamma membership");
  return is_bounded(f);
}

inline bool gamma_membership(const Function& f, const Exponent& p) {
  return std::visit([&](const auto& g) { return gamma_membership(g, p); }, f);
}

inline NormResult alpha_norm(const Function& f, const Exponent& p, NormMode mode, std::uint64_t seed) {
  return std::visit([&](const auto& g) { return alpha_norm(g, p, mode, seed); }, f);
}
inline NormResult beta_norm(const Function& f, const Exponent& p, NormMode mode, std::uint64_t seed) {
  return std::visit([&](const auto& g) { return beta_norm(g, p, mode, seed); }, f);
}
inline NormResult gamma_norm(const Function& f, const Exponent& p, NormMode mode, std::uint64_t seed) {
  return std::visit([&](const auto& g) { return gamma_norm(g, p, mode, seed); }, f);
}

inline void to_json(nlohmann::json& j, const NormResult& r) {
  j = {{"value", slack_to_json(r.value)}, {"mode", to_string(r.mode)}, {"attained_at", r.attained_at}};
  j["gap"] = std::isnan(r.gap) ? nlohmann::json(nullptr) : nlohmann::json(r.gap);
}

}  // namespace lpcq
