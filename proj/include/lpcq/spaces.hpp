#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <complex>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "lpcq/exponents.hpp"
#include "lpcq/quadrature.hpp"

namespace lpcq {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Measure spaces

/// Finite atomic measure space; atom i carries mass weights[i] > 0.
class DiscreteSpace {
 public:
  DiscreteSpace() = default;
  explicit DiscreteSpace(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("discrete space needs at least one atom");
    for (std::size_t i = 0; i < weights_.size(); ++i)
      if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
        throw std::invalid_argument("atom " + std::to_string(i) + " has non-positive or non-finite mass");
    total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  }

  static DiscreteSpace uniform(std::size_t atoms, double total_mass = 1.0) {
    return DiscreteSpace(std::vector<double>(atoms, total_mass / static_cast<double>(atoms)));
  }

  std::size_t size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_.at(i); }
  double total_mass() const { return total_; }

  friend bool operator==(const DiscreteSpace& a, const DiscreteSpace& b) { return a.weights_ == b.weights_; }

 private:
  std::vector<double> weights_;
  double total_ = 0.0;
};

/// The two Lebesgue domains of the symbolic backend.
enum class Domain {
  UnitInterval,  // (0,1], mass 1
  HalfLine,      // (0,inf), infinite mass
};

enum class Support {
  NearZero,  // (0,1]
  Tail,      // (1,inf)
};

inline bool finite_measure(Domain d) { return d == Domain::UnitInterval; }

inline const char* to_string(Domain d) { return d == Domain::UnitInterval ? "unit_interval" : "half_line"; }
inline const char* to_string(Support s) { return s == Support::NearZero ? "near_zero" : "tail"; }

// ---------------------------------------------------------------------------
// Functions

class DiscreteFunction {
 public:
  DiscreteFunction() = default;
  DiscreteFunction(DiscreteSpace space, std::vector<Complex> values) : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_.size())
      throw std::invalid_argument("function has " + std::to_string(values_.size()) + " values for " +
                                  std::to_string(space_.size()) + " atoms");
  }
  DiscreteFunction(DiscreteSpace space, const std::vector<double>& values)
      : DiscreteFunction(std::move(space), std::vector<Complex>(values.begin(), values.end())) {}
  DiscreteFunction(DiscreteSpace space, std::initializer_list<double> values)
      : DiscreteFunction(std::move(space), std::vector<double>(values)) {}

  static DiscreteFunction constant(const DiscreteSpace& space, Complex c) {
    return {space, std::vector<Complex>(space.size(), c)};
  }
  static DiscreteFunction unit(const DiscreteSpace& space) { return constant(space, 1.0); }
  static DiscreteFunction indicator(const DiscreteSpace& space, std::size_t atom) {
    std::vector<Complex> v(space.size(), 0.0);
    v.at(atom) = 1.0;
    return {space, std::move(v)};
  }

  const DiscreteSpace& space() const { return space_; }
  std::span<const Complex> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

  bool is_real() const {
    return std::all_of(values_.begin(), values_.end(), [](Complex z) { return z.imag() == 0.0; });
  }
  bool is_nonnegative() const {
    return std::all_of(values_.begin(), values_.end(), [](Complex z) { return z.imag() == 0.0 && z.real() >= 0.0; });
  }
  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](Complex z) { return z == Complex(0.0); });
  }

  friend bool operator==(const DiscreteFunction& a, const DiscreteFunction& b) {
    return a.space_ == b.space_ && a.values_ == b.values_;
  }

 private:
  DiscreteSpace space_;
  std::vector<Complex> values_;
};

/// c * x^a restricted to one canonical support.
struct PowerTerm {
  Rational coeff{1};
  Rational exponent{0};
  Support support = Support::NearZero;

  friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

/// Positive-coefficient sum of power terms on a Lebesgue domain. Terms are kept
/// canonical: sorted by (support, exponent), one term per pair.
class SymbolicFunction {
 public:
  SymbolicFunction() = default;
  SymbolicFunction(Domain domain, std::vector<PowerTerm> terms) : domain_(domain) {
    std::map<std::pair<int, Rational>, Rational> merged;
    for (const auto& t : terms) {
      if (!(t.coeff > 0)) throw std::invalid_argument("symbolic coefficients must be strictly positive");
      if (t.support == Support::Tail && domain == Domain::UnitInterval)
        throw std::invalid_argument("tail term on the unit interval");
      merged[{static_cast<int>(t.support), t.exponent}] += t.coeff;
    }
    for (const auto& [key, c] : merged) terms_.push_back({c, key.second, static_cast<Support>(key.first)});
  }

  static SymbolicFunction power(Domain domain, Rational exponent, Support support = Support::NearZero,
                                Rational coeff = 1) {
    return {domain, {{coeff, exponent, support}}};
  }

  /// u(x) = 1 on the whole domain.
  static SymbolicFunction unit(Domain domain) {
    if (domain == Domain::UnitInterval) return power(domain, 0);
    return {domain, {{1, 0, Support::NearZero}, {1, 0, Support::Tail}}};
  }

  Domain domain() const { return domain_; }
  std::span<const PowerTerm> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  bool has_support(Support s) const {
    return std::any_of(terms_.begin(), terms_.end(), [s](const PowerTerm& t) { return t.support == s; });
  }

  double operator()(double x) const {
    Support s = x <= 1.0 ? Support::NearZero : Support::Tail;
    double v = 0.0;
    for (const auto& t : terms_)
      if (t.support == s) v += to_double(t.coeff) * std::pow(x, to_double(t.exponent));
    return v;
  }

  std::vector<quadrature::Term> numeric_terms(Support s) const {
    std::vector<quadrature::Term> out;
    for (const auto& t : terms_)
      if (t.support == s) out.push_back({to_double(t.coeff), to_double(t.exponent)});
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      if (i) os << " + ";
      if (t.coeff != Rational(1)) os << lpcq::to_string(t.coeff) << "*";
      os << "x^" << lpcq::to_string(t.exponent) << "[" << lpcq::to_string(t.support) << "]";
    }
    return os.str();
  }

  friend bool operator==(const SymbolicFunction& a, const SymbolicFunction& b) {
    return a.domain_ == b.domain_ && a.terms_ == b.terms_;
  }

 private:
  Domain domain_ = Domain::UnitInterval;
  std::vector<PowerTerm> terms_;
};

using Function = std::variant<DiscreteFunction, SymbolicFunction>;

// ---------------------------------------------------------------------------
// Pointwise algebra

inline void require_same_space(const DiscreteFunction& f, const DiscreteFunction& g) {
  if (!(f.space() == g.space())) throw std::invalid_argument("functions live on different discrete spaces");
}

inline void require_same_domain(const SymbolicFunction& f, const SymbolicFunction& g) {
  if (f.domain() != g.domain()) throw std::invalid_argument("functions live on different symbolic domains");
}

inline DiscreteFunction multiply(const DiscreteFunction& f, const DiscreteFunction& g) {
  require_same_space(f, g);
  std::vector<Complex> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] * g[i];
  return {f.space(), std::move(v)};
}

inline DiscreteFunction add(const DiscreteFunction& f, const DiscreteFunction& g) {
  require_same_space(f, g);
  std::vector<Complex> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] + g[i];
  return {f.space(), std::move(v)};
}

inline DiscreteFunction scale(const DiscreteFunction& f, Complex c) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (auto& z : v) z *= c;
  return {f.space(), std::move(v)};
}

inline DiscreteFunction involution(const DiscreteFunction& f) {
  std::vector<Complex> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(f[i]);
  return {f.space(), std::move(v)};
}

/// |f|^e pointwise, with 0^0 = 1.
inline DiscreteFunction abs_power(const DiscreteFunction& f, double e) {
  std::vector<Complex> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = e == 0.0 ? 1.0 : std::pow(std::abs(f[i]), e);
  return {f.space(), std::move(v)};
}

/// Exponents add on a shared support; terms on different supports annihilate.
inline SymbolicFunction multiply(const SymbolicFunction& f, const SymbolicFunction& g) {
  require_same_domain(f, g);
  std::vector<PowerTerm> out;
  for (const auto& a : f.terms())
    for (const auto& b : g.terms())
      if (a.support == b.support) out.push_back({a.coeff * b.coeff, a.exponent + b.exponent, a.support});
  return {f.domain(), std::move(out)};
}

inline SymbolicFunction add(const SymbolicFunction& f, const SymbolicFunction& g) {
  require_same_domain(f, g);
  std::vector<PowerTerm> out(f.terms().begin(), f.terms().end());
  out.insert(out.end(), g.terms().begin(), g.terms().end());
  return {f.domain(), std::move(out)};
}

inline SymbolicFunction scale(const SymbolicFunction& f, Rational c) {
  if (!(c > 0)) throw std::invalid_argument("symbolic functions only scale by positive rationals");
  std::vector<PowerTerm> out(f.terms().begin(), f.terms().end());
  for (auto& t : out) t.coeff *= c;
  return {f.domain(), std::move(out)};
}

/// Symbolic functions are real and positive, so the involution fixes them.
inline SymbolicFunction involution(const SymbolicFunction& f) { return f; }

/// f restricted to one support.
inline SymbolicFunction restrict_to(const SymbolicFunction& f, Support s) {
  std::vector<PowerTerm> out;
  for (const auto& t : f.terms())
    if (t.support == s) out.push_back(t);
  return {f.domain(), std::move(out)};
}

template <class Op>
Function dispatch_binary(const Function& f, const Function& g, Op op) {
  return std::visit(
      [&](const auto& a, const auto& b) -> Function {
        using A = std::decay_t<decltype(a)>;
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<A, B>) {
          return op(a, b);
        } else {
          throw std::invalid_argument("cannot combine a discrete function with a symbolic one");
        }
      },
      f, g);
}

inline Function multiply(const Function& f, const Function& g) {
  return dispatch_binary(f, g, [](const auto& a, const auto& b) { return Function(multiply(a, b)); });
}
inline Function add(const Function& f, const Function& g) {
  return dispatch_binary(f, g, [](const auto& a, const auto& b) { return Function(add(a, b)); });
}
inline Function involution(const Function& f) {
  return std::visit([](const auto& a) { return Function(involution(a)); }, f);
}

// ---------------------------------------------------------------------------
// Exponent sets and norms

/// True iff every near-zero exponent is >= 0 and every tail exponent is <= 0,
/// i.e. the function is essentially bounded.
inline bool is_bounded(const SymbolicFunction& f) {
  return std::all_of(f.terms().begin(), f.terms().end(), [](const PowerTerm& t) {
    return t.support == Support::NearZero ? t.exponent >= 0 : t.exponent <= 0;
  });
}

/// {q in [1, inf] : ||f||_q < inf}. A near-zero term c x^a is q-integrable iff
/// aq > -1, a tail term iff aq < -1; positivity makes the sum's set the
/// intersection over terms. inf belongs to the set iff f is bounded.
inline ExponentInterval exponent_set(const SymbolicFunction& f) {
  if (f.empty()) return full_exponent_range();
  // Work on x = 1/q in (0,1]: near-zero needs x > -a, tail needs x < -a.
  Rational lo(0);
  Rational hi(1);
  bool hi_closed = true;
  for (const auto& t : f.terms()) {
    Rational bound = -t.exponent;
    if (t.support == Support::NearZero) {
      lo = std::max(lo, bound);
    } else if (bound <= hi) {
      hi = bound;
      hi_closed = false;
    }
  }
  ReciprocalInterval finite = (hi > 0) ? ReciprocalInterval(lo, hi, false, hi_closed) : ReciprocalInterval{};
  if (is_bounded(f)) {
    if (finite.is_empty()) return ExponentInterval::point(Exponent::infinity());
    finite = ReciprocalInterval(Rational(0), finite.upper(), true, finite.upper_closed());
  }
  return from_reciprocal_image(finite);
}

inline bool in_lp(const SymbolicFunction& f, const Exponent& p) { return exponent_set(f).contains(p); }

namespace detail {

inline double single_term_norm(const PowerTerm& t, const Exponent& p) {
  const double c = to_double(t.coeff);
  if (p.is_infinite()) {
    bool bounded = t.support == Support::NearZero ? t.exponent >= 0 : t.exponent <= 0;
    return bounded ? c : kInf;
  }
  const Rational ap1 = t.exponent * p.value() + 1;
  const double pd = p.to_double();
  if (t.support == Support::NearZero) return ap1 > 0 ? c * std::pow(to_double(ap1), -1.0 / pd) : kInf;
  return ap1 < 0 ? c * std::pow(to_double(-ap1), -1.0 / pd) : kInf;
}

}  // namespace detail

/// ||f||_p^p over the part of f supported on `s`, by closed form for one term
/// and quadrature otherwise. Caller guarantees membership.
inline double support_norm_pow(const SymbolicFunction& f, const Exponent& p, Support s) {
  auto terms = f.numeric_terms(s);
  if (terms.empty()) return 0.0;
  const double pd = p.to_double();
  if (terms.size() == 1) {
    for (const auto& t : f.terms())
      if (t.support == s) return std::pow(detail::single_term_norm(t, p), pd);
  }
  return s == Support::NearZero ? quadrature::unit_interval_power(terms, pd) : quadrature::half_line_tail_power(terms, pd);
}

inline double norm(const DiscreteFunction& f, const Exponent& p) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (auto z : f.values()) m = std::max(m, std::abs(z));
    return m;
  }
  const double pd = p.to_double();
  // scale by the largest modulus to keep |v|^p in range
  double m = 0.0;
  for (auto z : f.values()) m = std::max(m, std::abs(z));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]) / m, pd) * f.space().weight(i);
  return m * std::pow(s, 1.0 / pd);
}

inline double norm(const SymbolicFunction& f, const Exponent& p) {
  if (f.empty()) return 0.0;
  if (!in_lp(f, p)) return kInf;
  if (p.is_infinite()) {
    double near = 0.0, tail = 0.0;
    for (const auto& t : f.terms()) (t.support == Support::NearZero ? near : tail) += to_double(t.coeff);
    return std::max(near, tail);
  }
  if (f.terms().size() == 1) return detail::single_term_norm(f.terms()[0], p);
  double total = support_norm_pow(f, p, Support::NearZero) + support_norm_pow(f, p, Support::Tail);
  return std::pow(total, 1.0 / p.to_double());
}

inline double norm(const Function& f, const Exponent& p) {
  return std::visit([&](const auto& g) { return norm(g, p); }, f);
}

// ---------------------------------------------------------------------------
// Integrals of symbolic functions (closed form per term)

/// Integral of c x^a over [lo, hi] with 0 <= lo < hi <= inf (inf if divergent).
inline double power_integral(double c, const Rational& a, double lo, double hi) {
  const Rational a1 = a + 1;
  if (a1 == Rational(0)) {
    if (lo <= 0.0 || std::isinf(hi)) return kInf;
    return c * (std::log(hi) - std::log(lo));
  }
  const double e = to_double(a1);
  if (lo <= 0.0 && e < 0) return kInf;
  if (std::isinf(hi) && e > 0) return kInf;
  double upper = std::isinf(hi) ? 0.0 : std::pow(hi, e);
  double lower = lo <= 0.0 ? 0.0 : std::pow(lo, e);
  return c * (upper - lower) / e;
}

/// Integral of f over the part of the domain inside [lo, hi].
inline double integral_between(const SymbolicFunction& f, double lo, double hi) {
  double total = 0.0;
  for (const auto& t : f.terms()) {
    double a = t.support == Support::NearZero ? std::max(lo, 0.0) : std::max(lo, 1.0);
    double b = t.support == Support::NearZero ? std::min(hi, 1.0) : hi;
    if (!(b > a)) continue;
    total += power_integral(to_double(t.coeff), t.exponent, a, b);
  }
  return total;
}

/// Integral of f over its domain; inf when divergent.
inline double integral(const SymbolicFunction& f) { return integral_between(f, 0.0, kInf); }

/// Integral of f over [eps, 1/eps] (the truncation used for blow-up tests).
inline double truncated_integral(const SymbolicFunction& f, double eps) { return integral_between(f, eps, 1.0 / eps); }

/// Divergence detector: integrals over [2^-k, 2^k] for k = 1..max_halvings.
/// Reports the first k whose truncated integral exceeds `threshold`.
struct BlowUp {
  bool exceeded = false;
  int at_halving = 0;
  double last_value = 0.0;
  std::vector<double> trajectory;
};

inline BlowUp blow_up(const SymbolicFunction& f, double threshold, int max_halvings) {
  BlowUp out;
  for (int k = 1; k <= max_halvings; ++k) {
    double v = truncated_integral(f, std::ldexp(1.0, -k));
    out.trajectory.push_back(v);
    out.last_value = v;
    if (v > threshold) {
      out.exceeded = true;
      out.at_halving = k;
      break;
    }
  }
  return out;
}

}  // namespace lpcq
