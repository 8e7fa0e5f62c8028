#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/rational.hpp>

#include "lpcq/interval.hpp"

namespace lpcq {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses "3", "-1/3", "5/2".
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

/// Extended Hölder exponent in [1, inf]. Stored through its reciprocal so that
/// inf is the exact value 1/p = 0 and every exponent identity used here is
/// linear in the stored quantity.
class Exponent {
 public:
  Exponent() = default;
  Exponent(std::int64_t p) : Exponent(Rational(p)) {}  // NOLINT(google-explicit-constructor)
  Exponent(Rational p) {                               // NOLINT(google-explicit-constructor)
    if (p < 1) throw std::domain_error("exponent below 1: " + lpcq::to_string(p));
    inv_ = 1 / p;
  }

  static Exponent infinity() { return from_reciprocal(Rational(0)); }

  static Exponent from_reciprocal(Rational inv) {
    if (inv < 0 || inv > 1) throw std::domain_error("reciprocal exponent outside [0,1]: " + lpcq::to_string(inv));
    Exponent e;
    e.inv_ = inv;
    return e;
  }

  static Exponent parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    return Exponent(parse_rational(text));
  }

  bool is_infinite() const { return inv_ == Rational(0); }
  Rational reciprocal() const { return inv_; }

  Rational value() const {
    if (is_infinite()) throw std::domain_error("infinite exponent has no finite value");
    return 1 / inv_;
  }

  double to_double() const { return is_infinite() ? std::numeric_limits<double>::infinity() : lpcq::to_double(1 / inv_); }

  std::string to_string() const { return is_infinite() ? "inf" : lpcq::to_string(value()); }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.inv_ == b.inv_; }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return a.inv_ != b.inv_; }
  friend bool operator<(const Exponent& a, const Exponent& b) { return a.inv_ > b.inv_; }
  friend bool operator>(const Exponent& a, const Exponent& b) { return b < a; }
  friend bool operator<=(const Exponent& a, const Exponent& b) { return !(b < a); }
  friend bool operator>=(const Exponent& a, const Exponent& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Exponent& e) { return os << e.to_string(); }

 private:
  Rational inv_{1};
};

using ExponentInterval = Interval<Exponent>;
using ReciprocalInterval = Interval<Rational>;

/// p' with 1/p + 1/p' = 1.
inline Exponent conjugate(const Exponent& p) { return Exponent::from_reciprocal(1 - p.reciprocal()); }

/// p/(p-2), with the value inf at p = 2. This is the conjugate of p/2.
inline Exponent gamma_exponent(const Exponent& p) {
  if (p.reciprocal() > Rational(1, 2))
    throw std::domain_error("gamma exponent needs p >= 2, got " + p.to_string());
  return Exponent::from_reciprocal(1 - 2 * p.reciprocal());
}

/// r with 1/r = 1/p + 1/q.
inline Exponent holder_combine(const Exponent& p, const Exponent& q) {
  Rational s = p.reciprocal() + q.reciprocal();
  if (s > 1)
    throw std::domain_error("1/" + p.to_string() + " + 1/" + q.to_string() + " exceeds 1; combined exponent below 1");
  return Exponent::from_reciprocal(s);
}

/// p/2 for p >= 2.
inline Exponent half(const Exponent& p) {
  if (p.reciprocal() > Rational(1, 2)) throw std::domain_error("p/2 below 1 for p = " + p.to_string());
  return Exponent::from_reciprocal(2 * p.reciprocal());
}

/// q with 1/q = 1/r - 1/p, i.e. the multiplier exponent taking L^p into L^r.
inline Exponent multiplier_exponent(const Exponent& p, const Exponent& r) {
  Rational d = r.reciprocal() - p.reciprocal();
  if (d < 0) throw std::domain_error("no multiplier exponent: need r <= p, got p = " + p.to_string() + ", r = " + r.to_string());
  return Exponent::from_reciprocal(d);
}

/// [1, inf] as an exponent interval.
inline ExponentInterval full_exponent_range() { return ExponentInterval(Exponent(1), Exponent::infinity(), true, true); }

/// Exponents restricted to [1, inf).
inline ExponentInterval finite_part(const ExponentInterval& iv) {
  return iv.intersect(ExponentInterval(Exponent(1), Exponent::infinity(), true, false));
}

/// {1/q : q in iv}, a subinterval of [0,1].
inline ReciprocalInterval reciprocal_image(const ExponentInterval& iv) {
  if (iv.is_empty()) return {};
  return ReciprocalInterval(iv.upper().reciprocal(), iv.lower().reciprocal(), iv.upper_closed(), iv.lower_closed());
}

inline ExponentInterval from_reciprocal_image(const ReciprocalInterval& iv) {
  auto clipped = iv.intersect(ReciprocalInterval(Rational(0), Rational(1)));
  if (clipped.is_empty()) return {};
  return ExponentInterval(Exponent::from_reciprocal(clipped.upper()), Exponent::from_reciprocal(clipped.lower()),
                          clipped.upper_closed(), clipped.lower_closed());
}

/// A pair (r, s) with r in I, s in J and 1/r + 1/s = 1/p, if one exists.
/// The reciprocal intervals are summed exactly; the returned witness is the
/// midpoint of the feasible segment for 1/r (or its single point).
inline std::optional<std::pair<Exponent, Exponent>> reciprocal_sum_witness(const ExponentInterval& I,
                                                                           const ExponentInterval& J,
                                                                           const Exponent& p) {
  if (I.is_empty() || J.is_empty()) return std::nullopt;
  const Rational target = p.reciprocal();
  auto feasible = reciprocal_image(I).intersect(reflect_about(target, reciprocal_image(J)));
  if (feasible.is_empty()) return std::nullopt;
  Rational x = feasible.is_point() ? feasible.lower() : (feasible.lower() + feasible.upper()) / 2;
  return std::make_pair(Exponent::from_reciprocal(x), Exponent::from_reciprocal(target - x));
}

inline bool reciprocal_sum_contains(const ExponentInterval& I, const ExponentInterval& J, const Exponent& p) {
  return minkowski_sum(reciprocal_image(I), reciprocal_image(J)).contains(p.reciprocal());
}

}  // namespace lpcq
