#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

namespace lpcq {

/// Order interval over a totally ordered value type with independent
/// open/closed endpoints. The empty interval has a single canonical form.
template <class T>
class Interval {
 public:
  Interval() = default;  // canonical empty

  Interval(T lo, T hi, bool lo_closed = true, bool hi_closed = true)
      : lo_(std::move(lo)), hi_(std::move(hi)), lo_closed_(lo_closed), hi_closed_(hi_closed), empty_(false) {
    if (hi_ < lo_ || (lo_ == hi_ && !(lo_closed_ && hi_closed_))) *this = Interval{};
  }

  static Interval empty() { return Interval{}; }
  static Interval point(const T& v) { return Interval(v, v, true, true); }

  bool is_empty() const { return empty_; }
  bool is_point() const { return !empty_ && lo_ == hi_; }
  const T& lower() const { return lo_; }
  const T& upper() const { return hi_; }
  bool lower_closed() const { return lo_closed_; }
  bool upper_closed() const { return hi_closed_; }

  bool contains(const T& x) const {
    if (empty_) return false;
    bool above = lo_closed_ ? !(x < lo_) : lo_ < x;
    bool below = hi_closed_ ? !(hi_ < x) : x < hi_;
    return above && below;
  }

  Interval intersect(const Interval& o) const {
    if (empty_ || o.empty_) return Interval{};
    T lo = lo_;
    bool lc = lo_closed_;
    if (lo_ < o.lo_) {
      lo = o.lo_;
      lc = o.lo_closed_;
    } else if (lo_ == o.lo_) {
      lc = lo_closed_ && o.lo_closed_;
    }
    T hi = hi_;
    bool hc = hi_closed_;
    if (o.hi_ < hi_) {
      hi = o.hi_;
      hc = o.hi_closed_;
    } else if (hi_ == o.hi_) {
      hc = hi_closed_ && o.hi_closed_;
    }
    return Interval(std::move(lo), std::move(hi), lc, hc);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  friend bool operator==(const Interval& a, const Interval& b) {
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.lo_closed_ == b.lo_closed_ && a.hi_closed_ == b.hi_closed_;
  }

 private:
  T lo_{};
  T hi_{};
  bool lo_closed_ = false;
  bool hi_closed_ = false;
  bool empty_ = true;
};

/// {a + b : a in x, b in y}. An endpoint of the sum is attained iff both
/// contributing endpoints are.
template <class T>
Interval<T> minkowski_sum(const Interval<T>& x, const Interval<T>& y) {
  if (x.is_empty() || y.is_empty()) return {};
  return Interval<T>(x.lower() + y.lower(), x.upper() + y.upper(), x.lower_closed() && y.lower_closed(),
                     x.upper_closed() && y.upper_closed());
}

/// {c - b : b in y}
template <class T>
Interval<T> reflect_about(const T& c, const Interval<T>& y) {
  if (y.is_empty()) return {};
  return Interval<T>(c - y.upper(), c - y.lower(), y.upper_closed(), y.lower_closed());
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Interval<T>& iv) {
  if (iv.is_empty()) return os << "{}";
  return os << (iv.lower_closed() ? '[' : '(') << iv.lower() << ", " << iv.upper() << (iv.upper_closed() ? ']' : ')');
}

}  // namespace lpcq
