#pragma once

// Test-side reference computations. These deliberately avoid the library's
// closed forms and interval code: plain doubles, brute force, and quadrature.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

/// Composite Simpson for the integral of g over [lo, hi], n even.
inline double simpson(const std::function<double(double)>& g, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double s = g(lo) + g(hi);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(lo + i * h);
  return s * h / 3.0;
}

/// Integral of F(x) over [a, b] subset (0, inf), computed in t = log x so that
/// power singularities become smooth exponentials.
inline double log_integral(const std::function<double(double)>& F, double a, double b, int n = 4000) {
  return simpson([&](double t) { return F(std::exp(t)) * std::exp(t); }, std::log(a), std::log(b), n);
}

/// Finite / infinite verdict for the integral of F near 0 (toward_zero) or at
/// infinity, from chunk integrals over 20 doublings each, out to 2^(+-160).
/// Convergent integrals of power type shrink geometrically (ratio 2^(-20 d) for
/// the leading power); at the borderline d = 0 the chunks tend to a constant.
/// The ratio is read at the last chunk, where subleading terms have died out.
inline bool integral_converges(const std::function<double(double)>& F, bool toward_zero) {
  auto chunk = [&](int k) {
    double a = std::ldexp(1.0, 20 * k), b = std::ldexp(1.0, 20 * (k + 1));
    if (toward_zero) {
      a = std::ldexp(1.0, -20 * (k + 1));
      b = std::ldexp(1.0, -20 * k);
    }
    return log_integral(F, a, b, 2000);
  };
  const double c1 = chunk(6), c2 = chunk(7);
  if (c1 == 0.0) return true;
  return c2 / c1 < 0.99;
}

/// ||f||_p^p for f given by separate expressions on (0, 1] and (1, inf), by
/// log-variable quadrature down to 2^-200 and up to 2^200.
inline double pth_power_integral(const std::function<double(double)>& near, const std::function<double(double)>& tail,
                                 double p) {
  auto N = [&](double x) { return std::pow(std::abs(near(x)), p); };
  auto T = [&](double x) { return std::pow(std::abs(tail(x)), p); };
  return log_integral(N, std::ldexp(1.0, -200), 1.0, 40000) + log_integral(T, 1.0, std::ldexp(1.0, 200), 40000);
}

/// Plain interval over doubles with endpoint flags; hi may be +inf.
struct Iv {
  double lo, hi;
  bool lo_closed, hi_closed;
  bool contains(double x) const {
    bool a = lo_closed ? x >= lo : x > lo;
    bool b = std::isinf(hi) ? (hi_closed || std::isfinite(x)) : (hi_closed ? x <= hi : x < hi);
    return a && b;
  }
};

/// Dense sweep for: is there r in I, s in J with 1/r + 1/s = 1/p? Reciprocals
/// are scanned in exact integer steps of 1/M, M = 5040, which holds every
/// reciprocal endpoint used by the tests and every midpoint between them.
inline bool reciprocal_sum_sweep(const Iv& I, const Iv& J, double p) {
  const long M = 5040;
  auto to_units = [&](double e) { return std::isinf(e) ? 0L : std::lround(static_cast<double>(M) / e); };
  struct U {
    long lo, hi;
    bool lc, hc;
    bool contains(long k) const { return (lc ? k >= lo : k > lo) && (hc ? k <= hi : k < hi); }
  };
  // 1/r runs over [1/hi, 1/lo] with the closures swapped
  U ui{to_units(I.hi), to_units(I.lo), I.hi_closed, I.lo_closed};
  U uj{to_units(J.hi), to_units(J.lo), J.hi_closed, J.lo_closed};
  const long T = to_units(p);
  for (long k = 0; k <= T; ++k)
    if (ui.contains(k) && uj.contains(T - k)) return true;
  return false;
}

/// Max over a grid on the positive part of the unit p-sphere (2 atoms) of ||f w||_r.
inline double two_atom_operator_norm(double w0, double w1, double m0, double m1, double p, double r, int steps = 200000) {
  double best = 0.0;
  for (int i = 0; i <= steps; ++i) {
    double th = 0.5 * M_PI * i / steps;
    double a = std::cos(th), b = std::sin(th);
    double np = std::pow(std::pow(a, p) * m0 + std::pow(b, p) * m1, 1.0 / p);
    a /= np;
    b /= np;
    double v = std::pow(std::pow(a * w0, r) * m0 + std::pow(b * w1, r) * m1, 1.0 / r);
    best = std::max(best, v);
  }
  return best;
}

}  // namespace oracle
