#pragma once

// Reference computations written independently of the library's quadrature:
// brute-force sampling, 2-D midpoint rules and adaptive Simpson.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

inline double rel_err(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                          double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * std::max(tol, 1e-15 * std::abs(left + right))) return left + right + diff / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

/// Adaptive Simpson with Richardson correction.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                               int depth = 40) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// \int_a^b f(t) dt computed in s = ln t, which tames power-law endpoints.
inline double log_adaptive(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  return adaptive_simpson([&](double s) { const double t = std::exp(s); return f(t) * t; }, std::log(a),
                          std::log(b), tol);
}

/// min/max of |f(r e^{i theta})| over n equispaced angles.
template <class F>
std::pair<double, double> dense_minmax(F&& value, double r, long n) {
  double lo = INFINITY, hi = 0.0;
  for (long k = 0; k < n; ++k) {
    const double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    const double a = std::abs(value(r, th));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return {lo, hi};
}

/// ((1/pi r^2) \iint_{B_r} Q^{1/(p-1)})^{p-1} by the 2-D polar midpoint rule.
template <class Q>
double midpoint_disc_mean(Q&& q, double r, double p, int nr, int nt) {
  double sum = 0.0;
  const double dr = r / nr, dt = 2.0 * kPi / nt;
  for (int i = 0; i < nr; ++i) {
    const double t = (i + 0.5) * dr;
    double ring = 0.0;
    for (int j = 0; j < nt; ++j) ring += std::pow(q(t, (j + 0.5) * dt), 1.0 / (p - 1.0));
    sum += ring * t * dr * dt;
  }
  return std::pow(sum / (kPi * r * r), p - 1.0);
}

/// Deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(unsigned long long seed) : eng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
  double angle() { return uniform(0.0, 2.0 * kPi); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oracle
