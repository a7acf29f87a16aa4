#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "dilatox/error.hpp"

namespace dilatox {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A point z = r e^{i theta} of the punctured unit disc. The angle is stored
/// normalized into [0, 2pi).
class PolarPoint {
 public:
  PolarPoint(double r, double theta) : r_(r), theta_(normalize_angle(theta)) {
    if (!(r > 0.0) || !(r < 1.0)) {
      fail(ErrorCode::OutOfDomain, "radius must lie in (0,1), got " + std::to_string(r));
    }
    if (!std::isfinite(theta)) fail(ErrorCode::InvalidArgument, "angle must be finite");
  }

  double r() const noexcept { return r_; }
  double theta() const noexcept { return theta_; }

  Complex unit() const noexcept { return std::polar(1.0, theta_); }
  Complex z() const noexcept { return std::polar(r_, theta_); }

  static double normalize_angle(double theta) noexcept {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;  // fmod can round up to 2pi for tiny negatives
    return t;
  }

 private:
  double r_;
  double theta_;
};

}  // namespace dilatox
