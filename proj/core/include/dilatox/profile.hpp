#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace dilatox {

/// Piecewise cubic Hermite interpolant through (r_k, R_k) with slopes R'_k.
///
/// Outside [r_front, r_back] the curve is continued by the power law
/// R(r) = R_k (r / r_k)^beta with beta = r_k R'_k / R_k, which is C^1 at the
/// end knot and keeps R(0) = 0 whenever beta > 0.
class HermiteSpline {
 public:
  HermiteSpline(std::vector<double> knots, std::vector<double> values, std::vector<double> slopes);

  /// Shape-preserving (Fritsch-Carlson) slopes; monotone data stays monotone.
  static HermiteSpline monotone(std::vector<double> knots, std::vector<double> values);

  double value(double r) const;
  double derivative(double r) const;

  std::span<const double> knots() const noexcept { return knots_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> slopes() const noexcept { return slopes_; }

 private:
  std::size_t segment(double r) const;

  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  double beta_lo_ = 1.0;
  double beta_hi_ = 1.0;
};

std::vector<double> fritsch_carlson_slopes(std::span<const double> x, std::span<const double> y);

/// Scalar profile R(r) of the rotationally symmetric map R(r) e^{i theta}.
class RadialProfile {
 public:
  using Fn = std::function<double(double)>;

  RadialProfile(Fn value, Fn derivative);
  explicit RadialProfile(HermiteSpline spline);

  double value(double r) const { return value_(r); }
  double derivative(double r) const { return derivative_(r); }

  /// Non-null when the profile is backed by samples.
  const HermiteSpline* spline() const noexcept { return spline_.get(); }

 private:
  std::shared_ptr<const HermiteSpline> spline_;
  Fn value_;
  Fn derivative_;
};

}  // namespace dilatox
