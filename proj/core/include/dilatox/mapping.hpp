#pragma once

#include <functional>
#include <string>
#include <utility>

#include "dilatox/polar.hpp"

namespace dilatox {

/// Partial derivatives f_r and f_theta at a point.
struct Partials {
  Complex dr;
  Complex dtheta;
};

enum class DerivativeKind { analytic, finite_difference };

/// Central-difference steps in r and theta.
struct FdSteps {
  double h_r;
  double h_theta;

  /// h_r = 1e-5 max(r, 1e-3), h_theta = 1e-5. Near the origin (r < 2e-8) the
  /// floor would push the stencil through 0, so h_r falls back to 1e-5 r; near
  /// the rim h_r is capped at (1 - r)/2.
  static FdSteps defaults(double r) noexcept;
};

/// Values below -kJacobianTolerance are treated as a broken regularity contract.
inline constexpr double kJacobianTolerance = 1e-12;

/// A map of the punctured unit disc evaluated in polar coordinates.
///
/// Evaluations are pure: the stored callables must not mutate shared state, so
/// one model can be used from several threads at once.
class MappingModel {
 public:
  using ValueFn = std::function<Complex(const PolarPoint&)>;
  using PartialsFn = std::function<Partials(const PolarPoint&)>;

  static MappingModel analytic(std::string label, ValueFn value, PartialsFn partials);
  static MappingModel finite_difference(std::string label, ValueFn value);

  Complex value(const PolarPoint& z) const { return value_(z); }
  Partials partials(const PolarPoint& z) const;

  DerivativeKind derivative_kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }
  const ValueFn& value_fn() const noexcept { return value_; }

 private:
  MappingModel(std::string label, ValueFn value, PartialsFn partials, DerivativeKind kind)
      : label_(std::move(label)), value_(std::move(value)), partials_(std::move(partials)), kind_(kind) {}

  std::string label_;
  ValueFn value_;
  PartialsFn partials_;
  DerivativeKind kind_;
};

/// J_f = (1/r) Im(conj(f_r) f_theta).
///
/// Throws NonFiniteDerivative for non-finite partials and DegenerateJacobian
/// when the result is below -kJacobianTolerance. Values in
/// (-kJacobianTolerance, 0] are clamped to 0.
double jacobian(const Partials& d, double r);
double jacobian(const MappingModel& map, const PolarPoint& z);

/// Central differences of a value-only map. Throws StepTooLarge when the
/// radial stencil leaves (0,1).
Partials finite_difference_partials(const MappingModel::ValueFn& value, const PolarPoint& z,
                                    FdSteps steps);

struct ModulusRange {
  double min;  // l_f(r)
  double max;  // L_f(r)
};

/// min and max of |f| over n_theta equispaced points of the circle |z| = r.
ModulusRange min_max_modulus(const MappingModel& map, double r, int n_theta = 2048);

}  // namespace dilatox
