#include "dilatox/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dilatox {

FdSteps FdSteps::defaults(double r) noexcept {
  double h_r = 1e-5 * std::max(r, 1e-3);
  if (r - h_r <= 0.5 * r) h_r = 1e-5 * r;
  if (r + h_r >= 1.0) h_r = 0.5 * (1.0 - r);
  return {h_r, 1e-5};
}

MappingModel MappingModel::analytic(std::string label, ValueFn value, PartialsFn partials) {
  if (!value || !partials) fail(ErrorCode::InvalidArgument, "analytic map needs value and partials");
  return MappingModel(std::move(label), std::move(value), std::move(partials), DerivativeKind::analytic);
}

MappingModel MappingModel::finite_difference(std::string label, ValueFn value) {
  if (!value) fail(ErrorCode::InvalidArgument, "map needs a value function");
  return MappingModel(std::move(label), std::move(value), nullptr, DerivativeKind::finite_difference);
}

Partials MappingModel::partials(const PolarPoint& z) const {
  if (kind_ == DerivativeKind::analytic) return partials_(z);
  return finite_difference_partials(value_, z, FdSteps::defaults(z.r()));
}

double jacobian(const Partials& d, double r) {
  if (!std::isfinite(d.dr.real()) || !std::isfinite(d.dr.imag()) || !std::isfinite(d.dtheta.real()) ||
      !std::isfinite(d.dtheta.imag())) {
    fail(ErrorCode::NonFiniteDerivative, "partial derivative is not finite at r=" + std::to_string(r));
  }
  const double j = std::imag(std::conj(d.dr) * d.dtheta) / r;
  if (j <= -kJacobianTolerance) {
    fail(ErrorCode::DegenerateJacobian, "negative Jacobian " + std::to_string(j) + " at r=" + std::to_string(r));
  }
  return std::max(j, 0.0);
}

double jacobian(const MappingModel& map, const PolarPoint& z) { return jacobian(map.partials(z), z.r()); }

Partials finite_difference_partials(const MappingModel::ValueFn& value, const PolarPoint& z, FdSteps steps) {
  const double r = z.r();
  const double t = z.theta();
  if (!(steps.h_r > 0.0) || !(steps.h_theta > 0.0)) {
    fail(ErrorCode::InvalidArgument, "finite-difference steps must be positive");
  }
  if (r - steps.h_r <= 0.0 || r + steps.h_r >= 1.0) {
    fail(ErrorCode::StepTooLarge, "radial stencil leaves the disc at r=" + std::to_string(r));
  }
  const Complex fr = (value(PolarPoint(r + steps.h_r, t)) - value(PolarPoint(r - steps.h_r, t))) / (2.0 * steps.h_r);
  const Complex ft =
      (value(PolarPoint(r, t + steps.h_theta)) - value(PolarPoint(r, t - steps.h_theta))) / (2.0 * steps.h_theta);
  return {fr, ft};
}

ModulusRange min_max_modulus(const MappingModel& map, double r, int n_theta) {
  if (n_theta < 8) fail(ErrorCode::InvalidArgument, "min_max_modulus needs n_theta >= 8");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int j = 0; j < n_theta; ++j) {
    const double a = std::abs(map.value(PolarPoint(r, kTwoPi * j / n_theta)));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return {lo, hi};
}

}  // namespace dilatox
