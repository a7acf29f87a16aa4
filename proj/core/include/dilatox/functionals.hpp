#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dilatox/mapping.hpp"
#include "dilatox/quadrature.hpp"
#include "dilatox/radial_series.hpp"

namespace dilatox {

/// The exponent p > 1 of the p-angular dilatation.
class DilatationOrder {
 public:
  explicit DilatationOrder(double p);

  double value() const noexcept { return p_; }
  /// p' = p / (p - 1).
  double conjugate() const noexcept { return p_ / (p_ - 1.0); }
  /// 1 / (p - 1), the power-mean exponent of q_p.
  double mean_exponent() const noexcept { return 1.0 / (p_ - 1.0); }

 private:
  double p_;
};

enum class GridKind { uniform, log_spaced };

struct QuadratureConfig {
  int n_theta = 512;
  int n_r = 1024;
  GridKind grid_kind = GridKind::log_spaced;
  /// Inner radius of every disc/area quadrature; the origin itself is never sampled.
  double r_min = 1e-4;
  /// Truncation radius of the singular integral over (0, r). The tail below it
  /// is integrated analytically from a fitted power law, so it can sit far
  /// below r_min.
  double eps_trunc = 1e-30;
  /// Upper limit standing in for 1 in integrals over (r, 1).
  double r_outer = 1.0 - 1e-9;
  /// Relative change under r_min -> r_min/2 (disc means) or eps -> eps/2
  /// (inner integrals) above which the result is flagged.
  double truncation_tol = 1e-3;

  void validate() const;
  quad::Variable variable() const noexcept {
    return grid_kind == GridKind::log_spaced ? quad::Variable::log : quad::Variable::linear;
  }
  std::vector<double> grid(std::vector<double> breakpoints) const;
};

using CircleFunction = std::function<double(const PolarPoint&)>;

/// D_p = |f_theta|^p / (r^p J_f); +inf where J_f vanishes.
double angular_dilatation(const Partials& d, double r, DilatationOrder p);
double angular_dilatation(const MappingModel& map, const PolarPoint& z, DilatationOrder p);

/// q_p(r) = ((1/2 pi r) \oint Q^{1/(p-1)} |dz|)^{p-1} by the periodic
/// trapezoid rule.
double circular_mean(const CircleFunction& q, double r, DilatationOrder p, const QuadratureConfig& cfg);

/// d_p(r): circular_mean with Q = D_p of the map.
double dilatation_mean(const MappingModel& map, double r, DilatationOrder p, const QuadratureConfig& cfg);

struct DiscMean {
  double value;             // ((1/pi r^2) \iint_{B_r} Q^{1/(p-1)})^{p-1}
  double truncation_delta;  // relative change when r_min is halved
  bool divergent;           // truncation_delta above cfg.truncation_tol, or infinite
};

/// Disc mean of Q^{1/(p-1)} raised to p-1. The annulus r_min < |z| < r is
/// integrated by nested quadrature; the core disc B_{r_min} is charged with
/// a power law in |z| fitted through the circle means at r_min/2 and r_min
/// (infinite when that power is not integrable).
DiscMean disc_mean(const CircleFunction& q, double r, DilatationOrder p, const QuadratureConfig& cfg);
DiscMean disc_mean(const MappingModel& map, double r, DilatationOrder p, const QuadratureConfig& cfg);

/// disc_mean at several radii (each in (r_min, 1)) from one shared grid.
std::vector<DiscMean> disc_means(const CircleFunction& q, std::span<const double> radii, DilatationOrder p,
                                 const QuadratureConfig& cfg);
std::vector<DiscMean> disc_means(const MappingModel& map, std::span<const double> radii, DilatationOrder p,
                                 const QuadratureConfig& cfg);

/// Integral of Q^{1/(p-1)} over B_r (core + annulus) with the truncation
/// radius `r_min`.
double disc_integral(const CircleFunction& q, double r, DilatationOrder p, double r_min, const QuadratureConfig& cfg);

/// S'(r) = \int_0^{2pi} J_f(r e^{i theta}) r d theta.
double area_rate(const MappingModel& map, double r, const QuadratureConfig& cfg);

/// L(r) = \int_0^{2pi} |f_theta| d theta.
double boundary_length(const MappingModel& map, double r, const QuadratureConfig& cfg);

/// Area enclosed by the image of |z| = r: (1/2) \oint Im(conj(f) f_theta) d theta.
double enclosed_area(const MappingModel& map, double r, const QuadratureConfig& cfg);

/// S(r) = area of f(B_r): enclosed_area at r_min plus \int_{r_min}^r S'(t) dt.
double area(const MappingModel& map, double r, const QuadratureConfig& cfg);

/// S at several radii from one shared radial grid. Radii must be sorted.
std::vector<double> areas(const MappingModel& map, std::span<const double> radii, const QuadratureConfig& cfg);

/// Evaluates f at every grid node, possibly on several threads. The output
/// does not depend on the thread count.
RadialSeries sample_series(std::span<const double> grid, const std::function<double(double)>& f);

RadialSeries dilatation_series(const MappingModel& map, DilatationOrder p, std::span<const double> grid,
                               const QuadratureConfig& cfg);

/// 1 / (t^{p-1} d_p(t)) with d_p = inf -> 0 and d_p = 0 -> inf.
double radial_integrand(double t, double d_p, DilatationOrder p);

/// \int_r^{top} dt / (t^{p-1} d_p(t)) where top is the last grid node of the
/// series (normally cfg.r_outer) and r must be a grid node.
double radial_integral_outer(const RadialSeries& d_p, double r, DilatationOrder p,
                             quad::Variable var = quad::Variable::log);

struct InnerIntegral {
  double value;
  double truncation_error;  // |I(eps) - I(eps/2)|
  bool converged;
};

/// \int_0^r dt / (t^{p-1} d_p(t)) for 1 < p < 2. The series must start at
/// eps/2 and contain eps and r as nodes. Below eps the integrand is taken as
/// the power law through its values at eps/2 and eps.
InnerIntegral radial_integral_inner(const RadialSeries& d_p, double r, DilatationOrder p, double eps,
                                    double truncation_tol = 1e-3, quad::Variable var = quad::Variable::log);

/// Grids for the integrals above: inner_grid spans [eps/2, max radii] and
/// outer_grid spans [min radii, r_outer]; every radius becomes a node.
std::vector<double> inner_grid(std::span<const double> radii, const QuadratureConfig& cfg);
std::vector<double> outer_grid(std::span<const double> radii, const QuadratureConfig& cfg);

/// Convenience wrappers that sample d_p on a fresh grid.
double outer_integral(const MappingModel& map, double r, DilatationOrder p, const QuadratureConfig& cfg);
InnerIntegral inner_integral(const MappingModel& map, double r, DilatationOrder p, const QuadratureConfig& cfg);

}  // namespace dilatox
