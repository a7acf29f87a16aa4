#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dilatox/catalog.hpp"
#include "dilatox/verifier.hpp"

namespace dilatox {

/// Radially symmetric coefficient sigma(r) and exponent m >= 0 of
/// f_r = sigma |f_theta|^m f_theta.
class SigmaCoefficient {
 public:
  using Fn = std::function<Complex(double r)>;

  SigmaCoefficient(std::string family, Fn sigma, double m);

  /// sigma = -i / (kappa r^{m+1}); the exact solution is kappa^{1/m} r e^{i theta}.
  static SigmaCoefficient power(double kappa, double m);

  /// Samples (r, Re sigma, Im sigma). sigma r^{m+1} is interpolated
  /// componentwise by PCHIP and held constant outside the sampled range.
  static SigmaCoefficient custom_radial(std::vector<std::array<double, 3>> samples, double m);

  /// {"family": "power", "kappa": k, "m": m} or
  /// {"family": "custom_radial", "m": m, "samples": [[r, re, im], ...]}.
  /// `m` overrides (or supplies) the exponent of a custom_radial document.
  static SigmaCoefficient from_json(const nlohmann::json& doc, std::optional<double> m = std::nullopt);

  Complex operator()(double r) const { return sigma_(r); }
  double m() const noexcept { return m_; }
  const std::string& family() const noexcept { return family_; }
  /// kappa for the power family, nullopt otherwise.
  std::optional<double> kappa() const noexcept { return kappa_; }

  /// Im(conj(sigma(r))) = -Im sigma(r).
  double imag_conj(double r) const { return -sigma_(r).imag(); }

  nlohmann::json to_json() const;

 private:
  std::string family_;
  Fn sigma_;
  double m_;
  std::optional<double> kappa_;
  std::vector<std::array<double, 3>> samples_;
};

struct RadialSolution {
  RadialProfile profile;
  std::vector<double> grid;
  std::vector<double> values;
  double residual_max = 0.0;
  /// R > 1 somewhere on the span: the solution leaves the unit disc.
  bool exits_disc = false;
};

struct SolveOptions {
  double r0 = 0.5;
  double R0 = 0.5;
  double r_lo = 0.05;
  double r_hi = 0.95;
  double step = 1e-3;
};

/// Classical RK4 for R' = Re(i sigma(r)) R^{m+1}, forward and backward from
/// (r0, R0). Throws ComplexDrift when i sigma is not real on the span and
/// BlowUp when R stops being finite.
RadialSolution solve_radial(const SigmaCoefficient& coef, const SolveOptions& opt);

/// f = R(r) e^{i theta} built from a solved profile, with analytic partials.
CatalogEntry solution_map(const RadialSolution& sol, std::string label = "beltrami_solution");

/// sup |f_r - sigma |f_theta|^m f_theta| over radii x n_theta equispaced angles.
double residual_check(const MappingModel& map, const SigmaCoefficient& coef, std::span<const double> radii,
                      int n_theta = 16);

/// D_{m+2} = 1 / (r^{m+1} Im(conj sigma)), independent of the solution.
double dilatation_from_sigma(const SigmaCoefficient& coef, const PolarPoint& z);

struct SigmaCondition {
  LimitProxy sigma0;           // liminf proxy of the disc means
  std::vector<double> radii;   // ladder rungs
  std::vector<double> means;   // (1/pi r^2 \iint dxdy / (|z| (Im conj sigma)^{1/(m+1)}))^{m+1}
  bool divergent = false;
};

SigmaCondition condition_sigma0(const SigmaCoefficient& coef, const RadiusLadder& ladder,
                                const QuadratureConfig& cfg);

/// Cartesian form f_zbar = ((B - 1)/(B + 1)) (z / zbar) f_z with
/// A = sigma |z| i and B = A |z f_z - zbar f_zbar|^m.
struct CartesianCoefficients {
  Complex A;
  Complex B;
  Complex factor;                 // (B - 1)/(B + 1) z / zbar
  std::optional<Complex> mu;      // m = 0 only
  std::optional<double> K_mu;     // m = 0 and |mu| < 1
};

/// `w` is z f_z - zbar f_zbar (equal to -i f_theta).
CartesianCoefficients to_cartesian(const SigmaCoefficient& coef, const PolarPoint& z, Complex w);

struct WirtingerPair {
  Complex f_z;
  Complex f_zbar;
};

/// f_z = e^{-i theta}(f_r - i f_theta / r)/2, f_zbar = e^{i theta}(f_r + i f_theta / r)/2.
WirtingerPair polar_to_cartesian(const Partials& d, const PolarPoint& z);

/// f_zbar - ((B - 1)/(B + 1)) (z / zbar) f_z.
Complex cartesian_residual(const SigmaCoefficient& coef, const PolarPoint& z, const WirtingerPair& w);

struct NbBound {
  SigmaCondition condition;
  double c = 0.0;         // c_{m+2}
  double bound = 0.0;     // c_{m+2} sigma_0^{1/m}
  LimitProxy attained;    // liminf proxy of l_f(r)/r
  BoundReport report;
};

/// liminf |f|/|z| <= c_{m+2} sigma_0^{1/m} for a solution with m > 0.
NbBound theorem_nb_bound(const SigmaCoefficient& coef, const MappingModel& solution, const RadiusLadder& ladder,
                         const QuadratureConfig& cfg);

}  // namespace dilatox
