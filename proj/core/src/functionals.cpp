#include "dilatox/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

namespace dilatox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Mean over the circle |z| = r of g(z), sampled at cfg.n_theta angles.
double circle_average(double r, int n_theta, const std::function<double(const PolarPoint&)>& g) {
  return quad::periodic_mean([&](double theta) { return g(PolarPoint(r, theta)); }, n_theta);
}

double powered_mean(double mean, DilatationOrder p) {
  if (std::isinf(mean)) return kInf;
  return std::pow(mean, p.value() - 1.0);
}

// \int_0^x C t^beta dt = x g(x) / (beta + 1), with C, beta fitted through the
// samples at x/2 and x. +inf when the fitted power is not integrable at 0.
double power_law_core(double x, double g_half, double g_x) {
  if (std::isinf(g_half) || std::isinf(g_x)) return kInf;
  if (!(g_half > 0.0) || !(g_x > 0.0)) return 0.5 * x * g_x;
  const double beta = std::log(g_x / g_half) / std::numbers::ln2;
  return beta > -1.0 ? x * g_x / (beta + 1.0) : kInf;
}

// Disc integrals of Q^{1/(p-1)} truncated at r_min and at r_min/2, for every
// radius, from one shared grid.
struct DiscIntegrals {
  double at_r_min;
  double at_half_r_min;
};

std::vector<DiscIntegrals> disc_integrals(const CircleFunction& q, std::span<const double> radii, DilatationOrder p,
                                          double r_min, const QuadratureConfig& cfg) {
  std::vector<double> bp{0.25 * r_min, 0.5 * r_min, r_min};
  for (double r : radii) {
    if (!(r > r_min) || !(r < 1.0)) fail(ErrorCode::InvalidArgument, "disc integral needs r_min < r < 1");
    bp.push_back(r);
  }
  const double e = p.mean_exponent();
  const auto grid = cfg.grid(bp);
  const auto mean = sample_series(grid, [&](double t) {
    return circle_average(t, cfg.n_theta, [&](const PolarPoint& z) {
      const double v = q(z);
      if (std::isnan(v) || v < 0.0) fail(ErrorCode::InvalidArgument, "Q must be nonnegative");
      return std::isinf(v) ? kInf : std::pow(v, e);
    });
  });
  std::vector<double> integrand(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) integrand[i] = kTwoPi * grid[i] * mean.values()[i];
  const auto var = cfg.variable();
  const std::size_t i_min = quad::node_index(grid, r_min);
  // The core charge for a power-law integrand is exact, so a core that moves
  // between r_min and r_min/2 means the integrand is not yet power-like.
  const std::size_t i_quarter = quad::node_index(grid, 0.25 * r_min);
  const std::size_t i_half = quad::node_index(grid, 0.5 * r_min);
  const double core = power_law_core(r_min, integrand[i_half], integrand[i_min]);
  const double core_half = power_law_core(0.5 * r_min, integrand[i_quarter], integrand[i_half]) +
                           quad::simpson_richardson(grid, integrand, i_half, i_min, var);
  std::vector<DiscIntegrals> out;
  out.reserve(radii.size());
  for (double r : radii) {
    const double annulus = quad::simpson_richardson(grid, integrand, i_min, quad::node_index(grid, r), var);
    out.push_back({core + annulus, core_half + annulus});
  }
  return out;
}

}  // namespace

DilatationOrder::DilatationOrder(double p) : p_(p) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "dilatation order must satisfy p > 1");
}

void QuadratureConfig::validate() const {
  if (n_theta < 16 || n_theta % 2) fail(ErrorCode::InvalidArgument, "n_theta must be even and >= 16");
  if (n_r < 16) fail(ErrorCode::InvalidArgument, "n_r must be >= 16");
  if (!(eps_trunc > 0.0)) fail(ErrorCode::InvalidArgument, "eps_trunc must be positive");
  if (!(r_min > 0.0) || !(r_min < 1.0)) fail(ErrorCode::InvalidArgument, "r_min must lie in (0,1)");
  if (!(r_outer > r_min) || !(r_outer < 1.0)) fail(ErrorCode::InvalidArgument, "r_outer must lie in (r_min,1)");
  if (!(truncation_tol > 0.0)) fail(ErrorCode::InvalidArgument, "truncation_tol must be positive");
}

std::vector<double> QuadratureConfig::grid(std::vector<double> breakpoints) const {
  return grid_kind == GridKind::log_spaced ? quad::log_grid(std::move(breakpoints), n_r)
                                           : quad::uniform_grid(std::move(breakpoints), n_r);
}

double angular_dilatation(const Partials& d, double r, DilatationOrder p) {
  const double j = jacobian(d, r);
  const double ft = std::abs(d.dtheta);
  if (j == 0.0) return kInf;
  return std::pow(ft / r, p.value()) / j;
}

double angular_dilatation(const MappingModel& map, const PolarPoint& z, DilatationOrder p) {
  return angular_dilatation(map.partials(z), z.r(), p);
}

double circular_mean(const CircleFunction& q, double r, DilatationOrder p, const QuadratureConfig& cfg) {
  if (!(r > 0.0) || !(r < 1.0)) fail(ErrorCode::OutOfDomain, "circular_mean needs r in (0,1)");
  const double e = p.mean_exponent();
  const double mean = circle_average(r, cfg.n_theta, [&](const PolarPoint& z) {
    const double v = q(z);
    if (std::isnan(v) || v < 0.0) fail(ErrorCode::InvalidArgument, "Q must be nonnegative");
    return std::isinf(v) ? kInf : std::pow(v, e);
  });
  return powered_mean(mean, p);
}

double dilatation_mean(const MappingModel& map, double r, DilatationOrder p, const QuadratureConfig& cfg) {
  return circular_mean([&](const PolarPoint& z) { return angular_dilatation(map, z, p); }, r, p, cfg);
}

double disc_integral(const CircleFunction& q, double r, DilatationOrder p, double r_min,
                     const QuadratureConfig& cfg) {
  const double radii[] = {r};
  return disc_integrals(q, radii, p, r_min, cfg).front().at_r_min;
}

std::vector<DiscMean> disc_means(const CircleFunction& q, std::span<const double> radii, DilatationOrder p,
                                 const QuadratureConfig& cfg) {
  const auto integrals = disc_integrals(q, radii, p, cfg.r_min, cfg);
  std::vector<DiscMean> out;
  out.reserve(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double area = kPi * radii[i] * radii[i];
    const double value = powered_mean(integrals[i].at_r_min / area, p);
    const double refined = powered_mean(integrals[i].at_half_r_min / area, p);
    double delta = 0.0;
    if (std::isinf(value) || std::isinf(refined)) {
      delta = kInf;
    } else if (value > 0.0) {
      delta = std::abs(refined - value) / value;
    }
    out.push_back({value, delta, !(delta <= cfg.truncation_tol)});
  }
  return out;
}

std::vector<DiscMean> disc_means(const MappingModel& map, std::span<const double> radii, DilatationOrder p,
                                 const QuadratureConfig& cfg) {
  return disc_means([&](const PolarPoint& z) { return angular_dilatation(map, z, p); }, radii, p, cfg);
}

DiscMean disc_mean(const CircleFunction& q, double r, DilatationOrder p, const QuadratureConfig& cfg) {
  const double radii[] = {r};
  return disc_means(q, radii, p, cfg).front();
}

DiscMean disc_mean(const MappingModel& map, double r, DilatationOrder p, const QuadratureConfig& cfg) {
  return disc_mean([&](const PolarPoint& z) { return angular_dilatation(map, z, p); }, r, p, cfg);
}

double area_rate(const MappingModel& map, double r, const QuadratureConfig& cfg) {
  return kTwoPi * r * circle_average(r, cfg.n_theta, [&](const PolarPoint& z) { return jacobian(map, z); });
}

double boundary_length(const MappingModel& map, double r, const QuadratureConfig& cfg) {
  return kTwoPi *
         circle_average(r, cfg.n_theta, [&](const PolarPoint& z) { return std::abs(map.partials(z).dtheta); });
}

double enclosed_area(const MappingModel& map, double r, const QuadratureConfig& cfg) {
  return kPi * circle_average(r, cfg.n_theta, [&](const PolarPoint& z) {
           return std::imag(std::conj(map.value(z)) * map.partials(z).dtheta);
         });
}

std::vector<double> areas(const MappingModel& map, std::span<const double> radii, const QuadratureConfig& cfg) {
  std::vector<double> out(radii.size());
  std::vector<double> breakpoints{cfg.r_min};
  for (double r : radii) {
    if (!(r > 0.0) || !(r < 1.0)) fail(ErrorCode::OutOfDomain, "area needs r in (0,1)");
    if (r > cfg.r_min) breakpoints.push_back(r);
  }
  if (breakpoints.size() == 1) {
    for (std::size_t i = 0; i < radii.size(); ++i) out[i] = enclosed_area(map, radii[i], cfg);
    return out;
  }
  const auto grid = cfg.grid(breakpoints);
  const auto rate = sample_series(grid, [&](double t) { return area_rate(map, t, cfg); });
  const double core = enclosed_area(map, cfg.r_min, cfg);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= cfg.r_min) {
      out[i] = enclosed_area(map, radii[i], cfg);
      continue;
    }
    out[i] = core + quad::simpson_richardson(grid, rate.values(), 0, quad::node_index(grid, radii[i]), cfg.variable());
  }
  return out;
}

double area(const MappingModel& map, double r, const QuadratureConfig& cfg) {
  const double radii[] = {r};
  return areas(map, radii, cfg).front();
}

RadialSeries sample_series(std::span<const double> grid, const std::function<double(double)>& f) {
  std::vector<double> values(grid.size());
  const std::size_t n = grid.size();
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, n / 32 + 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) values[i] = f(grid[i]);
    return RadialSeries(std::vector<double>(grid.begin(), grid.end()), std::move(values));
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += workers) values[i] = f(grid[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return RadialSeries(std::vector<double>(grid.begin(), grid.end()), std::move(values));
}

RadialSeries dilatation_series(const MappingModel& map, DilatationOrder p, std::span<const double> grid,
                               const QuadratureConfig& cfg) {
  return sample_series(grid, [&](double t) { return dilatation_mean(map, t, p, cfg); });
}

double radial_integrand(double t, double d_p, DilatationOrder p) {
  if (std::isinf(d_p)) return 0.0;
  if (d_p == 0.0) return kInf;
  return std::pow(t, 1.0 - p.value()) / d_p;
}

double radial_integral_outer(const RadialSeries& d_p, double r, DilatationOrder p, quad::Variable var) {
  if (!(r < 1.0) || d_p.size() == 0 || !(r < d_p.back_radius())) {
    fail(ErrorCode::EmptyRange, "outer integral needs r below the top of the series");
  }
  const auto grid = d_p.grid();
  std::vector<double> g(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) g[i] = radial_integrand(grid[i], d_p.values()[i], p);
  return quad::simpson_richardson(grid, g, quad::node_index(grid, r), grid.size() - 1, var);
}

InnerIntegral radial_integral_inner(const RadialSeries& d_p, double r, DilatationOrder p, double eps,
                                    double truncation_tol, quad::Variable var) {
  if (!(p.value() < 2.0)) fail(ErrorCode::InvalidArgument, "inner integral needs 1 < p < 2");
  const auto grid = d_p.grid();
  if (d_p.size() < 3 || std::abs(grid.front() - 0.5 * eps) > 1e-12 * eps) {
    fail(ErrorCode::InvalidArgument, "inner integral series must start at eps/2");
  }
  const std::size_t i_eps = quad::node_index(grid, eps);
  const std::size_t i_r = quad::node_index(grid, r);
  if (i_r <= i_eps) fail(ErrorCode::EmptyRange, "inner integral needs r > eps");

  std::vector<double> g(grid.size());
  for (std::size_t i = 0; i <= i_r; ++i) g[i] = radial_integrand(grid[i], d_p.values()[i], p);
  const double g_half = g[0];
  const double g_eps = g[i_eps];
  const double body_eps = quad::simpson_richardson(grid, g, i_eps, i_r, var);
  const double body_half = quad::simpson_richardson(grid, g, 0, i_r, var);
  if (std::isinf(body_half) || std::isinf(body_eps)) return {kInf, 0.0, true};

  // Tail \int_0^x C t^beta dt = x g(x) / (beta + 1).
  double tail_eps = 0.0;
  double tail_half = 0.0;
  bool tail_ok = true;
  if (g_half > 0.0 && g_eps > 0.0) {
    const double beta = std::log(g_eps / g_half) / std::log(grid[i_eps] / grid[0]);
    if (beta > -1.0) {
      tail_eps = grid[i_eps] * g_eps / (beta + 1.0);
      tail_half = grid[0] * g_half / (beta + 1.0);
    } else {
      tail_ok = false;
    }
  }
  const double coarse = body_eps + tail_eps;
  const double fine = body_half + tail_half;
  const double err = std::abs(fine - coarse);
  const bool converged = tail_ok && err <= truncation_tol * std::max(std::abs(fine), 1e-300);
  return {fine, err, converged};
}

std::vector<double> inner_grid(std::span<const double> radii, const QuadratureConfig& cfg) {
  std::vector<double> bp{0.5 * cfg.eps_trunc, cfg.eps_trunc};
  for (double r : radii) {
    if (!(r > cfg.eps_trunc)) fail(ErrorCode::InvalidArgument, "inner grid radii must exceed eps_trunc");
    bp.push_back(r);
  }
  return cfg.grid(std::move(bp));
}

std::vector<double> outer_grid(std::span<const double> radii, const QuadratureConfig& cfg) {
  std::vector<double> bp{cfg.r_outer};
  for (double r : radii) {
    if (!(r > 0.0) || !(r < cfg.r_outer)) fail(ErrorCode::EmptyRange, "outer grid radii must lie in (0, r_outer)");
    bp.push_back(r);
  }
  return cfg.grid(std::move(bp));
}

double outer_integral(const MappingModel& map, double r, DilatationOrder p, const QuadratureConfig& cfg) {
  const double radii[] = {r};
  const auto series = dilatation_series(map, p, outer_grid(radii, cfg), cfg);
  return radial_integral_outer(series, r, p, cfg.variable());
}

InnerIntegral inner_integral(const MappingModel& map, double r, DilatationOrder p, const QuadratureConfig& cfg) {
  const double radii[] = {r};
  const auto series = dilatation_series(map, p, inner_grid(radii, cfg), cfg);
  return radial_integral_inner(series, r, p, cfg.eps_trunc, cfg.truncation_tol, cfg.variable());
}

}  // namespace dilatox
