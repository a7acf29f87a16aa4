#include "dilatox/beltrami.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "dilatox/error.hpp"

namespace dilatox {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr double kBlowUp = 1e150;
constexpr double kDenominatorFloor = 1e-14;

void require_m(double m) {
  if (!(m >= 0.0) || !std::isfinite(m)) fail(ErrorCode::InvalidArgument, "Beltrami exponent m must be finite and >= 0");
}

}  // namespace

SigmaCoefficient::SigmaCoefficient(std::string family, Fn sigma, double m)
    : family_(std::move(family)), sigma_(std::move(sigma)), m_(m) {
  require_m(m);
  if (!sigma_) fail(ErrorCode::InvalidArgument, "sigma must be callable");
}

SigmaCoefficient SigmaCoefficient::power(double kappa, double m) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) fail(ErrorCode::InvalidArgument, "power family needs kappa > 0");
  require_m(m);
  SigmaCoefficient c("power", [kappa, m](double r) { return -kI / (kappa * std::pow(r, m + 1.0)); }, m);
  c.kappa_ = kappa;
  return c;
}

SigmaCoefficient SigmaCoefficient::custom_radial(std::vector<std::array<double, 3>> samples, double m) {
  require_m(m);
  if (samples.size() < 2) fail(ErrorCode::InvalidArgument, "custom_radial needs at least two samples");
  std::vector<double> r, re, im;
  for (const auto& [ri, a, b] : samples) {
    if (!(ri > 0.0) || !(ri < 1.0)) fail(ErrorCode::InvalidArgument, "custom_radial radii must lie in (0,1)");
    if (!std::isfinite(a) || !std::isfinite(b)) fail(ErrorCode::InvalidArgument, "custom_radial values must be finite");
    if (!(b < 0.0)) fail(ErrorCode::NonPositiveImag, "custom_radial needs Im(conj(sigma)) > 0 at every sample");
    if (!r.empty() && !(ri > r.back())) fail(ErrorCode::InvalidArgument, "custom_radial radii must increase strictly");
    const double scale = std::pow(ri, m + 1.0);
    r.push_back(ri);
    re.push_back(a * scale);
    im.push_back(b * scale);
  }
  auto slopes_re = fritsch_carlson_slopes(r, re);
  auto slopes_im = fritsch_carlson_slopes(r, im);
  const HermiteSpline tau_re(r, re, std::move(slopes_re));
  const HermiteSpline tau_im(r, im, std::move(slopes_im));
  const double lo = r.front(), hi = r.back();
  SigmaCoefficient c(
      "custom_radial",
      [tau_re, tau_im, lo, hi, m](double t) {
        const double u = std::clamp(t, lo, hi);
        return Complex(tau_re.value(u), tau_im.value(u)) / std::pow(t, m + 1.0);
      },
      m);
  c.samples_ = std::move(samples);
  return c;
}

SigmaCoefficient SigmaCoefficient::from_json(const nlohmann::json& doc, std::optional<double> m) {
  try {
    if (!doc.is_object()) fail(ErrorCode::ParseError, "coefficient document must be an object");
    const auto family = doc.at("family").get<std::string>();
    const double exponent = m ? *m : doc.at("m").get<double>();
    if (family == "power") return power(doc.at("kappa").get<double>(), exponent);
    if (family == "custom_radial") {
      std::vector<std::array<double, 3>> samples;
      for (const auto& row : doc.at("samples")) {
        if (!row.is_array() || row.size() != 3) fail(ErrorCode::ParseError, "custom_radial samples are [r, re, im]");
        samples.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
      }
      return custom_radial(std::move(samples), exponent);
    }
    fail(ErrorCode::ParseError, "unknown coefficient family '" + family + "'");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("coefficient document: ") + e.what());
  }
}

nlohmann::json SigmaCoefficient::to_json() const {
  nlohmann::json j;
  j["family"] = family_;
  j["m"] = m_;
  if (kappa_) j["kappa"] = *kappa_;
  if (!samples_.empty()) j["samples"] = samples_;
  return j;
}

RadialSolution solve_radial(const SigmaCoefficient& coef, const SolveOptions& opt) {
  const double h = opt.step;
  if (!(opt.r_lo > 0.0) || !(opt.r_lo <= opt.r0) || !(opt.r0 <= opt.r_hi) || !(opt.r_hi < 1.0)) {
    fail(ErrorCode::InvalidArgument, "solver needs 0 < r_lo <= r0 <= r_hi < 1");
  }
  if (!(opt.r_lo < opt.r_hi)) fail(ErrorCode::InvalidArgument, "solver span is empty");
  if (!(h > 0.0) || h > opt.r_hi - opt.r_lo) fail(ErrorCode::InvalidArgument, "solver step must lie in (0, span]");
  if (!(opt.R0 > 0.0) || !std::isfinite(opt.R0)) fail(ErrorCode::InvalidArgument, "anchor value R0 must be positive");

  const double m = coef.m();
  // g(r) = i sigma(r), required real and positive.
  const auto g = [&](double r) {
    const Complex s = kI * coef(r);
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) fail(ErrorCode::ComplexDrift, "sigma is not finite");
    if (std::abs(s.imag()) > 1e-12 * std::max(1.0, std::abs(s))) {
      fail(ErrorCode::ComplexDrift, "i*sigma is not real at r = " + std::to_string(r));
    }
    if (!(s.real() > 0.0)) fail(ErrorCode::NonPositiveImag, "Im(conj(sigma)) <= 0 at r = " + std::to_string(r));
    return s.real();
  };
  const auto rhs = [&](double r, double R) { return g(r) * std::pow(R, m + 1.0); };

  // Integrate from the anchor towards `end`; nodes are r0 + j h with a
  // shortened last step.
  const auto sweep = [&](double end) {
    std::vector<std::pair<double, double>> out;
    const double dir = end > opt.r0 ? 1.0 : -1.0;
    const double span = std::abs(end - opt.r0);
    const auto steps = static_cast<long>(std::ceil(span / h - 1e-9));
    double r = opt.r0, R = opt.R0;
    for (long j = 1; j <= steps; ++j) {
      const double next = j == steps ? end : opt.r0 + dir * static_cast<double>(j) * h;
      const double dt = next - r;
      const double k1 = rhs(r, R);
      const double k2 = rhs(r + dt / 2, R + dt / 2 * k1);
      const double k3 = rhs(r + dt / 2, R + dt / 2 * k2);
      const double k4 = rhs(next, R + dt * k3);
      R += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
      r = next;
      if (!std::isfinite(R) || R > kBlowUp) fail(ErrorCode::BlowUp, "solution blows up near r = " + std::to_string(r));
      if (!(R > 0.0)) fail(ErrorCode::BlowUp, "solution leaves R > 0 near r = " + std::to_string(r));
      out.emplace_back(r, R);
    }
    return out;
  };

  auto back = sweep(opt.r_lo);
  auto fwd = sweep(opt.r_hi);
  std::vector<double> grid, values, slopes;
  for (auto it = back.rbegin(); it != back.rend(); ++it) {
    grid.push_back(it->first);
    values.push_back(it->second);
  }
  grid.push_back(opt.r0);
  values.push_back(opt.R0);
  for (const auto& [r, R] : fwd) {
    grid.push_back(r);
    values.push_back(R);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) slopes.push_back(rhs(grid[i], values[i]));

  RadialSolution sol{RadialProfile(HermiteSpline(grid, values, slopes)), grid, values};
  sol.exits_disc = std::any_of(values.begin(), values.end(), [](double v) { return v > 1.0; });

  std::vector<double> check;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) check.push_back(0.5 * (grid[i] + grid[i + 1]));
  sol.residual_max = residual_check(solution_map(sol).map, coef, check, 8);
  return sol;
}

CatalogEntry solution_map(const RadialSolution& sol, std::string label) {
  return catalog::radial(std::move(label), sol.profile);
}

double residual_check(const MappingModel& map, const SigmaCoefficient& coef, std::span<const double> radii,
                      int n_theta) {
  if (n_theta < 1) fail(ErrorCode::InvalidArgument, "residual_check needs n_theta >= 1");
  double worst = 0.0;
  for (double r : radii) {
    const Complex s = coef(r);
    for (int k = 0; k < n_theta; ++k) {
      const PolarPoint z(r, kTwoPi * k / n_theta);
      const auto d = map.partials(z);
      const Complex rho = d.dr - s * std::pow(std::abs(d.dtheta), coef.m()) * d.dtheta;
      const double a = std::abs(rho);
      if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, a);
    }
  }
  return worst;
}

double dilatation_from_sigma(const SigmaCoefficient& coef, const PolarPoint& z) {
  const double im = coef.imag_conj(z.r());
  if (!(im > 0.0)) fail(ErrorCode::NonPositiveImag, "Im(conj(sigma)) <= 0");
  return 1.0 / (std::pow(z.r(), coef.m() + 1.0) * im);
}

SigmaCondition condition_sigma0(const SigmaCoefficient& coef, const RadiusLadder& ladder,
                                const QuadratureConfig& cfg) {
  ladder.validate(cfg);
  // The integrand raised to m+1 is exactly D_{m+2}, so the condition is the
  // disc mean of order p = m + 2.
  const DilatationOrder p(coef.m() + 2.0);
  const CircleFunction q = [&](const PolarPoint& z) { return dilatation_from_sigma(coef, z); };
  SigmaCondition out;
  out.radii = ladder.rungs();
  std::vector<double> sorted(out.radii.rbegin(), out.radii.rend());
  const auto means = disc_means(q, sorted, p, cfg);
  for (auto it = means.rbegin(); it != means.rend(); ++it) {
    out.means.push_back(it->value);
    out.divergent = out.divergent || it->divergent;
  }
  out.sigma0 = limit_proxy(LimitKind::liminf, out.means, ladder);
  return out;
}

CartesianCoefficients to_cartesian(const SigmaCoefficient& coef, const PolarPoint& z, Complex w) {
  CartesianCoefficients c;
  c.A = coef(z.r()) * z.r() * kI;
  c.B = coef.m() == 0.0 ? c.A : c.A * std::pow(std::abs(w), coef.m());
  const Complex den = c.B + 1.0;
  if (std::abs(den) < kDenominatorFloor) fail(ErrorCode::DegenerateDenominator, "A|w|^m + 1 vanishes");
  const Complex zz = z.z();
  const Complex rotation = zz / std::conj(zz);
  c.factor = (c.B - 1.0) / den * rotation;
  if (coef.m() == 0.0) {
    c.mu = c.factor;
    const double a = std::abs(*c.mu);
    if (a < 1.0) c.K_mu = (1.0 + a) / (1.0 - a);
  }
  return c;
}

WirtingerPair polar_to_cartesian(const Partials& d, const PolarPoint& z) {
  const Complex u = z.unit();
  const Complex t = kI * d.dtheta / z.r();
  return {std::conj(u) * (d.dr - t) / 2.0, u * (d.dr + t) / 2.0};
}

Complex cartesian_residual(const SigmaCoefficient& coef, const PolarPoint& z, const WirtingerPair& w) {
  const Complex zz = z.z();
  const Complex wz = zz * w.f_z - std::conj(zz) * w.f_zbar;
  return w.f_zbar - to_cartesian(coef, z, wz).factor * w.f_z;
}

NbBound theorem_nb_bound(const SigmaCoefficient& coef, const MappingModel& solution, const RadiusLadder& ladder,
                         const QuadratureConfig& cfg) {
  if (!(coef.m() > 0.0)) fail(ErrorCode::InvalidArgument, "the Beltrami bound needs m > 0");
  NbBound out;
  out.condition = condition_sigma0(coef, ladder, cfg);
  const double m = coef.m();
  out.c = theorem1_constant(m + 2.0);
  out.bound = out.c * std::pow(out.condition.sigma0.value, 1.0 / m);

  std::vector<double> ratios;
  for (double r : out.condition.radii) ratios.push_back(min_max_modulus(solution, r).min / r);
  out.attained = limit_proxy(LimitKind::liminf, ratios, ladder);

  out.report.check_id = "theorem_nb";
  out.report.p = m + 2.0;
  if (!std::isfinite(out.condition.sigma0.value) || out.condition.divergent) {
    out.report.flag("DivergentMean");
    out.report.flag("vacuous");
    out.report.notes = "condition on sigma fails; bound is vacuous";
    out.report.add(ladder.deepest(), std::numeric_limits<double>::infinity(), 0.0);
    return out;
  }
  out.report.add(ladder.deepest(), out.bound - out.attained.value,
                 inequality_tolerance(out.bound, out.attained.value));
  return out;
}

}  // namespace dilatox
