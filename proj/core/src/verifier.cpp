#include "dilatox/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace dilatox {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

BoundReport make_report(std::string id, double p) {
  BoundReport rep;
  rep.check_id = std::move(id);
  rep.p = p;
  return rep;
}

std::vector<double> ascending(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// S at each rung, in rung order.
std::vector<double> rung_areas(const MappingModel& map, const std::vector<double>& rungs, const QuadratureConfig& cfg) {
  const auto sorted = ascending(rungs);
  const auto s = areas(map, sorted, cfg);
  std::vector<double> out(rungs.size());
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), rungs[i]);
    out[i] = s[static_cast<std::size_t>(it - sorted.begin())];
  }
  return out;
}

std::vector<ModulusRange> rung_moduli(const MappingModel& map, const std::vector<double>& rungs) {
  std::vector<ModulusRange> out;
  out.reserve(rungs.size());
  for (double r : rungs) out.push_back(min_max_modulus(map, r));
  return out;
}

void require_range(DilatationOrder p, double lo, double hi, const char* what) {
  if (!(p.value() > lo) || !(p.value() < hi)) fail(ErrorCode::InvalidArgument, what);
}

// d_p series and the inner integral at every rung.
std::vector<InnerIntegral> rung_inner_integrals(const MappingModel& map, DilatationOrder p,
                                                const std::vector<double>& rungs, const QuadratureConfig& cfg) {
  const auto series = dilatation_series(map, p, inner_grid(rungs, cfg), cfg);
  std::vector<InnerIntegral> out;
  out.reserve(rungs.size());
  for (double r : rungs) {
    out.push_back(radial_integral_inner(series, r, p, cfg.eps_trunc, cfg.truncation_tol, cfg.variable()));
  }
  return out;
}

std::vector<double> rung_outer_integrals(const MappingModel& map, DilatationOrder p, const std::vector<double>& rungs,
                                         const QuadratureConfig& cfg) {
  const auto series = dilatation_series(map, p, outer_grid(rungs, cfg), cfg);
  std::vector<double> out;
  out.reserve(rungs.size());
  for (double r : rungs) out.push_back(radial_integral_outer(series, r, p, cfg.variable()));
  return out;
}

// r^{p-2} \int_r^1 dt / (t^{p-1} d_p) for p > 2.
std::vector<double> outer_k0(const MappingModel& map, DilatationOrder p, const std::vector<double>& rungs,
                             const QuadratureConfig& cfg) {
  auto v = rung_outer_integrals(map, p, rungs, cfg);
  for (std::size_t i = 0; i < rungs.size(); ++i) v[i] *= std::pow(rungs[i], p.value() - 2.0);
  return v;
}

struct InnerK0 {
  std::vector<double> values;
  bool converged = true;
};

InnerK0 inner_k0(const MappingModel& map, DilatationOrder p, const std::vector<double>& rungs,
                 const QuadratureConfig& cfg) {
  InnerK0 out;
  const auto ints = rung_inner_integrals(map, p, rungs, cfg);
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    out.values.push_back(std::pow(rungs[i], p.value() - 2.0) * ints[i].value);
    out.converged = out.converged && ints[i].converged;
  }
  return out;
}

}  // namespace

void RadiusLadder::validate(const QuadratureConfig& cfg) const {
  if (!(rho > 0.0) || !(rho < 1.0)) fail(ErrorCode::InvalidArgument, "ladder ratio must lie in (0,1)");
  if (!(r_max > 0.0) || !(r_max < 1.0)) fail(ErrorCode::InvalidArgument, "ladder r_max must lie in (0,1)");
  if (tail < 3 || count < tail) fail(ErrorCode::InvalidArgument, "ladder needs count >= tail >= 3");
  if (deepest() < cfg.r_min) fail(ErrorCode::InvalidArgument, "deepest ladder rung lies below r_min");
}

std::vector<double> RadiusLadder::rungs() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = r_max * std::pow(rho, j);
  return out;
}

double RadiusLadder::deepest() const { return r_max * std::pow(rho, count - 1); }

LimitProxy limit_proxy(LimitKind kind, const std::vector<double>& values, const RadiusLadder& ladder) {
  if (values.size() < static_cast<std::size_t>(ladder.tail) || ladder.tail < 1) {
    fail(ErrorCode::InvalidArgument, "limit proxy needs at least `tail` values");
  }
  const auto first = values.end() - ladder.tail;
  const auto [lo, hi] = std::minmax_element(first, values.end());
  const double spread = (std::isinf(*hi) && std::isinf(*lo)) ? 0.0 : *hi - *lo;
  return {kind, kind == LimitKind::liminf ? *lo : *hi, spread};
}

double inequality_tolerance(double a, double b) {
  const double m = std::max(std::abs(a), std::abs(b));
  return 1e-9 + 1e-6 * (std::isfinite(m) ? m : 0.0);
}

void BoundReport::add(double r, double slack, double tolerance) {
  radii.push_back(r);
  margins.push_back(slack);
  if (margins.size() == 1 || slack < margin) margin = slack;
  if (!(slack >= -tolerance)) holds = false;
}

void BoundReport::flag(const std::string& f) {
  if (!has_flag(f)) flags.push_back(f);
}

bool BoundReport::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

BoundReport check_lemma1(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                         const QuadratureConfig& cfg) {
  ladder.validate(cfg);
  const double q = p.value();
  BoundReport rep = make_report("lemma1", q);
  const auto rungs = ladder.rungs();
  const auto s = rung_areas(map, rungs, cfg);
  double holder_min = kInf;
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const double r = rungs[i];
    const double rate = area_rate(map, r, cfg);
    const double d = dilatation_mean(map, r, p, cfg);
    const double len = boundary_length(map, r, cfg);
    const double inv_d = std::isinf(d) ? 0.0 : 1.0 / d;
    const double rhs = 2.0 * std::pow(kPi, (2.0 - q) / 2.0) * std::pow(r, 1.0 - q) * inv_d * std::pow(s[i], q / 2.0);
    const double holder_rhs = std::pow(len, q) / std::pow(kTwoPi * r, q - 1.0) * inv_d;
    const double holder_slack = rate - holder_rhs;
    holder_min = std::min(holder_min, holder_slack);
    if (!(holder_slack >= -inequality_tolerance(rate, holder_rhs))) {
      rep.holds = false;
      rep.flag("HolderStepViolated");
    }
    rep.add(r, rate - rhs, inequality_tolerance(rate, rhs));
  }
  rep.notes = "min slack of S' >= L^p/((2 pi r)^{p-1} d_p): " + std::to_string(holder_min);
  return rep;
}

BoundReport check_length_area(const MappingModel& map, DilatationOrder p, double r1, double r2,
                              const QuadratureConfig& cfg) {
  if (!(r1 > 0.0) || !(r1 < r2) || !(r2 < 1.0)) fail(ErrorCode::InvalidArgument, "need 0 < r1 < r2 < 1");
  const double q = p.value();
  BoundReport rep = make_report("length_area", q);
  const auto grid = cfg.grid({r1, r2});
  const auto integrand = sample_series(grid, [&](double t) {
    const double d = dilatation_mean(map, t, p, cfg);
    if (std::isinf(d)) return 0.0;
    return std::pow(boundary_length(map, t, cfg), q) / (std::pow(kTwoPi * t, q - 1.0) * d);
  });
  const double lhs = quad::simpson_richardson(grid, integrand.values(), 0, grid.size() - 1, cfg.variable());
  const double radii[] = {r1, r2};
  const auto s = areas(map, radii, cfg);
  const double gain = s[1] - s[0];
  rep.add(r2, gain - lhs, inequality_tolerance(gain, lhs));
  rep.radii = {r1, r2};
  rep.notes = "integral " + std::to_string(lhs) + " vs S(r2)-S(r1) " + std::to_string(gain);
  return rep;
}

BoundReport check_lemma2(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                         const QuadratureConfig& cfg) {
  require_range(p, 2.0, kInf, "lemma 2 needs p > 2");
  ladder.validate(cfg);
  const double q = p.value();
  BoundReport rep = make_report("lemma2", q);
  const auto rungs = ladder.rungs();
  const auto integrals = rung_outer_integrals(map, p, rungs, cfg);
  const auto s = rung_areas(map, rungs, cfg);
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const double e = -2.0 / (q - 2.0);
    const double bound = kPi * std::pow(q - 2.0, e) * std::pow(integrals[i], e);
    rep.add(rungs[i], bound - s[i], inequality_tolerance(bound, s[i]));
  }
  return rep;
}

namespace {

struct Slack {
  double value;
  double tolerance;
};

Slack lemma3_slack(const CircleFunction& qfn, DilatationOrder p, double eps, const QuadratureConfig& cfg) {
  if (!(eps > 0.0) || eps > 0.5) fail(ErrorCode::InvalidArgument, "lemma 3 needs eps in (0, 1/2]");
  const double q = p.value();
  const double top = std::min(2.0 * eps, cfg.r_outer);
  const auto grid = cfg.grid({eps, top});
  const auto integrand = sample_series(grid, [&](double t) {
    return radial_integrand(t, circular_mean(qfn, t, p, cfg), p);
  });
  const double integral = quad::simpson_richardson(grid, integrand.values(), 0, grid.size() - 1, cfg.variable());
  const double lhs = 1.0 / integral;
  const double r_min = std::min(cfg.r_min, 0.5 * eps);
  const double mass = disc_integral(qfn, top, p, r_min, cfg);
  const double rhs =
      std::pow(2.0, q - 1.0) * std::pow(eps, q - 2.0) * std::pow(mass / (4.0 * kPi * eps * eps), q - 1.0);
  return {rhs - lhs, inequality_tolerance(rhs, lhs)};
}

}  // namespace

BoundReport check_lemma3(const CircleFunction& qfn, DilatationOrder p, double eps, const QuadratureConfig& cfg) {
  BoundReport rep = make_report("lemma3", p.value());
  const auto s = lemma3_slack(qfn, p, eps, cfg);
  rep.add(eps, s.value, s.tolerance);
  return rep;
}

BoundReport check_lemma3(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                         const QuadratureConfig& cfg) {
  ladder.validate(cfg);
  const double q = p.value();
  BoundReport rep = make_report("lemma3", q);
  const CircleFunction qfn = [&](const PolarPoint& z) { return angular_dilatation(map, z, p); };

  // All rungs share one radial grid through every eps and 2 eps.
  QuadratureConfig local = cfg;
  local.r_min = std::min(cfg.r_min, 0.5 * ladder.deepest());
  std::vector<double> eps, radii;
  for (double e : ladder.rungs()) {
    if (e > 0.5) continue;
    eps.push_back(e);
    radii.push_back(e);
    radii.push_back(std::min(2.0 * e, cfg.r_outer));
  }
  if (eps.empty()) return rep;
  radii = ascending(radii);
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  const auto means = disc_means(qfn, radii, p, local);
  const auto grid = local.grid(radii);
  const auto integrand = sample_series(grid, [&](double t) {
    return radial_integrand(t, circular_mean(qfn, t, p, local), p);
  });
  for (double e : eps) {
    const double top = std::min(2.0 * e, cfg.r_outer);
    const double integral = quad::simpson_richardson(grid, integrand.values(), quad::node_index(grid, e),
                                          quad::node_index(grid, top), local.variable());
    const double lhs = 1.0 / integral;
    const auto it = std::lower_bound(radii.begin(), radii.end(), top * (1.0 - 1e-12));
    const double mean = means[static_cast<std::size_t>(it - radii.begin())].value;
    // (1/(4 pi eps^2)) \iint_{B_top} Q^{1/(p-1)} = (top/(2 eps))^2 M(top)^{1/(p-1)}
    const double scaled = (top * top) / (4.0 * e * e) * std::pow(mean, 1.0 / (q - 1.0));
    const double rhs = std::pow(2.0, q - 1.0) * std::pow(e, q - 2.0) * std::pow(scaled, q - 1.0);
    rep.add(e, rhs - lhs, inequality_tolerance(rhs, lhs));
  }
  return rep;
}

BoundReport check_lemma4(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                         const QuadratureConfig& cfg) {
  require_range(p, 1.0, 2.0, "lemma 4 needs 1 < p < 2");
  ladder.validate(cfg);
  const double q = p.value();
  BoundReport rep = make_report("lemma4", q);
  const auto rungs = ladder.rungs();
  const auto ints = rung_inner_integrals(map, p, rungs, cfg);
  const auto s = rung_areas(map, rungs, cfg);
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const double e = 2.0 / (2.0 - q);
    const double bound = kPi * std::pow(2.0 - q, e) * std::pow(ints[i].value, e);
    rep.add(rungs[i], s[i] - bound, inequality_tolerance(s[i], bound));
    if (!ints[i].converged) rep.flag("NonConvergent");
  }
  return rep;
}

BoundReport check_convergence(const MappingModel& map, DilatationOrder p, const std::vector<double>& radii,
                              const QuadratureConfig& cfg) {
  require_range(p, 1.0, 2.0, "convergence corollary needs 1 < p < 2");
  const double q = p.value();
  BoundReport rep = make_report("convergence", q);
  const auto sorted = ascending(radii);
  const auto ints = rung_inner_integrals(map, p, sorted, cfg);
  const double cap = 1.0 / (2.0 - q);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    rep.add(sorted[i], cap - ints[i].value, 1e-6);
    if (!ints[i].converged) rep.flag("NonConvergent");
  }
  return rep;
}

double theorem1_constant(double p) {
  if (!(p > 2.0)) fail(ErrorCode::InvalidArgument, "c_p is defined for p > 2");
  return std::pow(2.0, (p - 1.0) / (p - 2.0)) * std::pow(p - 2.0, -1.0 / (p - 2.0));
}

Theorem1Result theorem1_bound(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                              const QuadratureConfig& cfg) {
  require_range(p, 2.0, kInf, "theorem 1 needs p > 2");
  ladder.validate(cfg);
  const double q = p.value();
  Theorem1Result res;
  res.report = make_report("theorem1", q);
  res.c_p = theorem1_constant(q);
  const auto rungs = ladder.rungs();

  // Disc means at every rung and at twice every rung that stays inside the disc.
  std::vector<double> radii = rungs;
  for (double r : rungs) {
    if (2.0 * r < cfg.r_outer) radii.push_back(2.0 * r);
  }
  radii = ascending(radii);
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  const auto means = disc_means(map, radii, p, cfg);
  const auto mean_at = [&](double r) {
    const auto it = std::lower_bound(radii.begin(), radii.end(), r * (1.0 - 1e-12));
    return means[static_cast<std::size_t>(it - radii.begin())];
  };

  std::vector<double> k_values, ratios;
  bool divergent = false;
  for (double r : rungs) {
    const auto m = mean_at(r);
    divergent = divergent || m.divergent;
    k_values.push_back(m.value);
  }
  const auto mods = rung_moduli(map, rungs);
  for (std::size_t i = 0; i < rungs.size(); ++i) ratios.push_back(mods[i].min / rungs[i]);

  // Growth signature of a mean that blows up as r -> 0: strictly increasing
  // along the tail and at least doubled over the ladder.
  bool increasing = true;
  for (std::size_t i = rungs.size() - static_cast<std::size_t>(ladder.tail); i + 1 < rungs.size(); ++i) {
    increasing = increasing && k_values[i + 1] > k_values[i];
  }
  if (increasing && k_values.back() >= 2.0 * k_values.front()) divergent = true;

  res.k = limit_proxy(LimitKind::liminf, k_values, ladder);
  res.attained = limit_proxy(LimitKind::liminf, ratios, ladder);
  const double e = 1.0 / (q - 2.0);
  res.bound = res.c_p * std::pow(res.k.value, e);

  // Pointwise chain l_f(r)/r <= c_p M(2r)^{1/(p-2)}, valid for every r <= 1/2.
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const double r = rungs[i];
    if (!(2.0 * r < cfg.r_outer)) continue;
    const double chain = res.c_p * std::pow(mean_at(2.0 * r).value, e);
    res.report.add(r, chain - ratios[i], inequality_tolerance(chain, ratios[i]));
  }
  // Limit-level comparison of two proxies: a ratio that is still moving along
  // the tail (both sides tending to 0, say) is given its tail spread as slack.
  // The pointwise rows above stay strict.
  res.report.add(ladder.deepest(), res.bound - res.attained.value,
                 inequality_tolerance(res.bound, res.attained.value) + res.attained.tail_spread);
  if (divergent) {
    res.report.flag("DivergentMean");
    res.report.flag("vacuous");
    res.report.holds = true;
    res.report.notes = "disc mean grows without bound; hypothesis fails";
  }
  return res;
}

AsymptoticBound theorem3_bound(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                               const QuadratureConfig& cfg) {
  require_range(p, 2.0, kInf, "theorem 3 needs p > 2");
  ladder.validate(cfg);
  const double q = p.value();
  AsymptoticBound res;
  res.report = make_report("theorem3", q);
  const auto rungs = ladder.rungs();
  const auto k0 = outer_k0(map, p, rungs, cfg);
  const auto mods = rung_moduli(map, rungs);
  std::vector<double> ratios;
  const double e = 1.0 / (2.0 - q);
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    ratios.push_back(mods[i].min / rungs[i]);
    const double pointwise = std::pow((q - 2.0) * k0[i], e);
    res.report.add(rungs[i], pointwise - ratios[i], inequality_tolerance(pointwise, ratios[i]));
  }
  res.k0 = limit_proxy(LimitKind::limsup, k0, ladder);
  res.attained = limit_proxy(LimitKind::liminf, ratios, ladder);
  res.bound = std::pow(q - 2.0, e) * std::pow(res.k0.value, e);
  res.report.add(ladder.deepest(), res.bound - res.attained.value,
                 inequality_tolerance(res.bound, res.attained.value));
  return res;
}

AsymptoticBound theorem5_bound(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                               const QuadratureConfig& cfg) {
  require_range(p, 1.0, 2.0, "theorem 5 needs 1 < p < 2");
  ladder.validate(cfg);
  const double q = p.value();
  AsymptoticBound res;
  res.report = make_report("theorem5", q);
  const auto rungs = ladder.rungs();
  const auto k0 = inner_k0(map, p, rungs, cfg);
  if (!k0.converged) res.report.flag("NonConvergent");
  const auto mods = rung_moduli(map, rungs);
  std::vector<double> ratios;
  const double e = 1.0 / (2.0 - q);
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    ratios.push_back(mods[i].max / rungs[i]);
    const double pointwise = std::pow((2.0 - q) * k0.values[i], e);
    res.report.add(rungs[i], ratios[i] - pointwise, inequality_tolerance(pointwise, ratios[i]));
  }
  res.k0 = limit_proxy(LimitKind::limsup, k0.values, ladder);
  res.attained = limit_proxy(LimitKind::limsup, ratios, ladder);
  res.bound = std::pow(2.0 - q, e) * std::pow(res.k0.value, e);
  res.report.add(ladder.deepest(), res.attained.value - res.bound,
                 inequality_tolerance(res.bound, res.attained.value));
  return res;
}

Theorem6Result theorem6_bracket(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                                const QuadratureConfig& cfg) {
  require_range(p, 1.0, 2.0, "theorem 6 needs 1 < p < 2");
  ladder.validate(cfg);
  const double q = p.value();
  const DilatationOrder pc(p.conjugate());
  const double qc = pc.value();
  Theorem6Result res;
  res.report = make_report("theorem6", q);
  const auto rungs = ladder.rungs();

  const auto k1 = inner_k0(map, p, rungs, cfg);
  if (!k1.converged) res.report.flag("NonConvergent");
  const auto k2 = outer_k0(map, pc, rungs, cfg);
  res.k1 = limit_proxy(LimitKind::limsup, k1.values, ladder);
  res.k2 = limit_proxy(LimitKind::limsup, k2, ladder);
  res.lower = std::pow(2.0 - q, 1.0 / (2.0 - q)) * std::pow(res.k1.value, 1.0 / (2.0 - q));
  res.upper = std::pow(qc - 2.0, 1.0 / (2.0 - qc)) * std::pow(res.k2.value, 1.0 / (2.0 - qc));

  const auto mods = rung_moduli(map, rungs);
  std::vector<double> lo, hi;
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    lo.push_back(mods[i].min / rungs[i]);
    hi.push_back(mods[i].max / rungs[i]);
  }
  const auto lo_proxy = limit_proxy(LimitKind::liminf, lo, ladder);
  const auto hi_proxy = limit_proxy(LimitKind::limsup, hi, ladder);
  res.ratio = {LimitKind::liminf, lo_proxy.value, hi_proxy.value - lo_proxy.value};
  res.ratio_limsup = hi_proxy.value;

  res.report.add(ladder.deepest(), hi_proxy.value - res.lower, inequality_tolerance(hi_proxy.value, res.lower));
  res.report.add(ladder.deepest(), res.upper - lo_proxy.value, inequality_tolerance(res.upper, lo_proxy.value));

  res.remark_bound = std::pow(q - 1.0, q - 1.0) / (std::pow(2.0 - q, q) * std::pow(res.k2.value, q - 1.0));
  res.remark_slack = res.remark_bound - res.k1.value;
  res.report.add(ladder.deepest(), res.remark_slack, inequality_tolerance(res.remark_bound, res.k1.value));
  res.report.notes = "remark slack " + std::to_string(res.remark_slack);

  if (res.ratio.tail_spread > kSingleLimitSpread) {
    res.report.flag("NoSingleLimit");
    res.report.flag("vacuous");
    res.report.holds = true;
  }
  return res;
}

Theorem7Result theorem7_area_derivative(const MappingModel& map, DilatationOrder p, double s,
                                        const RadiusLadder& ladder, const QuadratureConfig& cfg, double agree_tol) {
  require_range(p, 1.0, 2.0, "theorem 7 needs 1 < p < 2");
  if (!(s > 2.0) || !std::isfinite(s)) fail(ErrorCode::InvalidArgument, "theorem 7 needs s > 2");
  ladder.validate(cfg);
  const double q = p.value();
  const DilatationOrder so(s);
  Theorem7Result res;
  res.report = make_report("theorem7", q);
  const auto rungs = ladder.rungs();

  const auto k_inner = inner_k0(map, p, rungs, cfg);
  if (!k_inner.converged) res.report.flag("NonConvergent");
  const auto k_outer = outer_k0(map, so, rungs, cfg);
  const auto sr = rung_areas(map, rungs, cfg);
  std::vector<double> lower, upper, direct;
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    lower.push_back(std::pow(2.0 - q, 2.0 / (2.0 - q)) * std::pow(k_inner.values[i], 2.0 / (2.0 - q)));
    upper.push_back(std::pow(s - 2.0, 2.0 / (2.0 - s)) * std::pow(k_outer[i], 2.0 / (2.0 - s)));
    direct.push_back(sr[i] / (kPi * rungs[i] * rungs[i]));
  }
  res.lower_limit = limit_proxy(LimitKind::liminf, lower, ladder);
  res.upper_limit = limit_proxy(LimitKind::liminf, upper, ladder);
  res.direct = limit_proxy(LimitKind::liminf, direct, ladder);
  const double a = res.lower_limit.value, b = res.upper_limit.value, c = res.direct.value;
  res.max_disagreement = std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)});
  const double spread =
      std::max({res.lower_limit.tail_spread, res.upper_limit.tail_spread, res.direct.tail_spread});
  res.report.add(ladder.deepest(), agree_tol + spread - res.max_disagreement, 0.0);
  // Limits that are still moving along the tail (or run off to infinity) leave
  // the hypothesis unverified, as for Theorem 6.
  if (spread > kSingleLimitSpread) {
    res.report.flag("NoSingleLimit");
    res.report.flag("vacuous");
    res.report.holds = true;
  }
  return res;
}

}  // namespace dilatox
