// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dilatox/beltrami.hpp"
#include "dilatox/catalog.hpp"
#include "dilatox/functionals.hpp"
#include "dilatox/verifier.hpp"
#include "oracles.hpp"

#ifdef DILATOX_HAVE_CLI
#include <filesystem>
#include <fstream>

#include "cli.hpp"
#endif

using namespace dilatox;
using oracle::rel_err;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0) v.require(secs < budget_s, fmt("runtime %.2f s over the %.0f s budget", secs, budget_s));
  if (!v.pass) ++failures;
  std::printf("%s %2d %s (%.2f s)%s%s\n", v.pass ? "PASS" : "FAIL", id, title, secs, v.detail.empty() ? "" : ": ",
              v.detail.c_str());
  std::fflush(stdout);
}

MappingModel linear_map(double k) { return catalog::linear(Complex(k, 0.0)).map; }

// Maps from the catalog that are self-maps of the disc with closed forms.
std::vector<CatalogEntry> four_maps() {
  return {catalog::identity(), catalog::linear(Complex(0.5, 0.0)), catalog::radial_stretch(1.0),
          catalog::log_singular(3.0)};
}

std::vector<CatalogEntry> catalog_maps() {
  return {catalog::identity(),          catalog::linear(Complex(0.5, 0.0)), catalog::linear(std::polar(0.9, 2.0)),
          catalog::radial_stretch(1.0), catalog::log_singular(3.0),          catalog::beltrami_exact(2.0, 0.64)};
}

const double kPs[] = {1.2, 1.5, 1.8, 2.5, 3.0, 4.0};

Verdict closed_form_dilatations() {
  Verdict v;
  oracle::Gen gen(20240611);
  struct Case {
    CatalogEntry entry;
    double p_lo, p_hi;
  };
  const double k = 0.6, alpha = 0.7;
  std::vector<Case> cases{{catalog::linear(Complex(k, 0.0)), 1.1, 5.0},
                          {catalog::radial_stretch(alpha), 1.1, 5.0},
                          {catalog::log_singular(3.0), 3.0, 3.0}};
  for (const auto& c : cases) {
    const auto fd = MappingModel::finite_difference(c.entry.map.label() + "_fd", c.entry.map.value_fn());
    double worst_an = 0.0, worst_fd = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double r = gen.uniform(1e-3, 0.99);
      const PolarPoint z(r, gen.angle());
      const double p = gen.uniform(c.p_lo, c.p_hi);
      const double want = c.entry.exact.dilatation(r, p);
      worst_an = std::max(worst_an, rel_err(angular_dilatation(c.entry.map, z, DilatationOrder(p)), want));
      worst_fd = std::max(worst_fd, rel_err(angular_dilatation(fd, z, DilatationOrder(p)), want));
    }
    v.require(worst_an <= 1e-10, c.entry.map.label() + fmt(" analytic rel err %.3g", worst_an));
    v.require(worst_fd <= 1e-6, c.entry.map.label() + fmt(" finite-difference rel err %.3g", worst_fd));
  }
  // the closed forms themselves against the stated expressions
  const double r = 0.3, p = 3.5;
  v.require(rel_err(cases[0].entry.exact.dilatation(r, p), std::pow(k, p - 2.0)) <= 1e-14, "linear closed form");
  v.require(rel_err(cases[1].entry.exact.dilatation(r, p), std::pow(r, alpha * (p - 2.0)) / (alpha + 1.0)) <= 1e-14,
            "stretch closed form");
  v.require(rel_err(cases[2].entry.exact.dilatation(r, 3.0), std::pow(std::log(M_E / r), 2.0)) <= 1e-14,
            "log-singular closed form");
  return v;
}

Verdict isoperimetric() {
  Verdict v;
  const QuadratureConfig cfg;
  const auto rungs = RadiusLadder{}.rungs();
  for (const auto& e : four_maps()) {
    const auto s = areas(e.map, rungs, cfg);
    for (std::size_t i = 0; i < rungs.size(); ++i) {
      const double len = boundary_length(e.map, rungs[i], cfg);
      const double defect = len * len - 4.0 * M_PI * s[i];
      v.require(defect >= -1e-9, e.map.label() + fmt(" L^2 - 4 pi S = %.3g at r = %.3g", defect, rungs[i]));
      if (e.map.label() == catalog::identity().map.label()) {
        v.require(std::abs(defect) <= 1e-7 * len * len, fmt("identity defect %.3g at r = %.3g", defect, rungs[i]));
      }
    }
  }
  return v;
}

Verdict lemma_suite() {
  Verdict v;
  const QuadratureConfig cfg;
  const RadiusLadder ladder;
  for (const auto& e : catalog_maps()) {
    for (double pv : kPs) {
      const DilatationOrder p(pv);
      std::vector<BoundReport> reps{check_lemma1(e.map, p, ladder, cfg),
                                    check_length_area(e.map, p, ladder.deepest(), ladder.r_max, cfg),
                                    check_lemma3(e.map, p, ladder, cfg)};
      reps.push_back(pv > 2.0 ? check_lemma2(e.map, p, ladder, cfg) : check_lemma4(e.map, p, ladder, cfg));
      for (const auto& rep : reps) {
        v.require(rep.holds, rep.check_id + " fails for " + e.map.label() + fmt(" at p = %g", pv));
      }
    }
  }
  const auto id = catalog::identity().map;
  for (double pv : kPs) {
    const DilatationOrder p(pv);
    auto rep = pv > 2.0 ? check_lemma1(id, p, ladder, cfg) : check_lemma4(id, p, ladder, cfg);
    for (double m : rep.margins) v.require(std::abs(m) <= 1e-6, rep.check_id + fmt(" identity margin %.3g", m));
    if (pv < 2.0) {
      rep = check_lemma1(id, p, ladder, cfg);
      for (double m : rep.margins) v.require(std::abs(m) <= 1e-6, fmt("lemma1 identity margin %.3g", m));
    }
  }
  return v;
}

Verdict convergence() {
  Verdict v;
  const QuadratureConfig cfg;
  std::vector<double> radii = RadiusLadder{}.rungs();
  for (double r : {1e-3, 0.6, 0.75, 0.9, 0.95}) radii.push_back(r);
  for (const auto& e : catalog_maps()) {
    for (double pv : {1.2, 1.5, 1.8}) {
      const auto rep = check_convergence(e.map, DilatationOrder(pv), radii, cfg);
      v.require(rep.holds, e.map.label() + fmt(" convergence fails at p = %g", pv));
      // margins are 1/(2-p) - integral
      for (double m : rep.margins) v.require(m >= -1e-6, e.map.label() + fmt(" excess %.3g at p = %g", -m, pv));
    }
  }
  return v;
}

RadiusLadder deep_ladder() { return {0.02, 0.5, 8, 3}; }

Verdict theorem3_sharpness() {
  Verdict v;
  const QuadratureConfig cfg;
  const double p = 4.0;
  for (double k : {0.25, 0.5, 0.9}) {
    const auto res = theorem3_bound(linear_map(k), DilatationOrder(p), deep_ladder(), cfg);
    const double k0 = 1.0 / ((p - 2.0) * std::pow(k, p - 2.0));
    v.require(rel_err(res.k0.value, k0) <= 1e-6, fmt("k = %g: k_0 rel err %.3g", k, rel_err(res.k0.value, k0)));
    v.require(std::abs(res.bound - k) <= 1e-4, fmt("k = %g: bound %.10g", k, res.bound));
  }
  return v;
}

Verdict theorem5_sharpness() {
  Verdict v;
  const QuadratureConfig cfg;
  const double p = 1.5;
  for (double k : {0.25, 0.5, 0.9}) {
    const auto res = theorem5_bound(linear_map(k), DilatationOrder(p), deep_ladder(), cfg);
    const double k0 = std::pow(k, 2.0 - p) / (2.0 - p);
    v.require(rel_err(res.k0.value, k0) <= 1e-6, fmt("k = %g: k_0 rel err %.3g", k, rel_err(res.k0.value, k0)));
    v.require(std::abs(res.bound - k) <= 1e-4, fmt("k = %g: bound %.10g", k, res.bound));
  }
  return v;
}

Verdict theorem6_bracket_collapse() {
  Verdict v;
  QuadratureConfig cfg;
  cfg.r_min = 1e-6;
  const double p = 1.5;
  const auto res = theorem6_bracket(linear_map(0.5), DilatationOrder(p), {0.02, 0.5, 12, 3}, cfg);
  v.require(std::abs(res.lower - 0.5) <= 1e-4 && std::abs(res.upper - 0.5) <= 1e-4,
            fmt("bracket [%.10g, %.10g]", res.lower, res.upper));
  const double rhs = std::pow(p - 1.0, p - 1.0) / (std::pow(2.0 - p, p) * std::pow(res.k2.value, p - 1.0));
  v.require(rel_err(res.remark_bound, rhs) <= 1e-12, "remark bound does not match its formula");
  v.require(std::isfinite(res.remark_slack), "remark slack not reported");
  v.require(res.k1.value <= rhs + inequality_tolerance(res.k1.value, rhs),
            fmt("k_1 = %.10g above %.10g", res.k1.value, rhs));
  if (v.pass) v.detail = fmt("bracket [%.8f, %.8f]", res.lower, res.upper) + fmt(", remark slack %.3g", res.remark_slack);
  return v;
}

Verdict theorem7_agreement() {
  Verdict v;
  const QuadratureConfig cfg;
  const double p = 1.5;
  struct Case {
    MappingModel map;
    double value;
  };
  for (const auto& c : {Case{linear_map(0.5), 0.25}, Case{catalog::radial_stretch(1.0).map, 0.0}}) {
    const auto res = theorem7_area_derivative(c.map, DilatationOrder(p), 4.0, RadiusLadder{}, cfg);
    const double vals[] = {res.lower_limit.value, res.upper_limit.value, res.direct.value};
    const double lo = *std::min_element(std::begin(vals), std::end(vals));
    const double hi = *std::max_element(std::begin(vals), std::end(vals));
    v.require(hi - lo <= 1e-3, c.map.label() + fmt(" proxies spread %.3g", hi - lo));
    for (double x : vals) v.require(std::abs(x - c.value) <= 1e-3, c.map.label() + fmt(" proxy %.6g", x));
  }
  return v;
}

Verdict divergence_detection() {
  Verdict v;
  const QuadratureConfig cfg;
  const auto e = catalog::log_singular(3.0);
  const DilatationOrder p(3.0);
  // rungs of the default ratio reaching below 1e-3, plus 1e-3 itself
  std::vector<double> radii = RadiusLadder{0.5, 0.8, 29, 5}.rungs();
  radii.push_back(1e-3);
  std::sort(radii.begin(), radii.end(), std::greater<>());
  const auto dm = disc_means(e.map, radii, p, cfg);
  for (std::size_t i = 1; i < radii.size(); ++i) {
    v.require(dm[i].value > dm[i - 1].value, fmt("disc mean not increasing at r = %.3g", radii[i]));
  }
  const auto at = [&](double r) { return std::find(radii.begin(), radii.end(), r) - radii.begin(); };
  const double growth = dm[at(1e-3)].value / dm[at(0.5)].value;
  v.require(growth > 10.0, fmt("disc mean grows only %.3gx by r = 1e-3", growth));
  const double ratio = min_max_modulus(e.map, 1e-3).min / 1e-3;
  v.require(ratio > 10.0, fmt("l_f(r)/r = %.3g at r = 1e-3", ratio));
  if (v.pass) v.detail = fmt("disc mean x%.3g, l_f/r = %.3g at r = 1e-3", growth, ratio);
  return v;
}

Verdict beltrami() {
  Verdict v;
  const auto coef = SigmaCoefficient::power(2.0, 1.0);
  const auto sol = solve_radial(coef, {0.5, 1.0, 0.05, 0.95, 1e-3});
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.grid.size(); ++i) worst = std::max(worst, rel_err(sol.values[i], 2.0 * sol.grid[i]));
  v.require(worst <= 1e-8, fmt("solved profile rel err %.3g", worst));

  std::vector<double> radii;
  for (int i = 0; i < 19; ++i) radii.push_back(0.05 + 0.05 * i);
  const double res = residual_check(catalog::beltrami_exact(1.0, 2.0).map, coef, radii);
  v.require(res <= 1e-12, fmt("exact-solution residual %.3g", res));

  const auto cond = condition_sigma0(coef, RadiusLadder{}, QuadratureConfig{});
  v.require(std::abs(cond.sigma0.value - 2.0) <= 1e-6, fmt("sigma_0 proxy %.12g", cond.sigma0.value));

  // RK4 reproduces the linear profile exactly, so the order is measured on
  // another solution of the same equation: 1/R = 1/(2r) + C through (0.5, 0.8).
  const auto exact = [](double r) { return 1.0 / (1.0 / (2.0 * r) + 1.0 / 0.8 - 1.0); };
  const auto err = [&](double h) {
    const auto s = solve_radial(coef, {0.5, 0.8, 0.05, 0.95, h});
    double w = 0.0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) w = std::max(w, rel_err(s.values[i], exact(s.grid[i])));
    return w;
  };
  const double ratio = err(0.025) / err(0.0125);
  v.require(ratio >= 15.0, fmt("step-halving ratio %.3g", ratio));
  if (v.pass) v.detail = fmt("max rel err %.3g, halving ratio %.3g", worst, ratio);
  return v;
}

Verdict determinism() {
  Verdict v;
#ifdef DILATOX_HAVE_CLI
  namespace fs = std::filesystem;
  const auto run_once = [](const std::string& dir) {
    fs::remove_all(dir);
    const std::vector<std::string> args{"dilatox", "verify", "--map",  "radial_stretch", "--param", "alpha=0.5",
                                        "--p",     "1.5",    "--out", dir};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    std::string bytes;
    for (const char* name : {"verification.json", "margins.csv"}) {
      std::ifstream in(fs::path(dir) / name, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      bytes += ss.str();
    }
    return std::make_pair(code, out.str() + bytes);
  };
  const std::string root = DILATOX_TEST_TMP;
  const auto a = run_once(root + "/run_a");
  const auto b = run_once(root + "/run_b");
  v.require(a.first == 0 && b.first == 0, "verify did not exit 0");
  v.require(a.second.size() > 100, "reports are empty");
  v.require(a.second == b.second, "reports differ between runs");
#else
  v.require(false, "built without the command-line tool");
#endif
  return v;
}

}  // namespace

int main() {
  criterion(1, "closed-form dilatations", 1.0, closed_form_dilatations);
  criterion(2, "isoperimetric suite", 10.0, isoperimetric);
  criterion(3, "lemma suite", 30.0, lemma_suite);
  criterion(4, "convergence corollary", 0.0, convergence);
  criterion(5, "decay bound sharpness for p > 2", 0.0, theorem3_sharpness);
  criterion(6, "decay bound sharpness for 1 < p < 2", 0.0, theorem5_sharpness);
  criterion(7, "two-sided bracket collapse", 0.0, theorem6_bracket_collapse);
  criterion(8, "area derivative proxies", 0.0, theorem7_agreement);
  criterion(9, "divergence detection", 0.0, divergence_detection);
  criterion(10, "nonlinear Beltrami solver", 5.0, beltrami);
  criterion(11, "pipeline determinism", 0.0, determinism);
  return failures ? 1 : 0;
}
