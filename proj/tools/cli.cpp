#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dilatox/catalog.hpp"
#include "dilatox/error.hpp"
#include "dilatox/numfmt.hpp"
#include "dilatox/report.hpp"

namespace dilatox::cli {

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* const kChecks[] = {"lemma1",   "length_area", "lemma2",   "lemma3",   "lemma4",  "convergence",
                               "theorem1", "theorem3",    "theorem5", "theorem6", "theorem7"};

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> out;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects key=value, got '" + item + "'");
    try {
      out[item.substr(0, eq)] = parse_double(std::string_view(item).substr(eq + 1));
    } catch (const Error&) {
      throw ConfigError("--param " + item + ": not a number");
    }
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << content;
  if (!os) throw ConfigError("write failed for " + path.string());
}

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  if (c.command == "beltrami") {
    if (!c.coef_file.empty()) j["coef_file"] = c.coef_file;
    j["solve"] = {{"r0", c.solve.r0}, {"R0", c.solve.R0}, {"r_lo", c.solve.r_lo}, {"r_hi", c.solve.r_hi},
                  {"step", c.solve.step}};
  } else if (!c.map_file.empty()) {
    j["map_file"] = c.map_file;
  } else {
    j["map"] = c.map;
  }
  j["params"] = c.params;
  j["p"] = json_number(c.p);
  if (c.s) j["s"] = json_number(*c.s);
  j["ladder"] = {{"r_max", c.ladder.r_max}, {"rho", c.ladder.rho}, {"count", c.ladder.count}, {"tail", c.ladder.tail}};
  j["quadrature"] = {
      {"n_theta", c.quad.n_theta},
      {"n_r", c.quad.n_r},
      {"grid", c.quad.grid_kind == GridKind::log_spaced ? "log" : "uniform"},
      {"r_min", c.quad.r_min},
      {"eps_trunc", c.quad.eps_trunc},
      {"r_outer", c.quad.r_outer},
      {"truncation_tol", c.quad.truncation_tol},
  };
  if (!c.checks.empty()) j["checks"] = c.checks;
  j["format"] = c.format;
  return j;
}

json envelope(const RunConfig& c) {
  return {{"tool", "dilatox"}, {"version", DILATOX_VERSION}, {"config", config_json(c)}};
}

CatalogEntry load_map(const RunConfig& c) {
  if (!c.map_file.empty()) return catalog::from_json(read_json_file(c.map_file));
  return catalog::by_name(c.map, c.params);
}

bool p_in(const std::string& id, double p) {
  if (id == "lemma2" || id == "theorem1" || id == "theorem3") return p > 2.0;
  if (id == "lemma4" || id == "convergence" || id == "theorem5" || id == "theorem6" || id == "theorem7") {
    return p > 1.0 && p < 2.0;
  }
  return p > 1.0;
}

std::vector<std::string> selected_checks(const RunConfig& c) {
  std::vector<std::string> ids;
  if (c.checks.empty()) {
    for (const char* id : kChecks) {
      if (p_in(id, c.p)) ids.emplace_back(id);
    }
    return ids;
  }
  for (const auto& id : c.checks) {
    if (std::find(std::begin(kChecks), std::end(kChecks), id) == std::end(kChecks)) {
      throw ConfigError("unknown check '" + id + "'");
    }
    if (!p_in(id, c.p)) throw ConfigError("check " + id + " is not defined for p = " + format_double(c.p));
    ids.push_back(id);
  }
  return ids;
}

double theorem7_s(const RunConfig& c) {
  // s = 4 by default: the outer proxy then converges like r^2 along the ladder.
  const double s = c.s ? *c.s : 4.0;
  if (!(s > 2.0)) throw ConfigError("theorem7 needs s > 2");
  return s;
}

BoundReport run_check(const std::string& id, const MappingModel& map, const RunConfig& c) {
  const DilatationOrder p(c.p);
  const auto& L = c.ladder;
  const auto& q = c.quad;
  if (id == "lemma1") return check_lemma1(map, p, L, q);
  if (id == "length_area") return check_length_area(map, p, L.deepest(), L.r_max, q);
  if (id == "lemma2") return check_lemma2(map, p, L, q);
  if (id == "lemma3") return check_lemma3(map, p, L, q);
  if (id == "lemma4") return check_lemma4(map, p, L, q);
  if (id == "convergence") {
    auto radii = L.rungs();
    if (L.r_max < 0.95) radii.push_back(0.95);
    return check_convergence(map, p, radii, q);
  }
  if (id == "theorem1") return theorem1_bound(map, p, L, q).report;
  if (id == "theorem3") return theorem3_bound(map, p, L, q).report;
  if (id == "theorem5") return theorem5_bound(map, p, L, q).report;
  if (id == "theorem6") return theorem6_bracket(map, p, L, q).report;
  return theorem7_area_derivative(map, p, theorem7_s(c), L, q).report;
}

void summarize(std::ostream& out, const BoundReport& r) {
  out << r.check_id << " p=" << format_double(r.p) << (r.holds ? " holds" : " VIOLATED")
      << " margin_min=" << format_double(r.margin);
  for (const auto& f : r.flags) out << " [" << f << "]";
  out << '\n';
}

int cmd_eval(const RunConfig& c, std::ostream& out) {
  const auto entry = load_map(c);
  const auto rows = functionals_table(entry.map, DilatationOrder(c.p), c.ladder.rungs(), c.quad);
  if (c.format == "json") {
    auto doc = envelope(c);
    auto arr = json::array();
    for (const auto& row : rows) {
      arr.push_back({{"r", json_number(row.r)},
                     {"d_p", json_number(row.d_p)},
                     {"disc_mean", json_number(row.disc_mean)},
                     {"S", json_number(row.S)},
                     {"L", json_number(row.L)},
                     {"l_f", json_number(row.l_f)},
                     {"L_f", json_number(row.L_f)},
                     {"iso_defect", json_number(row.iso_defect)}});
    }
    doc["rows"] = std::move(arr);
    write_file(c.out_dir, "functionals.json", dump(doc));
  } else {
    write_file(c.out_dir, "functionals.csv", functionals_csv(rows));
  }
  out << "eval " << entry.map.label() << ": " << rows.size() << " radii\n";
  return kAllHold;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const auto ids = selected_checks(c);
  if (ids.empty()) throw ConfigError("no check applies to p = " + format_double(c.p));
  if (std::find(ids.begin(), ids.end(), "theorem7") != ids.end()) theorem7_s(c);
  const auto entry = load_map(c);
  std::vector<BoundReport> reports;
  for (const auto& id : ids) reports.push_back(run_check(id, entry.map, c));
  bool all = true;
  for (const auto& r : reports) {
    summarize(out, r);
    all = all && r.holds;
  }
  if (c.format == "json") {
    auto doc = envelope(c);
    doc["map"] = entry.map.label();
    doc["all_hold"] = all;
    doc["matrix"] = verification_matrix(reports);
    write_file(c.out_dir, "verification.json", dump(doc));
  }
  write_file(c.out_dir, "margins.csv", margins_csv(reports));
  return all ? kAllHold : kViolated;
}

int cmd_asym(const RunConfig& c, std::ostream& out) {
  if (!(c.p > 1.0) || c.p == 2.0) throw ConfigError("asym needs p in (1,2) or p > 2");
  const auto entry = load_map(c);
  const DilatationOrder p(c.p);
  json doc = envelope(c);
  doc["map"] = entry.map.label();
  for (const char* key : {"k", "k_0", "k_1", "k_2", "A_proxy"}) doc[key] = nullptr;
  json bounds = json::object(), attained = json::object(), spreads = json::object(), holds = json::object();
  bool all = true;
  const auto note = [&](const BoundReport& r) {
    holds[r.check_id] = r.holds;
    all = all && r.holds;
    summarize(out, r);
  };
  if (c.p > 2.0) {
    const auto t1 = theorem1_bound(entry.map, p, c.ladder, c.quad);
    const auto t3 = theorem3_bound(entry.map, p, c.ladder, c.quad);
    doc["k"] = json_number(t1.k.value);
    doc["k_0"] = json_number(t3.k0.value);
    doc["c_p"] = json_number(t1.c_p);
    bounds["theorem1"] = json_number(t1.bound);
    bounds["theorem3"] = json_number(t3.bound);
    attained["liminf_ratio"] = json_number(t1.attained.value);
    spreads["k"] = json_number(t1.k.tail_spread);
    spreads["k_0"] = json_number(t3.k0.tail_spread);
    spreads["liminf_ratio"] = json_number(t1.attained.tail_spread);
    note(t1.report);
    note(t3.report);
  } else {
    const double s = theorem7_s(c);
    const auto t5 = theorem5_bound(entry.map, p, c.ladder, c.quad);
    const auto t6 = theorem6_bracket(entry.map, p, c.ladder, c.quad);
    const auto t7 = theorem7_area_derivative(entry.map, p, s, c.ladder, c.quad);
    doc["k_0"] = json_number(t5.k0.value);
    doc["k_1"] = json_number(t6.k1.value);
    doc["k_2"] = json_number(t6.k2.value);
    doc["A_proxy"] = json_number(t6.ratio.value);
    doc["area_derivative"] = {{"lower_limit", json_number(t7.lower_limit.value)},
                              {"upper_limit", json_number(t7.upper_limit.value)},
                              {"direct", json_number(t7.direct.value)}};
    bounds["theorem5"] = json_number(t5.bound);
    bounds["theorem6"] = {json_number(t6.lower), json_number(t6.upper)};
    bounds["remark"] = {{"bound", json_number(t6.remark_bound)}, {"slack", json_number(t6.remark_slack)}};
    attained["limsup_ratio"] = json_number(t5.attained.value);
    attained["liminf_ratio"] = json_number(t6.ratio.value);
    spreads["k_0"] = json_number(t5.k0.tail_spread);
    spreads["k_1"] = json_number(t6.k1.tail_spread);
    spreads["k_2"] = json_number(t6.k2.tail_spread);
    spreads["A_proxy"] = json_number(t6.ratio.tail_spread);
    spreads["area_derivative"] = json_number(
        std::max({t7.lower_limit.tail_spread, t7.upper_limit.tail_spread, t7.direct.tail_spread}));
    note(t5.report);
    note(t6.report);
    note(t7.report);
  }
  doc["bounds"] = std::move(bounds);
  doc["attained"] = std::move(attained);
  doc["tail_spreads"] = std::move(spreads);
  doc["holds"] = std::move(holds);
  write_file(c.out_dir, "asym.json", dump(doc));
  return all ? kAllHold : kViolated;
}

SigmaCoefficient load_coefficient(const RunConfig& c) {
  std::optional<double> m;
  if (auto it = c.params.find("m"); it != c.params.end()) m = it->second;
  if (!c.coef_file.empty()) return SigmaCoefficient::from_json(read_json_file(c.coef_file), m);
  const auto kappa = c.params.find("kappa");
  return SigmaCoefficient::power(kappa == c.params.end() ? 1.0 : kappa->second, m.value_or(1.0));
}

// Closed-form solution of the power family through the anchor:
// R^{-m} = 1/(kappa r^m) + C for m > 0 and R = R0 (r/r0)^{1/kappa} for m = 0.
double power_family_exact(double kappa, double m, double r0, double R0, double r) {
  if (m == 0.0) return R0 * std::pow(r / r0, 1.0 / kappa);
  const double C = std::pow(R0, -m) - 1.0 / (kappa * std::pow(r0, m));
  return std::pow(1.0 / (kappa * std::pow(r, m)) + C, -1.0 / m);
}

int cmd_beltrami(RunConfig c, std::ostream& out) {
  const auto coef = [&] {
    try {
      return load_coefficient(c);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }();
  if (c.anchor_value) {
    c.solve.R0 = *c.anchor_value;
  } else {
    c.solve.R0 = coef.kappa() && coef.m() > 0.0 ? std::pow(*coef.kappa(), 1.0 / coef.m()) * c.solve.r0 : c.solve.r0;
  }
  const auto sol = solve_radial(coef, c.solve);
  write_file(c.out_dir, "solution.csv", two_column_csv("r,R", sol.grid, sol.values));

  json doc = envelope(c);
  doc["coefficient"] = coef.to_json();
  doc["residual_max"] = json_number(sol.residual_max);
  doc["exits_disc"] = sol.exits_disc;
  if (coef.kappa()) {
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
      const double exact = power_family_exact(*coef.kappa(), coef.m(), c.solve.r0, c.solve.R0, sol.grid[i]);
      worst = std::max(worst, std::abs(sol.values[i] / exact - 1.0));
    }
    doc["exact_max_rel_error"] = json_number(worst);
  }
  out << "beltrami " << coef.family() << " m=" << format_double(coef.m()) << ": " << sol.grid.size()
      << " nodes, residual_max=" << format_double(sol.residual_max) << (sol.exits_disc ? " [exits_disc]" : "")
      << '\n';

  int code = kAllHold;
  if (coef.m() > 0.0) {
    const auto map = solution_map(sol);
    const auto nb = theorem_nb_bound(coef, map.map, c.ladder, c.quad);
    doc["sigma0"] = to_json(nb.condition.sigma0);
    doc["c"] = json_number(nb.c);
    doc["bound"] = json_number(nb.bound);
    doc["attained"] = to_json(nb.attained);
    doc["report"] = to_json(nb.report);
    summarize(out, nb.report);
    if (!nb.report.holds) code = kViolated;
  } else {
    const auto cond = condition_sigma0(coef, c.ladder, c.quad);
    doc["sigma0"] = to_json(cond.sigma0);
  }
  write_file(c.out_dir, "beltrami.json", dump(doc));
  return code;
}

void add_common(CLI::App* sub, RunConfig& c, std::vector<std::string>& params, std::string& grid) {
  sub->add_option("--param", params, "Parameter key=value (repeatable)");
  sub->add_option("--p", c.p, "Dilatation order p > 1");
  sub->add_option("--rmax", c.ladder.r_max, "Largest ladder radius");
  sub->add_option("--rho", c.ladder.rho, "Ladder ratio in (0,1)");
  sub->add_option("--count", c.ladder.count, "Number of ladder rungs");
  sub->add_option("--tail", c.ladder.tail, "Rungs used for limit proxies");
  sub->add_option("--ntheta", c.quad.n_theta, "Circle samples");
  sub->add_option("--nr", c.quad.n_r, "Radial intervals");
  sub->add_option("--rmin", c.quad.r_min, "Inner truncation radius");
  sub->add_option("--grid", grid, "Radial grid: log or uniform")->check(CLI::IsMember({"log", "uniform"}));
  sub->add_option("--out", c.out_dir, "Output directory");
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

void add_map(CLI::App* sub, RunConfig& c) {
  sub->add_option("--map", c.map, "Catalog map: identity, linear, radial_stretch, log_singular, beltrami_exact");
  sub->add_option("--map-file", c.map_file, "JSON radial profile document");
}

int dispatch(RunConfig& c, std::ostream& out) {
  if (c.command == "eval") return cmd_eval(c, out);
  if (c.command == "verify") return cmd_verify(c, out);
  if (c.command == "asym") return cmd_asym(c, out);
  return cmd_beltrami(c, out);
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ParseError:
    case ErrorCode::OutOfDomain:
    case ErrorCode::EmptyRange:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::vector<std::string> params;
  std::string grid = "log";
  double s = 0.0;

  CLI::App app{"Numerical p-angular dilatation functionals and bound verification", "dilatox"};
  app.set_version_flag("--version", std::string(DILATOX_VERSION));
  app.require_subcommand(1, 1);

  auto* eval = app.add_subcommand("eval", "Tabulate d_p, disc mean, S, L, l_f, L_f over the ladder");
  auto* verify = app.add_subcommand("verify", "Run the inequality checks applicable to p");
  auto* asym = app.add_subcommand("asym", "Limit proxies and asymptotic bounds");
  auto* belt = app.add_subcommand("beltrami", "Solve the radial nonlinear Beltrami equation and check the bound");
  for (auto* sub : {eval, verify, asym, belt}) add_common(sub, c, params, grid);
  for (auto* sub : {eval, verify, asym}) add_map(sub, c);
  for (auto* sub : {verify, asym}) sub->add_option("--s", s, "Second exponent s > 2 (theorem7, default 4)");
  verify->add_option("--check", c.checks, "Restrict to these check ids (repeatable)");
  belt->add_option("--coef-file", c.coef_file, "JSON coefficient document");
  belt->add_option("--r0", c.solve.r0, "Anchor radius");
  belt->add_option("--R0", c.anchor_value, "Anchor value (default: exact value for the power family)");
  belt->add_option("--rlo", c.solve.r_lo, "Lower end of the solution span");
  belt->add_option("--rhi", c.solve.r_hi, "Upper end of the solution span");
  belt->add_option("--step", c.solve.step, "RK4 step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAllHold;
  } catch (const CLI::CallForVersion&) {
    out << DILATOX_VERSION << '\n';
    return kAllHold;
  } catch (const CLI::ParseError& e) {
    err << "dilatox: " << e.what() << '\n';
    return kConfigError;
  }

  for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
  for (auto* sub : {verify, asym}) {
    if (sub->count("--s")) c.s = s;
  }
  if (c.format.empty()) c.format = c.command == "eval" ? "csv" : "json";
  c.quad.grid_kind = grid == "uniform" ? GridKind::uniform : GridKind::log_spaced;

  try {
    c.params = parse_params(params);
    if (!(c.p > 1.0) || !std::isfinite(c.p)) throw ConfigError("--p must be a finite number > 1");
    c.quad.validate();
    c.ladder.validate(c.quad);
    return dispatch(c, out);
  } catch (const ConfigError& e) {
    err << "dilatox: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "dilatox: " << to_string(e.code()) << ": " << e.what() << '\n';
    return is_config_error(e.code()) ? kConfigError : kNumericalFailure;
  } catch (const std::exception& e) {
    err << "dilatox: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace dilatox::cli
