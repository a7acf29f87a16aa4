#include "dilatox/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dilatox/numfmt.hpp"

namespace dilatox {

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

nlohmann::json json_numbers(std::span<const double> v) {
  auto out = nlohmann::json::array();
  for (double x : v) out.push_back(json_number(x));
  return out;
}

nlohmann::json to_json(const BoundReport& report) {
  return {
      {"check_id", report.check_id},
      {"p", json_number(report.p)},
      {"holds", report.holds},
      {"margin_min", json_number(report.margin)},
      {"radii", json_numbers(report.radii)},
      {"flags", report.flags},
  };
}

nlohmann::json to_json(const LimitProxy& proxy) {
  return {
      {"kind", proxy.kind == LimitKind::liminf ? "liminf" : "limsup"},
      {"value", json_number(proxy.value)},
      {"tail_spread", json_number(proxy.tail_spread)},
  };
}

nlohmann::json verification_matrix(std::span<const BoundReport> reports) {
  auto out = nlohmann::json::array();
  for (const auto& r : reports) out.push_back(to_json(r));
  return out;
}

std::string margins_csv(std::span<const BoundReport> reports) {
  std::string out = "check_id,p,r,margin\n";
  for (const auto& rep : reports) {
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
      out += rep.check_id + ',' + format_double(rep.p) + ',' + format_double(rep.radii[i]) + ',' +
             format_double(rep.margins[i]) + '\n';
    }
  }
  return out;
}

std::string two_column_csv(std::string_view header, std::span<const double> x, std::span<const double> y) {
  std::string out(header);
  out += '\n';
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    out += format_double(x[i]) + ',' + format_double(y[i]) + '\n';
  }
  return out;
}

std::vector<FunctionalsRow> functionals_table(const MappingModel& map, DilatationOrder p, std::vector<double> radii,
                                              const QuadratureConfig& cfg) {
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  const auto means = disc_means(map, radii, p, cfg);
  const auto s = areas(map, radii, cfg);
  std::vector<FunctionalsRow> rows;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    const double len = boundary_length(map, r, cfg);
    const auto mod = min_max_modulus(map, r);
    rows.push_back({r, dilatation_mean(map, r, p, cfg), means[i].value, s[i], len, mod.min, mod.max,
                    len * len - 4.0 * std::numbers::pi * s[i]});
  }
  return rows;
}

std::string functionals_csv(std::span<const FunctionalsRow> rows) {
  std::string out = "r,d_p,disc_mean,S,L,l_f,L_f,iso_defect\n";
  for (const auto& row : rows) {
    const double cols[] = {row.r, row.d_p, row.disc_mean, row.S, row.L, row.l_f, row.L_f, row.iso_defect};
    for (std::size_t k = 0; k < std::size(cols); ++k) {
      if (k) out += ',';
      out += format_double(cols[k]);
    }
    out += '\n';
  }
  return out;
}

std::string dump(const nlohmann::json& doc) { return doc.dump(2) + '\n'; }

}  // namespace dilatox
