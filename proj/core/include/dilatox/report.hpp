#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dilatox/verifier.hpp"

namespace dilatox {

/// JSON number for finite values; "inf", "-inf" or "nan" strings otherwise.
nlohmann::json json_number(double v);
nlohmann::json json_numbers(std::span<const double> v);

/// {check_id, p, holds, margin_min, radii, flags}
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const LimitProxy& proxy);

nlohmann::json verification_matrix(std::span<const BoundReport> reports);

/// One row per evaluated rung: check_id,p,r,margin.
std::string margins_csv(std::span<const BoundReport> reports);

/// Two-column CSV with the given header, shortest round-trip numbers.
std::string two_column_csv(std::string_view header, std::span<const double> x, std::span<const double> y);

struct FunctionalsRow {
  double r;
  double d_p;
  double disc_mean;
  double S;
  double L;
  double l_f;
  double L_f;
  double iso_defect;  // L^2 - 4 pi S
};

/// Evaluates every column at the given radii (sorted ascending on output).
std::vector<FunctionalsRow> functionals_table(const MappingModel& map, DilatationOrder p, std::vector<double> radii,
                                              const QuadratureConfig& cfg);

/// Header r,d_p,disc_mean,S,L,l_f,L_f,iso_defect.
std::string functionals_csv(std::span<const FunctionalsRow> rows);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const nlohmann::json& doc);

}  // namespace dilatox
