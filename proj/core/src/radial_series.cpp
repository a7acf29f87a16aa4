#include "dilatox/radial_series.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "dilatox/error.hpp"
#include "dilatox/numfmt.hpp"

namespace dilatox {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (text == "inf" || text == "+inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  if (text == "nan") return NAN;
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    fail(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

RadialSeries::RadialSeries(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() != values_.size()) fail(ErrorCode::InvalidArgument, "series grid and values differ in length");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!(grid_[i] > 0.0) || !(grid_[i] < 1.0)) fail(ErrorCode::OutOfDomain, "series radius outside (0,1)");
    if (i > 0 && !(grid_[i] > grid_[i - 1])) fail(ErrorCode::InvalidArgument, "series grid must be increasing");
    if (std::isnan(values_[i]) || values_[i] < 0.0) {
      fail(ErrorCode::InvalidArgument, "series values must be nonnegative (inf allowed)");
    }
  }
}

std::string RadialSeries::to_csv() const {
  std::string out = "r,value\n";
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    out += format_double(grid_[i]);
    out += ',';
    out += format_double(values_[i]);
    out += '\n';
  }
  return out;
}

RadialSeries RadialSeries::from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::ParseError, "empty series CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "r,value") fail(ErrorCode::ParseError, "series CSV header must be 'r,value'");
  std::vector<double> grid, values;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail(ErrorCode::ParseError, "series CSV row without comma");
    grid.push_back(parse_double(std::string_view(line).substr(0, comma)));
    values.push_back(parse_double(std::string_view(line).substr(comma + 1)));
  }
  return RadialSeries(std::move(grid), std::move(values));
}

}  // namespace dilatox
