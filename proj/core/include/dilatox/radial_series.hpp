#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dilatox {

/// Samples (r_j, v_j) of a radial functional. The grid is strictly increasing
/// inside (0, 1); values are nonnegative with +inf allowed.
class RadialSeries {
 public:
  RadialSeries() = default;
  RadialSeries(std::vector<double> grid, std::vector<double> values);

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return grid_.size(); }
  double front_radius() const { return grid_.front(); }
  double back_radius() const { return grid_.back(); }

  /// CSV with header `r,value`.
  std::string to_csv() const;
  static RadialSeries from_csv(std::string_view text);

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

}  // namespace dilatox
