#include "dilatox/profile.hpp"

#include <algorithm>
#include <cmath>

#include "dilatox/error.hpp"

namespace dilatox {

namespace {

void validate_knots(const std::vector<double>& x, std::size_t n_values, std::size_t n_slopes) {
  if (x.size() < 2) fail(ErrorCode::InvalidArgument, "spline needs at least two knots");
  if (n_values != x.size() || n_slopes != x.size()) {
    fail(ErrorCode::InvalidArgument, "spline knots, values and slopes differ in length");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || x[i] <= 0.0) fail(ErrorCode::InvalidArgument, "spline knots must be positive");
    if (i > 0 && !(x[i] > x[i - 1])) fail(ErrorCode::InvalidArgument, "spline knots must be strictly increasing");
  }
}

// Endpoint slope of the three-point formula, clipped as in PCHIP so that the
// end segments stay monotone.
double end_slope(double h0, double h1, double d0, double d1) {
  double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (m * d0 <= 0.0) return 0.0;
  if (d0 * d1 <= 0.0 && std::abs(m) > std::abs(3.0 * d0)) return 3.0 * d0;
  return m;
}

}  // namespace

std::vector<double> fritsch_carlson_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> m(n, 0.0);
  if (n < 2) return m;
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    d[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    m[0] = m[1] = d[0];
    return m;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (d[k - 1] * d[k] <= 0.0) {
      m[k] = 0.0;
      continue;
    }
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
  }
  m[0] = end_slope(h[0], h[1], d[0], d[1]);
  m[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  return m;
}

HermiteSpline::HermiteSpline(std::vector<double> knots, std::vector<double> values, std::vector<double> slopes)
    : knots_(std::move(knots)), values_(std::move(values)), slopes_(std::move(slopes)) {
  validate_knots(knots_, values_.size(), slopes_.size());
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "spline values must be finite");
  }
  const auto beta = [](double r, double v, double s) { return v > 0.0 ? r * s / v : 1.0; };
  beta_lo_ = beta(knots_.front(), values_.front(), slopes_.front());
  beta_hi_ = beta(knots_.back(), values_.back(), slopes_.back());
}

HermiteSpline HermiteSpline::monotone(std::vector<double> knots, std::vector<double> values) {
  validate_knots(knots, values.size(), values.size());
  auto slopes = fritsch_carlson_slopes(knots, values);
  return HermiteSpline(std::move(knots), std::move(values), std::move(slopes));
}

std::size_t HermiteSpline::segment(double r) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
  std::size_t k = static_cast<std::size_t>(std::distance(knots_.begin(), it));
  k = std::clamp<std::size_t>(k, 1, knots_.size() - 1);
  return k - 1;
}

double HermiteSpline::value(double r) const {
  if (r < knots_.front()) return values_.front() * std::pow(r / knots_.front(), beta_lo_);
  if (r > knots_.back()) return values_.back() * std::pow(r / knots_.back(), beta_hi_);
  const std::size_t k = segment(r);
  const double h = knots_[k + 1] - knots_[k];
  const double t = (r - knots_[k]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * values_[k] + (t3 - 2 * t2 + t) * h * slopes_[k] +
         (-2 * t3 + 3 * t2) * values_[k + 1] + (t3 - t2) * h * slopes_[k + 1];
}

double HermiteSpline::derivative(double r) const {
  if (r < knots_.front()) return beta_lo_ * value(r) / r;
  if (r > knots_.back()) return beta_hi_ * value(r) / r;
  const std::size_t k = segment(r);
  const double h = knots_[k + 1] - knots_[k];
  const double t = (r - knots_[k]) / h;
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * values_[k] + (-6 * t2 + 6 * t) * values_[k + 1]) / h +
         (3 * t2 - 4 * t + 1) * slopes_[k] + (3 * t2 - 2 * t) * slopes_[k + 1];
}

RadialProfile::RadialProfile(Fn value, Fn derivative) : value_(std::move(value)), derivative_(std::move(derivative)) {
  if (!value_ || !derivative_) fail(ErrorCode::InvalidArgument, "radial profile needs R and R'");
}

RadialProfile::RadialProfile(HermiteSpline spline)
    : spline_(std::make_shared<const HermiteSpline>(std::move(spline))) {
  auto s = spline_;
  value_ = [s](double r) { return s->value(r); };
  derivative_ = [s](double r) { return s->derivative(r); };
}

}  // namespace dilatox
