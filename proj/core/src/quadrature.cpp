#include "dilatox/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "dilatox/error.hpp"
#include "dilatox/polar.hpp"

namespace dilatox::quad {

double periodic_mean(const std::function<double(double)>& f, int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "periodic_mean needs n >= 1");
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double v = f(kTwoPi * j / n);
    if (std::isinf(v) && v > 0) return std::numeric_limits<double>::infinity();
    sum += v;
  }
  return sum / n;
}

namespace {

GaussRule build_gauss(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  if (n < 1) fail(ErrorCode::InvalidArgument, "Gauss rule needs n >= 1");
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss(n)).first;
  return it->second;
}

double gauss_composite(const std::function<double(double)>& f, double a, double b, int panels, int order) {
  if (panels < 1) fail(ErrorCode::InvalidArgument, "gauss_composite needs panels >= 1");
  const GaussRule& rule = gauss_legendre(order);
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width;
    const double mid = lo + 0.5 * width;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    total += 0.5 * width * s;
  }
  return total;
}

namespace {

std::vector<double> segmented_grid(std::vector<double> breakpoints, int n_intervals, Variable var) {
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  if (breakpoints.size() < 2) fail(ErrorCode::EmptyRange, "grid needs two distinct breakpoints");
  if (!(breakpoints.front() > 0.0)) fail(ErrorCode::InvalidArgument, "grid breakpoints must be positive");
  if (n_intervals < 2) fail(ErrorCode::InvalidArgument, "grid needs at least two intervals");

  const bool log_var = var == Variable::log;
  const auto measure = [log_var](double a, double b) { return log_var ? std::log(b / a) : b - a; };
  const double total = measure(breakpoints.front(), breakpoints.back());
  std::vector<double> nodes{breakpoints.front()};
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const double a = breakpoints[k];
    const double b = breakpoints[k + 1];
    const double len = measure(a, b);
    int m = static_cast<int>(std::ceil(n_intervals * len / total));
    // Multiples of 8 let every segment be halved twice for Romberg steps.
    m = std::max(m, 8);
    m += (8 - m % 8) % 8;
    for (int i = 1; i < m; ++i) nodes.push_back(log_var ? a * std::exp(len * i / m) : a + len * i / m);
    nodes.push_back(b);
  }
  return nodes;
}

}  // namespace

std::vector<double> log_grid(std::vector<double> breakpoints, int n_intervals) {
  return segmented_grid(std::move(breakpoints), n_intervals, Variable::log);
}

std::vector<double> uniform_grid(std::vector<double> breakpoints, int n_intervals) {
  return segmented_grid(std::move(breakpoints), n_intervals, Variable::linear);
}

std::size_t node_index(std::span<const double> nodes, double r) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), r * (1.0 - 1e-12));
  if (it == nodes.end() || std::abs(*it - r) > 1e-12 * r) {
    fail(ErrorCode::InvalidArgument, "radius " + std::to_string(r) + " is not a grid node");
  }
  return static_cast<std::size_t>(std::distance(nodes.begin(), it));
}

double simpson(std::span<const double> nodes, std::span<const double> g, std::size_t i0, std::size_t i1,
               Variable var) {
  if (nodes.size() != g.size()) fail(ErrorCode::InvalidArgument, "simpson: size mismatch");
  if (i1 < i0 || i1 >= nodes.size()) fail(ErrorCode::InvalidArgument, "simpson: bad index range");
  if ((i1 - i0) % 2) fail(ErrorCode::InvalidArgument, "simpson: odd number of intervals");
  const bool log_var = var == Variable::log;
  double total = 0.0;
  for (std::size_t i = i0; i < i1; i += 2) {
    // In s = ln t the integrand picks up the Jacobian dt = t ds.
    const double y0 = log_var ? g[i] * nodes[i] : g[i];
    const double y1 = log_var ? g[i + 1] * nodes[i + 1] : g[i + 1];
    const double y2 = log_var ? g[i + 2] * nodes[i + 2] : g[i + 2];
    if (std::isnan(y0) || std::isnan(y1) || std::isnan(y2)) fail(ErrorCode::InvalidArgument, "simpson: NaN integrand");
    if (std::isinf(y0) || std::isinf(y1) || std::isinf(y2)) return std::numeric_limits<double>::infinity();
    const double h0 = log_var ? std::log(nodes[i + 1] / nodes[i]) : nodes[i + 1] - nodes[i];
    const double h1 = log_var ? std::log(nodes[i + 2] / nodes[i + 1]) : nodes[i + 2] - nodes[i + 1];
    const double hs = h0 + h1;
    total += hs / 6.0 * ((2.0 - h1 / h0) * y0 + hs * hs / (h0 * h1) * y1 + (2.0 - h0 / h1) * y2);
  }
  return total;
}

double simpson_richardson(std::span<const double> nodes, std::span<const double> g, std::size_t i0, std::size_t i1,
                          Variable var) {
  // Romberg table on Simpson values at h, 2h, 4h, as far as the node count allows.
  std::vector<double> s{simpson(nodes, g, i0, i1, var)};
  for (std::size_t stride = 2; stride <= 4 && (i1 - i0) % (2 * stride) == 0; stride *= 2) {
    std::vector<double> x, y;
    for (std::size_t i = i0; i <= i1; i += stride) {
      x.push_back(nodes[i]);
      y.push_back(g[i]);
    }
    s.push_back(simpson(x, y, 0, x.size() - 1, var));
  }
  if (!std::isfinite(s.front())) return s.front();
  double factor = 16.0;
  while (s.size() > 1) {
    for (std::size_t k = 0; k + 1 < s.size(); ++k) s[k] += (s[k] - s[k + 1]) / (factor - 1.0);
    s.pop_back();
    factor *= 4.0;
  }
  return s.front();
}

double log_simpson(std::span<const double> nodes, std::span<const double> g, std::size_t i0, std::size_t i1) {
  return simpson(nodes, g, i0, i1, Variable::log);
}

}  // namespace dilatox::quad
