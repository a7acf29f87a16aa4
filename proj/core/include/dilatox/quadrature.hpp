#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dilatox::quad {

/// Mean of a 2pi-periodic function over n equispaced angles (the periodic
/// trapezoid rule divided by 2pi). Returns +inf if any sample is +inf.
double periodic_mean(const std::function<double(double)>& f, int n);

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes by Newton iteration on P_n.
const GaussRule& gauss_legendre(int n);

/// Composite Gauss-Legendre over `panels` equal panels of [a, b].
double gauss_composite(const std::function<double(double)>& f, double a, double b, int panels, int order = 20);

enum class Variable { linear, log };

/// Strictly increasing radii, log-uniform inside each segment between
/// consecutive breakpoints. Every breakpoint is a node and every segment holds
/// a multiple of 8 (>= 8) intervals, so Simpson pairs never straddle a
/// breakpoint, even on the grids thinned by 2 and 4.
std::vector<double> log_grid(std::vector<double> breakpoints, int n_intervals);

/// Same layout as log_grid with uniform spacing inside each segment.
std::vector<double> uniform_grid(std::vector<double> breakpoints, int n_intervals);

/// Index of the node equal to r (relative tolerance 1e-12); throws if absent.
std::size_t node_index(std::span<const double> nodes, double r);

/// Integral of g(t) dt from nodes[i0] to nodes[i1] by composite Simpson in
/// s = ln t on the (possibly non-uniform) node set; i1 - i0 must be even.
/// +inf samples make the result +inf.
double log_simpson(std::span<const double> nodes, std::span<const double> g, std::size_t i0, std::size_t i1);

/// Composite Simpson in t (Variable::linear) or in ln t (Variable::log).
double simpson(std::span<const double> nodes, std::span<const double> g, std::size_t i0, std::size_t i1,
               Variable var);

/// Simpson on the nodes and on every second and fourth node, combined by
/// Romberg extrapolation (error O(h^8)). Uses fewer levels when i1 - i0 is not
/// a multiple of 8 or 4. Each thinned pair must lie where the spacing is
/// uniform in the chosen variable, which the segmented grids guarantee.
double simpson_richardson(std::span<const double> nodes, std::span<const double> g, std::size_t i0, std::size_t i1,
                          Variable var);

}  // namespace dilatox::quad
