#pragma once

#include <string>
#include <vector>

#include "dilatox/functionals.hpp"

namespace dilatox {

/// Geometric radii r_max rho^j, j = 0..count-1, standing in for r -> 0. The
/// last `tail` rungs (the deepest) feed the liminf/limsup proxies.
struct RadiusLadder {
  double r_max = 0.5;
  double rho = 0.8;
  int count = 20;
  int tail = 5;

  void validate(const QuadratureConfig& cfg) const;
  /// Rungs in decreasing order.
  std::vector<double> rungs() const;
  double deepest() const;
};

enum class LimitKind { liminf, limsup };

struct LimitProxy {
  LimitKind kind = LimitKind::liminf;
  double value = 0.0;
  double tail_spread = 0.0;  // max - min over the tail
};

/// min (liminf) or max (limsup) of the last ladder.tail entries of values,
/// which are ordered like ladder.rungs().
LimitProxy limit_proxy(LimitKind kind, const std::vector<double>& values, const RadiusLadder& ladder);

/// Slack allowed before an inequality counts as violated:
/// 1e-9 + 1e-6 max(|a|, |b|).
double inequality_tolerance(double a, double b);

struct BoundReport {
  std::string check_id;
  double p = 0.0;
  bool holds = true;
  double margin = 0.0;               // smallest signed slack over the rungs
  std::vector<double> radii;          // where the check was evaluated
  std::vector<double> margins;        // one per radius
  std::vector<std::string> flags;     // DivergentMean, NonConvergent, NoSingleLimit, vacuous, ...
  std::string notes;

  /// Records one comparison: slack = bound side minus attained side.
  void add(double r, double slack, double tolerance);
  void flag(const std::string& f);
  bool has_flag(const std::string& f) const;
};

/// S'(r) >= 2 pi^{(2-p)/2} r^{1-p} S^{p/2} / d_p(r), together with the Hoelder
/// step S'(r) >= L^p / ((2 pi r)^{p-1} d_p(r)).
BoundReport check_lemma1(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                         const QuadratureConfig& cfg);

/// \int_{r1}^{r2} L^p dr / ((2 pi r)^{p-1} d_p) <= S(r2) - S(r1).
BoundReport check_length_area(const MappingModel& map, DilatationOrder p, double r1, double r2,
                              const QuadratureConfig& cfg);

/// p > 2: S(r) <= pi (p-2)^{-2/(p-2)} (\int_r^1 dt / (t^{p-1} d_p))^{-2/(p-2)}.
BoundReport check_lemma2(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                         const QuadratureConfig& cfg);

/// (\int_eps^{2eps} dr / (r^{p-1} q_p))^{-1}
///   <= 2^{p-1} eps^{p-2} ((1/4 pi eps^2) \iint_{B_{2eps}} Q^{1/(p-1)})^{p-1}.
BoundReport check_lemma3(const CircleFunction& q, DilatationOrder p, double eps, const QuadratureConfig& cfg);
/// Lemma 3 with Q = D_p of the map and eps running over the ladder.
BoundReport check_lemma3(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                         const QuadratureConfig& cfg);

/// 1 < p < 2: S(r) >= pi (2-p)^{2/(2-p)} (\int_0^r dt / (t^{p-1} d_p))^{2/(2-p)}.
BoundReport check_lemma4(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                         const QuadratureConfig& cfg);

/// 1 < p < 2: \int_0^r dt / (t^{p-1} d_p) <= 1/(2-p) at each radius
/// (absolute slack 1e-6).
BoundReport check_convergence(const MappingModel& map, DilatationOrder p, const std::vector<double>& radii,
                              const QuadratureConfig& cfg);

/// c_p = 2^{(p-1)/(p-2)} (p-2)^{-1/(p-2)}: Lemma 2 weakened to the limits
/// r, 2r, composed with Lemma 3 at eps = r.
double theorem1_constant(double p);

struct Theorem1Result {
  LimitProxy k;         // liminf proxy of the disc mean of D_p^{1/(p-1)}
  double c_p = 0.0;
  double bound = 0.0;   // c_p k^{1/(p-2)}
  LimitProxy attained;  // liminf proxy of l_f(r)/r
  BoundReport report;
};

/// p > 2. Divergent disc means make the hypothesis fail; the verdict is then
/// reported as vacuous (flags DivergentMean + vacuous). The final proxy
/// comparison allows the tail spread of the attained ratio as extra slack.
Theorem1Result theorem1_bound(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                              const QuadratureConfig& cfg);

struct AsymptoticBound {
  LimitProxy k0;
  double bound = 0.0;
  LimitProxy attained;
  BoundReport report;
};

/// p > 2: liminf |f|/|z| <= (p-2)^{1/(2-p)} k0^{1/(2-p)},
/// k0 = limsup r^{p-2} \int_r^1 dt / (t^{p-1} d_p).
AsymptoticBound theorem3_bound(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                               const QuadratureConfig& cfg);

/// 1 < p < 2: limsup |f|/|z| >= (2-p)^{1/(2-p)} k0^{1/(2-p)},
/// k0 = limsup r^{p-2} \int_0^r dt / (t^{p-1} d_p).
AsymptoticBound theorem5_bound(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                               const QuadratureConfig& cfg);

/// Tail spread of |f|/|z| above which the ratio is not treated as having a
/// single limit point.
inline constexpr double kSingleLimitSpread = 1e-3;

struct Theorem6Result {
  LimitProxy k1;        // Theorem 5 constant at p
  LimitProxy k2;        // Theorem 3 constant at p' = p/(p-1)
  double lower = 0.0;
  double upper = 0.0;
  LimitProxy ratio;     // liminf proxy of l_f/r; tail_spread over l_f/r and L_f/r
  double ratio_limsup = 0.0;
  double remark_bound = 0.0;  // (p-1)^{p-1} / ((2-p)^p k2^{p-1})
  double remark_slack = 0.0;  // remark_bound - k1
  BoundReport report;
};

Theorem6Result theorem6_bracket(const MappingModel& map, DilatationOrder p, const RadiusLadder& ladder,
                                const QuadratureConfig& cfg);

struct Theorem7Result {
  LimitProxy lower_limit;  // (2-p)^{2/(2-p)} (r^{p-2} \int_0^r ...)^{2/(2-p)}
  LimitProxy upper_limit;  // (s-2)^{2/(2-s)} (r^{s-2} \int_r^1 ...)^{2/(2-s)}
  LimitProxy direct;       // S(r) / (pi r^2)
  double max_disagreement = 0.0;
  BoundReport report;
};

/// 1 < p < 2 < s. The three proxies must agree within agree_tol plus the
/// largest tail spread. A spread above kSingleLimitSpread flags NoSingleLimit
/// and makes the verdict vacuous.
Theorem7Result theorem7_area_derivative(const MappingModel& map, DilatationOrder p, double s,
                                        const RadiusLadder& ladder, const QuadratureConfig& cfg,
                                        double agree_tol = 1e-3);

}  // namespace dilatox
