#include <doctest.h>

#include <cmath>
#include <limits>

#include "dilatox/catalog.hpp"
#include "dilatox/error.hpp"
#include "dilatox/functionals.hpp"
#include "oracles.hpp"

using namespace dilatox;
using oracle::kPi;
using oracle::rel_err;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Maps of the disc into itself; beltrami_exact is included with kappa^{1/m} <= 1.
std::vector<CatalogEntry> self_maps() {
  return {catalog::identity(), catalog::linear(Complex(0.5, 0.0)), catalog::linear(std::polar(0.9, 2.0)),
          catalog::radial_stretch(1.0), catalog::radial_stretch(2.5), catalog::log_singular(3.0),
          catalog::log_singular(4.0), catalog::beltrami_exact(2.0, 0.64)};
}

CircleFunction constant(double c) {
  return [c](const PolarPoint&) { return c; };
}

RadialSeries series_of(std::vector<double> grid, double (*f)(double)) {
  std::vector<double> v;
  for (double t : grid) v.push_back(f(t));
  return RadialSeries(std::move(grid), std::move(v));
}

}  // namespace

TEST_CASE("p-angular dilatation closed forms") {
  const PolarPoint z(0.5, 1.3);
  CHECK(angular_dilatation(catalog::linear(Complex(0.5, 0.0)).map, z, DilatationOrder(4.0)) ==
        doctest::Approx(0.25).epsilon(1e-14));
  for (double p : {1.2, 2.0, 3.7}) {
    CHECK(angular_dilatation(catalog::identity().map, z, DilatationOrder(p)) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(angular_dilatation(catalog::radial_stretch(1.0).map, z, DilatationOrder(4.0)) ==
        doctest::Approx(0.125).epsilon(1e-14));
  CHECK(angular_dilatation(catalog::log_singular(3.0).map, PolarPoint(std::exp(-1.0), 0.2), DilatationOrder(3.0)) ==
        doctest::Approx(4.0).epsilon(1e-12));
  // Vanishing Jacobian with |f_theta| > 0 gives +inf.
  CHECK(angular_dilatation(Partials{Complex(0.0, 0.0), Complex(0.0, 1.0)}, 0.5, DilatationOrder(3.0)) == kInf);
  CHECK_THROWS_AS(DilatationOrder(1.0), Error);
  CHECK(DilatationOrder(1.5).conjugate() == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("circular mean") {
  const QuadratureConfig cfg;
  for (double p : {1.3, 2.0, 4.0}) {
    CHECK(circular_mean(constant(2.5), 0.3, DilatationOrder(p), cfg) == doctest::Approx(2.5).epsilon(1e-13));
  }
  const auto lin = catalog::linear(Complex(0.5, 0.0)).map;
  for (double r : {1e-4, 0.1, 0.9}) {
    CHECK(dilatation_mean(lin, r, DilatationOrder(4.0), cfg) == doctest::Approx(0.25).epsilon(1e-14));
  }
  // Oracle: direct sum at 2^20 points.
  const long n = 1L << 20;
  double sum = 0.0;
  for (long k = 0; k < n; ++k) sum += std::sqrt(1.0 + 0.5 * std::cos(2.0 * kPi * static_cast<double>(k) / n));
  const double ref = std::pow(sum / n, 2.0);
  const CircleFunction wave = [](const PolarPoint& z) { return 1.0 + 0.5 * std::cos(z.theta()); };
  const double got = circular_mean(wave, 0.7, DilatationOrder(3.0), cfg);
  CHECK(got == doctest::Approx(ref).epsilon(1e-13));
  // Two-term series: mean of sqrt(1 + x) is 1 - E[x^2]/8 - 15 E[x^4]/384 + ... with x = cos/2.
  CHECK(got == doctest::Approx(std::pow(1.0 - 0.125 / 8 - 15.0 * (3.0 / 128) / 384, 2.0)).epsilon(2e-4));
}

TEST_CASE("property: power means decrease in p and stay below sup Q") {
  const QuadratureConfig cfg;
  oracle::Gen gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = gen.uniform(0.1, 3.0), b = gen.uniform(0.0, 0.95), c = gen.uniform(0.0, 6.0);
    const int k = 1 + trial % 4;
    const CircleFunction q = [=](const PolarPoint& z) { return a * (1.0 + b * std::sin(k * z.theta() + c)); };
    const double r = gen.uniform(0.01, 0.99);
    double prev = kInf;
    for (double p : {1.1, 1.5, 2.0, 3.0, 5.0, 9.0}) {
      const double m = circular_mean(q, r, DilatationOrder(p), cfg);
      CHECK(m <= prev * (1.0 + 1e-14));
      CHECK(m <= a * (1.0 + b) * (1.0 + 1e-14));
      prev = m;
    }
  }
}

TEST_CASE("disc means") {
  const QuadratureConfig cfg;
  const auto lin = catalog::linear(Complex(0.5, 0.0)).map;
  for (double r : {0.001, 0.2, 0.9}) {
    const auto m = disc_mean(lin, r, DilatationOrder(4.0), cfg);
    CHECK(m.value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_FALSE(m.divergent);
  }
  // Radial stretch: (1/pi r^2) \iint (t^2/2)^{1/3} = (3/4) (r^2/2)^{1/3}, raised to 3.
  const auto st = catalog::radial_stretch(1.0).map;
  double prev = kInf;
  for (double r : {0.5, 0.1, 0.01, 0.001}) {
    const double exact = std::pow(0.75 * std::cbrt(r * r / 2.0), 3.0);
    const auto m = disc_mean(st, r, DilatationOrder(4.0), cfg);
    CHECK(rel_err(m.value, exact) <= 1e-6);
    CHECK(m.value < prev);
    prev = m.value;
  }
  // Log-singular: grows without bound as r -> 0.
  const auto ls = catalog::log_singular(3.0).map;
  prev = 0.0;
  for (double r : {0.5, 0.1, 0.01, 0.001}) {
    const auto m = disc_mean(ls, r, DilatationOrder(3.0), cfg);
    CHECK(m.value > prev);
    prev = m.value;
  }
  CHECK(prev > 50.0);
}

TEST_CASE("disc mean truncation sensitivity flags a non-integrable core") {
  QuadratureConfig cfg;
  cfg.r_min = 1e-3;
  // Q^{1/(p-1)} = |z|^{-2.5} is not integrable at the origin.
  const CircleFunction q = [](const PolarPoint& z) { return std::pow(z.r(), -2.5); };
  const auto m = disc_mean(q, 0.5, DilatationOrder(2.0), cfg);
  CHECK(m.divergent);
  CHECK(m.truncation_delta > cfg.truncation_tol);
}

TEST_CASE("property: Fubini consistency against a 2-D midpoint rule") {
  const QuadratureConfig cfg;
  const auto lin = catalog::linear(Complex(0.5, 0.0)).map;
  const double p = 3.0, r = 0.6;
  const double ref = oracle::midpoint_disc_mean(
      [&](double t, double th) { return angular_dilatation(lin, PolarPoint(t, th), DilatationOrder(p)); }, r, p, 400,
      64);
  CHECK(rel_err(disc_mean(lin, r, DilatationOrder(p), cfg).value, ref) <= 1e-5);

  // A non-constant integrand: the midpoint rule converges at O(h^2), so use a fine grid.
  const CircleFunction q = [](const PolarPoint& z) { return std::pow(1.0 + z.r() + 0.5 * std::cos(z.theta()), 2.0); };
  const double ref2 = oracle::midpoint_disc_mean(
      [](double t, double th) { return std::pow(1.0 + t + 0.5 * std::cos(th), 2.0); }, r, p, 2000, 256);
  CHECK(rel_err(disc_mean(q, r, DilatationOrder(p), cfg).value, ref2) <= 1e-5);
}

TEST_CASE("area, area rate and length closed forms") {
  const QuadratureConfig cfg;
  const auto id = catalog::identity().map;
  const auto st = catalog::radial_stretch(1.0).map;
  const auto lin = catalog::linear(Complex(0.5, 0.0)).map;
  CHECK(area(id, 0.5, cfg) == doctest::Approx(kPi / 4).epsilon(1e-12));
  CHECK(area(st, 0.5, cfg) == doctest::Approx(kPi / 16).epsilon(1e-12));
  CHECK(area(lin, 0.5, cfg) == doctest::Approx(kPi / 16).epsilon(1e-12));
  CHECK(area_rate(id, 0.5, cfg) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(area_rate(st, 0.5, cfg) == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(boundary_length(id, 0.5, cfg) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(boundary_length(lin, 0.5, cfg) == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(boundary_length(st, 0.5, cfg) == doctest::Approx(kPi / 2).epsilon(1e-14));
  // S' is the derivative of S.
  const double h = 1e-4;
  for (const auto& e : self_maps()) {
    CAPTURE(e.map.label());
    const double fd = (area(e.map, 0.5 + h, cfg) - area(e.map, 0.5 - h, cfg)) / (2 * h);
    CHECK(rel_err(fd, area_rate(e.map, 0.5, cfg)) <= 1e-6);
  }
}

TEST_CASE("property: area is monotone, bounded by pi and obeys the isoperimetric inequality") {
  const QuadratureConfig cfg;
  std::vector<double> radii;
  for (int j = 0; j < 20; ++j) radii.push_back(0.5 * std::pow(0.8, j));
  for (double r : {0.6, 0.75, 0.9, 0.99}) radii.push_back(r);
  std::sort(radii.begin(), radii.end());
  for (const auto& e : self_maps()) {
    CAPTURE(e.map.label());
    const auto s = areas(e.map, radii, cfg);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      CHECK(rel_err(s[i], e.exact.area(radii[i])) <= 1e-8);
      CHECK(s[i] <= kPi);
      if (i) CHECK(s[i] >= s[i - 1]);
      const double len = boundary_length(e.map, radii[i], cfg);
      CHECK(len * len >= 4 * kPi * s[i] - 1e-9);
    }
  }
}

TEST_CASE("outer radial integral") {
  const QuadratureConfig cfg;
  const DilatationOrder p4(4.0);
  const double radii[] = {0.5};
  const auto grid = cfg.grid({0.5, 1.0 - 1e-12});
  const auto lin = catalog::linear(Complex(0.5, 0.0)).map;
  const auto s = dilatation_series(lin, p4, grid, cfg);
  CHECK(radial_integral_outer(s, 0.5, p4) == doctest::Approx((1.0 / 0.25 - 1.0 + 1e-12 * 0) / 0.5).epsilon(1e-9));
  CHECK(radial_integral_outer(s, 0.5, p4) == doctest::Approx(6.0).epsilon(1e-9));

  const auto ones = series_of(cfg.grid({0.01, 0.999}), [](double) { return 1.0; });
  CHECK(radial_integral_outer(ones, 0.01, DilatationOrder(2.0)) == doctest::Approx(std::log(0.999 / 0.01)).epsilon(1e-12));
  CHECK_THROWS_AS(radial_integral_outer(ones, 0.5, DilatationOrder(2.0)), Error);

  // Log-singular: \int_r^1 = (I(r) - 1)/(p - 2).
  const auto ls = catalog::log_singular(3.0).map;
  for (double r : {1e-4, 0.01, 0.3, 0.9}) {
    const double rr[] = {r};
    const auto lss = dilatation_series(ls, DilatationOrder(3.0), outer_grid(rr, cfg), cfg);
    const double exact = catalog::log_singular_integral(3.0, r) - catalog::log_singular_integral(3.0, cfg.r_outer);
    CHECK(std::abs(radial_integral_outer(lss, r, DilatationOrder(3.0)) - exact) <= 1e-7 * exact);
  }
  (void)radii;
}

TEST_CASE("inner radial integral") {
  const QuadratureConfig cfg;
  const DilatationOrder p(1.5);
  const double rr[] = {0.25};
  const auto grid = inner_grid(rr, cfg);

  const auto ones = series_of(grid, [](double) { return 1.0; });
  auto in = radial_integral_inner(ones, 0.25, p, cfg.eps_trunc);
  CHECK(in.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(in.converged);

  const auto lin = catalog::linear(Complex(0.5, 0.0)).map;
  in = radial_integral_inner(dilatation_series(lin, p, grid, cfg), 0.25, p, cfg.eps_trunc);
  CHECK(in.value == doctest::Approx(2.0 * 0.5 * std::sqrt(0.5)).epsilon(1e-10));

  // Radial stretch alpha = 1: integrand t^{-1/2} / (t^{-1/2}/2) = 2, so the integral is 2r.
  const auto st = catalog::radial_stretch(1.0).map;
  in = radial_integral_inner(dilatation_series(st, p, grid, cfg), 0.25, p, cfg.eps_trunc);
  CHECK(std::abs(in.value - 0.5) <= 1e-7 * 0.5);

  // d_p = t^{0.6}: t^{-1/2} / t^{0.6} is not integrable at 0.
  const auto bad = series_of(grid, [](double t) { return std::pow(t, 0.6); });
  CHECK_FALSE(radial_integral_inner(bad, 0.25, p, cfg.eps_trunc).converged);

  CHECK_THROWS_AS(radial_integral_inner(ones, 0.25, DilatationOrder(2.5), cfg.eps_trunc), Error);
}

TEST_CASE("property: convergence corollary on the catalog") {
  const QuadratureConfig cfg;
  const std::vector<double> radii{1e-3, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.999};
  for (const auto& e : self_maps()) {
    for (double p : {1.2, 1.5, 1.8}) {
      CAPTURE(e.map.label());
      CAPTURE(p);
      const DilatationOrder order(p);
      const auto s = dilatation_series(e.map, order, inner_grid(radii, cfg), cfg);
      for (double r : radii) {
        const auto in = radial_integral_inner(s, r, order, cfg.eps_trunc);
        CHECK(in.value <= 1.0 / (2.0 - p) + 1e-6);
        CHECK(in.converged);
      }
    }
  }
}

TEST_CASE("extended-real integrand conventions") {
  CHECK(radial_integrand(0.5, kInf, DilatationOrder(3.0)) == 0.0);
  CHECK(radial_integrand(0.5, 0.0, DilatationOrder(3.0)) == kInf);
  CHECK(radial_integrand(0.5, 2.0, DilatationOrder(3.0)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("parallel sampling is deterministic") {
  const auto grid = quad::log_grid({1e-3, 0.9}, 500);
  const auto f = [](double t) { return std::sin(1.0 / t) + 2.0; };
  const auto a = sample_series(grid, f);
  const auto b = sample_series(grid, f);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(a.values()[i] == f(grid[i]));
    CHECK(a.values()[i] == b.values()[i]);
  }
  CHECK_THROWS_AS(sample_series(grid, [](double t) -> double {
                    if (t > 0.5) fail(ErrorCode::BlowUp, "boom");
                    return 1.0;
                  }),
                  Error);
}

TEST_CASE("quadrature configuration validation") {
  QuadratureConfig c;
  CHECK_NOTHROW(c.validate());
  c.n_theta = 15;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.n_r = 8;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.eps_trunc = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
}
