#include "dilatox/catalog.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "dilatox/quadrature.hpp"

namespace dilatox::catalog {

namespace {

constexpr double kPi = std::numbers::pi;

CatalogEntry make_linear(std::string label, Complex k) {
  const double a = std::abs(k);
  auto value = [k](const PolarPoint& z) { return k * z.z(); };
  auto partials = [k](const PolarPoint& z) {
    const Complex u = z.unit();
    return Partials{k * u, k * Complex(0.0, z.r()) * u};
  };
  ClosedForms exact{
      [a](double r) { return a * r; },
      [a](double) { return a * a; },
      [a](double, double p) { return std::pow(a, p - 2.0); },
      [a](double r) { return kPi * a * a * r * r; },
  };
  return {MappingModel::analytic(std::move(label), value, partials), std::move(exact), std::nullopt};
}

double get(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) fail(ErrorCode::InvalidArgument, "missing map parameter '" + key + "'");
  return it->second;
}

// Single-entry cache: I(r) is an integral, and one circle sample asks for it
// at the same r many times. thread_local keeps the map reentrant.
struct LogSingularCache {
  double p = 0.0;
  double r = -1.0;
  double value = 0.0;
};

}  // namespace

CatalogEntry linear(Complex k) {
  const double a = std::abs(k);
  if (!(a > 0.0) || a > 1.0) fail(ErrorCode::InvalidArgument, "linear map needs 0 < |k| <= 1");
  return make_linear("linear", k);
}

CatalogEntry identity() { return make_linear("identity", Complex(1.0, 0.0)); }

CatalogEntry radial(std::string label, RadialProfile profile) {
  auto value = [profile](const PolarPoint& z) { return profile.value(z.r()) * z.unit(); };
  auto partials = [profile](const PolarPoint& z) {
    const Complex u = z.unit();
    return Partials{profile.derivative(z.r()) * u, Complex(0.0, profile.value(z.r())) * u};
  };
  ClosedForms exact{
      [profile](double r) { return profile.value(r); },
      [profile](double r) { return profile.value(r) * profile.derivative(r) / r; },
      [profile](double r, double p) {
        return std::pow(profile.value(r) / r, p - 1.0) / profile.derivative(r);
      },
      [profile](double r) { return kPi * profile.value(r) * profile.value(r); },
  };
  return {MappingModel::analytic(std::move(label), value, partials), std::move(exact), profile};
}

CatalogEntry radial_stretch(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorCode::InvalidArgument, "radial_stretch needs alpha > 0");
  RadialProfile profile([alpha](double r) { return std::pow(r, alpha + 1.0); },
                        [alpha](double r) { return (alpha + 1.0) * std::pow(r, alpha); });
  auto entry = radial("radial_stretch", profile);
  entry.exact.jacobian = [alpha](double r) { return (alpha + 1.0) * std::pow(r, 2.0 * alpha); };
  entry.exact.dilatation = [alpha](double r, double p) { return std::pow(r, alpha * (p - 2.0)) / (alpha + 1.0); };
  return entry;
}

double log_singular_integral(double p, double r) {
  if (!(p > 2.0)) fail(ErrorCode::InvalidArgument, "log_singular needs p > 2");
  if (!(r > 0.0) || r > 1.0) fail(ErrorCode::OutOfDomain, "log_singular_integral needs r in (0,1]");
  thread_local LogSingularCache cache;
  if (cache.p == p && cache.r == r) return cache.value;
  // With s = ln t the integrand becomes e^{(2-p)s} (1-s)^{1-p} on [ln r, 0].
  const double a = std::log(r);
  const auto integrand = [p](double s) { return std::exp((2.0 - p) * s) * std::pow(1.0 - s, 1.0 - p); };
  const int panels = 1 + static_cast<int>(std::ceil(-a * std::max(1.0, p - 2.0)));
  const double value = 1.0 + (p - 2.0) * quad::gauss_composite(integrand, a, 0.0, panels);
  cache = {p, r, value};
  return value;
}

CatalogEntry log_singular(double p) {
  if (!(p > 2.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "log_singular needs p > 2");
  auto R = [p](double r) { return std::pow(log_singular_integral(p, r), -1.0 / (p - 2.0)); };
  auto dR = [p, R](double r) {
    const double L = 1.0 - std::log(r);
    return R(r) * std::pow(r * L, 1.0 - p) / log_singular_integral(p, r);
  };
  auto entry = radial("log_singular", RadialProfile(R, dR));
  return entry;
}

CatalogEntry beltrami_exact(double m, double kappa) {
  if (!(m > 0.0) || !(kappa > 0.0)) fail(ErrorCode::InvalidArgument, "beltrami_exact needs m > 0 and kappa > 0");
  return make_linear("beltrami_exact", Complex(std::pow(kappa, 1.0 / m), 0.0));
}

CatalogEntry from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("type", "") != "radial_profile") {
    fail(ErrorCode::ParseError, "map document must have \"type\": \"radial_profile\"");
  }
  if (!doc.contains("samples") || !doc["samples"].is_array()) fail(ErrorCode::ParseError, "missing samples array");
  std::vector<double> rs, Rs;
  for (const auto& s : doc["samples"]) {
    if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
      fail(ErrorCode::ParseError, "each sample must be [r, R]");
    }
    rs.push_back(s[0].get<double>());
    Rs.push_back(s[1].get<double>());
  }
  if (rs.size() < 2) fail(ErrorCode::ParseError, "need at least two samples");
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (!(rs[i] > 0.0) || rs[i] > 1.0) fail(ErrorCode::ParseError, "sample radius outside (0,1]");
    if (!(Rs[i] > 0.0) || Rs[i] > 1.0) fail(ErrorCode::ParseError, "sample value outside (0,1]");
    if (i > 0 && !(rs[i] > rs[i - 1])) fail(ErrorCode::ParseError, "sample radii must be strictly increasing");
    if (i > 0 && !(Rs[i] > Rs[i - 1])) fail(ErrorCode::ParseError, "profile must be strictly increasing");
  }
  return radial(doc.value("label", std::string("radial_profile")),
                RadialProfile(HermiteSpline::monotone(std::move(rs), std::move(Rs))));
}

CatalogEntry by_name(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "identity") return identity();
  if (name == "linear") {
    if (params.count("k")) return linear(Complex(get(params, "k"), 0.0));
    const double re = params.count("k_re") ? params.at("k_re") : 0.0;
    const double im = params.count("k_im") ? params.at("k_im") : 0.0;
    if (!params.count("k_re") && !params.count("k_im")) fail(ErrorCode::InvalidArgument, "linear needs k");
    return linear(Complex(re, im));
  }
  if (name == "radial_stretch") return radial_stretch(get(params, "alpha"));
  if (name == "log_singular") return log_singular(get(params, "p"));
  if (name == "beltrami_exact") return beltrami_exact(get(params, "m"), get(params, "kappa"));
  fail(ErrorCode::InvalidArgument, "unknown map '" + name + "'");
}

}  // namespace dilatox::catalog
