#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "dilatox/mapping.hpp"
#include "dilatox/profile.hpp"

namespace dilatox {

/// Exact expressions available for a catalog map. Every catalog map has |f|
/// constant on circles, so all entries are functions of the radius.
struct ClosedForms {
  std::function<double(double r)> modulus;              // |f| on |z| = r
  std::function<double(double r)> jacobian;             // J_f
  std::function<double(double r, double p)> dilatation;  // D_p
  std::function<double(double r)> area;                  // S(r)
};

struct CatalogEntry {
  MappingModel map;
  ClosedForms exact;
  std::optional<RadialProfile> profile;  // set for maps of the form R(r) e^{i theta}
};

namespace catalog {

/// f(z) = k z. The catalog requires 0 < |k| <= 1.
CatalogEntry linear(Complex k);
CatalogEntry identity();

/// f(z) = z |z|^alpha, alpha > 0.
CatalogEntry radial_stretch(double alpha);

/// The disc automorphism R(r) e^{i theta} with R = I(r)^{-1/(p-2)}, p > 2,
/// whose p-angular dilatation is (ln(e/r))^{p-1}.
CatalogEntry log_singular(double p);

/// I(r) = 1 + (p-2) int_r^1 dt / (t^{p-1} ln^{p-1}(e/t)).
double log_singular_integral(double p, double r);

/// f = kappa^{1/m} r e^{i theta}, the exact solution of
/// f_r = -i/(kappa r^{m+1}) |f_theta|^m f_theta. Not a self-map of the disc
/// when kappa^{1/m} > 1.
CatalogEntry beltrami_exact(double m, double kappa);

/// R(r) e^{i theta} for an arbitrary profile; the area closed form assumes
/// R(0) = 0.
CatalogEntry radial(std::string label, RadialProfile profile);

/// {"type": "radial_profile", "samples": [[r, R], ...]} with strictly
/// increasing r and R, R in (0, 1]; monotone cubic interpolation in between.
CatalogEntry from_json(const nlohmann::json& doc);

/// Catalog lookup: linear (k, or k_re/k_im), identity, radial_stretch (alpha),
/// log_singular (p), beltrami_exact (m, kappa).
CatalogEntry by_name(const std::string& name, const std::map<std::string, double>& params);

}  // namespace catalog
}  // namespace dilatox
