#pragma once

// Closed-form model geometries: space forms, warped-product balls, the
// sphere-cross-ball family and flat manifolds, each bundling curvature,
// boundary data (outer-normal convention, h = +gbar on the unit sphere) and
// exact volume normalizations. Exact (Rational/PiRational) instances exist for
// the models whose measures are rational multiples of integer pi powers;
// every model has a float instance.

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbc/combinat.hpp"
#include "gbc/double_forms.hpp"
#include "gbc/quadrature.hpp"
#include "gbc/rational.hpp"

namespace gbc {

template <class S>
struct measure_traits;
template <>
struct measure_traits<Rational> {
  using type = PiRational;
};
template <>
struct measure_traits<double> {
  using type = double;
};
template <class S>
using measure_of = typename measure_traits<S>::type;

template <class S>
struct BoundaryData {
  DoubleForm<S> second_fundamental;   // h, outer-normal convention
  DoubleForm<S> intrinsic_curvature;  // Rbar of the boundary hypersurface
  DoubleForm<S> ambient_curvature;    // ambient R restricted to boundary directions
  DoubleForm<S> induced_metric;       // gbar (identity in the orthonormal frame)
  measure_of<S> measure;              // total boundary volume

  int dim() const { return second_fundamental.dims(); }

  /// Gauss equation residual R - (Rbar - 1/2 h owedge h); identically zero for
  /// every model here.
  DoubleForm<S> gauss_residual() const {
    DoubleForm<S> half_h2 = owedge(second_fundamental, second_fundamental);
    if constexpr (std::is_same_v<S, Rational>) {
      half_h2 = Rational(1, 2) * half_h2;
    } else {
      half_h2 = 0.5 * half_h2;
    }
    return ambient_curvature - (intrinsic_curvature - half_h2);
  }
};

template <class S>
struct ModelGeometry {
  std::string name;
  int dim = 0;
  int euler_char = 0;
  bool chi_asserted = true;  // false where chi is reported but not asserted
  std::string note;
  DoubleForm<S> curvature = DoubleForm<S>(1, 2, 2);  // frame-constant (2,2)
  measure_of<S> volume{};                            // total interior measure
  std::optional<BoundaryData<S>> boundary;

  // Radial warped-product data g = dt^2 + f(t)^2 g0 (float models only);
  // drives the radial quadrature path.
  struct RadialProfile {
    double curvature_constant = 0.0;  // a, with R = (a/2) g owedge g
    std::function<double(double)> f;
    std::function<double(double)> fprime;
    double radius = 1.0;
  };
  std::optional<RadialProfile> profile;

  /// All models here are homogeneous (or radially symmetric with
  /// frame-constant boundary data), so the point is ignored.
  const DoubleForm<S>& curvature_at(const std::vector<double>& /*point*/) const {
    return curvature;
  }
};

// ---------------------------------------------------------------------------
// Conversions exact -> float.

inline DoubleForm<double> to_float(const DoubleForm<Rational>& a) {
  DoubleForm<double> r(a.dims(), a.left_degree(), a.right_degree());
  for (const auto& [key, v] : a.coeffs()) r.add_term(key.first, key.second, v.to_double());
  return r;
}

inline BoundaryData<double> to_float(const BoundaryData<Rational>& b) {
  return BoundaryData<double>{to_float(b.second_fundamental), to_float(b.intrinsic_curvature),
                              to_float(b.ambient_curvature), to_float(b.induced_metric),
                              b.measure.to_double()};
}

inline ModelGeometry<double> to_float(const ModelGeometry<Rational>& m) {
  ModelGeometry<double> r;
  r.name = m.name;
  r.dim = m.dim;
  r.euler_char = m.euler_char;
  r.chi_asserted = m.chi_asserted;
  r.note = m.note;
  r.curvature = to_float(m.curvature);
  r.volume = m.volume.to_double();
  if (m.boundary) r.boundary = to_float(*m.boundary);
  return r;
}

// ---------------------------------------------------------------------------
// Factories.

namespace detail {
template <class S>
S half_scalar() {
  if constexpr (std::is_same_v<S, Rational>) {
    return Rational(1, 2);
  } else {
    return 0.5;
  }
}

/// Identity (1,1) form supported on indices [lo, hi] of an n-dim space.
template <class S>
DoubleForm<S> partial_metric(int n, int lo, int hi) {
  DoubleForm<S> r(n, 1, 1);
  for (int i = lo; i <= hi; ++i) r.add_term({i}, {i}, S(1));
  return r;
}
}  // namespace detail

/// Space form of constant sectional curvature a: R = (a/2) g owedge g.
/// a = 1 is the unit sphere S^m (chi = 2 for even m, 0 for odd, volume
/// Vol(S^m)); a = 0 is the flat torus [0,2pi]^m (chi = 0).
template <class S>
ModelGeometry<S> space_form(int m, const S& a) {
  if (m < 2) throw std::domain_error("space_form: m must be >= 2");
  ModelGeometry<S> model;
  model.dim = m;
  DoubleForm<S> g = DoubleForm<S>::metric(m);
  model.curvature = (detail::half_scalar<S>() * a) * owedge(g, g);
  if (a == S(1)) {
    model.name = "sphere:m=" + std::to_string(m);
    model.euler_char = (m % 2 == 0) ? 2 : 0;
    if constexpr (std::is_same_v<S, Rational>) {
      model.volume = sphere_volume(m);
    } else {
      model.volume = sphere_volume(m).to_double();
    }
  } else if (a == S(0)) {
    model.name = "flat-torus:m=" + std::to_string(m);
    model.euler_char = 0;
    if constexpr (std::is_same_v<S, Rational>) {
      model.volume = two_pi_pow(m);
    } else {
      model.volume = two_pi_pow(m).to_double();
    }
  } else {
    model.name = "space-form:m=" + std::to_string(m);
    model.note = "volume normalization only available for a in {0, 1}";
  }
  return model;
}

/// Compact flat model assembled from closed-form boundary data (R = 0 inside).
template <class S>
ModelGeometry<S> flat_with_boundary(int m, std::optional<BoundaryData<S>> boundary,
                                    int euler_char, const measure_of<S>& volume,
                                    const std::string& name) {
  if (m < 2) throw std::domain_error("flat_with_boundary: m must be >= 2");
  ModelGeometry<S> model;
  model.name = name;
  model.dim = m;
  model.euler_char = euler_char;
  model.curvature = DoubleForm<S>(m, 2, 2);  // zero form
  model.volume = volume;
  model.boundary = std::move(boundary);
  return model;
}

/// Unit ball B^m in flat space: boundary S^{m-1} with h = gbar,
/// Rbar = 1/2 gbar owedge gbar, chi = 1.
template <class S>
ModelGeometry<S> euclidean_ball(int m) {
  if (m < 2) throw std::domain_error("euclidean_ball: m must be >= 2");
  int n = m - 1;
  BoundaryData<S> bd{DoubleForm<S>::metric(n),
                     detail::half_scalar<S>() *
                         owedge(DoubleForm<S>::metric(n), DoubleForm<S>::metric(n)),
                     DoubleForm<S>(n, 2, 2), DoubleForm<S>::metric(n), {}};
  measure_of<S> vol{};
  if constexpr (std::is_same_v<S, Rational>) {
    bd.measure = sphere_volume(n);
    vol = Rational(1, m) * sphere_volume(n);
  } else {
    bd.measure = sphere_volume(n).to_double();
    vol = sphere_volume(n).to_double() / m;
  }
  return flat_with_boundary<S>(m, std::move(bd), 1, vol,
                               "euclidean-ball:m=" + std::to_string(m));
}

template <class S>
ModelGeometry<S> flat_torus(int m) {
  return space_form<S>(m, S(0));
}

/// The sphere-cross-ball family S^p x B^{q+1} (m = p+q+1): all interior
/// curvature sits on the p-sphere factor, the boundary S^p x S^q curves only
/// along the q-sphere factor (h), and the Gauss-Bonnet density vanishes
/// identically. chi = 2 is asserted for p even, q odd, where the boundary
/// total has the closed form 2 (2 pi)^{m/2}; other parities carry the
/// product-formula value and are reported without assertion.
template <class S>
ModelGeometry<S> ball_cross_sphere(int p, int q) {
  if (p < 1 || q < 1) throw std::domain_error("ball_cross_sphere: need p, q >= 1");
  int m = p + q + 1;
  int n = m - 1;  // boundary dimension p + q
  ModelGeometry<S> model;
  model.name = "ball-cross-sphere:p=" + std::to_string(p) + ",q=" + std::to_string(q);
  model.dim = m;

  if (p % 2 == 0 && q % 2 == 1) {
    model.euler_char = 2;
    model.chi_asserted = true;
  } else if (q % 2 == 0) {
    model.euler_char = 2;  // chi per product formula
    model.chi_asserted = (m % 2 == 0) ? false : true;
    if (m % 2 == 0)
      model.note = "p odd, q even: the computed boundary total vanishes while the "
                   "product formula gives chi = 2; both sides are reported, "
                   "equality is not asserted";
  } else {
    model.euler_char = 0;  // p odd, q odd
    model.chi_asserted = true;
  }
  if (m % 2 != 0 && model.note.empty())
    model.note = "odd total dimension; even-dimensional boundary formulas do not apply";

  // Interior: curvature (1/2) P1 owedge P1 on the sphere-factor directions
  // 1..p of the m-dim frame; its Gauss-Bonnet density vanishes since p < m.
  DoubleForm<S> p1_m = detail::partial_metric<S>(m, 1, p);
  model.curvature = detail::half_scalar<S>() * owedge(p1_m, p1_m);
  if constexpr (std::is_same_v<S, Rational>) {
    model.volume = Rational(1, q + 1) * (sphere_volume(p) * sphere_volume(q));
  } else {
    model.volume = (sphere_volume(p) * sphere_volume(q)).to_double() / (q + 1);
  }

  // Boundary S^p x S^q: directions 1..p tangent to S^p, p+1..p+q tangent to
  // S^q, outer normal radial in the ball factor.
  DoubleForm<S> p1 = detail::partial_metric<S>(n, 1, p);
  DoubleForm<S> p2 = detail::partial_metric<S>(n, p + 1, p + q);
  BoundaryData<S> bd{p2,
                     detail::half_scalar<S>() * (owedge(p1, p1) + owedge(p2, p2)),
                     detail::half_scalar<S>() * owedge(p1, p1),
                     DoubleForm<S>::metric(n),
                     {}};
  if constexpr (std::is_same_v<S, Rational>) {
    bd.measure = sphere_volume(p) * sphere_volume(q);
  } else {
    bd.measure = (sphere_volume(p) * sphere_volume(q)).to_double();
  }
  model.boundary = std::move(bd);
  return model;
}

enum class WarpProfile { euclidean, spherical, hyperbolic };  // f = t, sin t, sinh t

/// Rotationally symmetric ball of radius r with metric dt^2 + f(t)^2 g0.
/// Boundary sphere S_r: h = (f'(r)/f(r)) gbar, Rbar = (1/f(r)^2) * 1/2 gbar owedge gbar.
/// Float-mode model; the interior is the corresponding space form
/// (a = 0, 1, -1) integrated radially.
inline ModelGeometry<double> warped_ball(int m, WarpProfile profile, double r) {
  if (m < 2) throw std::domain_error("warped_ball: m must be >= 2");
  if (!(r > 0)) throw std::domain_error("warped_ball: radius must be > 0");
  std::function<double(double)> f, fp;
  double a = 0.0;
  std::string name;
  switch (profile) {
    case WarpProfile::euclidean:
      f = [](double t) { return t; };
      fp = [](double) { return 1.0; };
      a = 0.0;
      name = "euclidean-ball";
      break;
    case WarpProfile::spherical:
      f = [](double t) { return std::sin(t); };
      fp = [](double t) { return std::cos(t); };
      a = 1.0;
      name = "spherical-cap";
      break;
    case WarpProfile::hyperbolic:
      f = [](double t) { return std::sinh(t); };
      fp = [](double t) { return std::cosh(t); };
      a = -1.0;
      name = "hyperbolic-ball";
      break;
  }
  // f must stay positive on (0, r]
  for (int i = 1; i <= 64; ++i) {
    double t = r * i / 64.0;
    if (!(f(t) > 0.0))
      throw std::domain_error("warped_ball: profile not positive on (0, r]");
  }

  ModelGeometry<double> model;
  std::ostringstream os;
  os << name << ":m=" << m << ",r=" << r;
  model.name = os.str();
  model.dim = m;
  model.euler_char = 1;
  DoubleForm<double> g = DoubleForm<double>::metric(m);
  model.curvature = (a / 2.0) * owedge(g, g);

  double vol_sm1 = sphere_volume(m - 1).to_double();
  auto radial = gauss_legendre(0.0, r, 64);
  double radial_vol =
      integrate(radial, [&](const std::vector<double>& x) {
        return std::pow(f(x[0]), m - 1);
      }).value;
  model.volume = vol_sm1 * radial_vol;

  int n = m - 1;
  double fr = f(r), fpr = fp(r);
  DoubleForm<double> gbar = DoubleForm<double>::metric(n);
  BoundaryData<double> bd{(fpr / fr) * gbar,
                          (0.5 / (fr * fr)) * owedge(gbar, gbar),
                          (a / 2.0) * owedge(gbar, gbar),
                          gbar,
                          vol_sm1 * std::pow(fr, m - 1)};
  model.boundary = std::move(bd);

  typename ModelGeometry<double>::RadialProfile rp;
  rp.curvature_constant = a;
  rp.f = f;
  rp.fprime = fp;
  rp.radius = r;
  model.profile = rp;
  return model;
}

// ---------------------------------------------------------------------------
// Registry: models addressable as "name:key=value,...".

struct ModelEntry {
  std::optional<ModelGeometry<Rational>> exact;  // absent for quadrature-only models
  ModelGeometry<double> flt;
};

struct ModelSelector {
  std::string base;
  std::map<std::string, std::string> kv;

  int get_int(const std::string& key, int fallback = -1) const {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (fallback < 0) throw std::invalid_argument("model selector: missing key '" + key + "'");
      return fallback;
    }
    return std::stoi(it->second);
  }
  double get_double(const std::string& key, double fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
  }
};

inline ModelSelector parse_selector(const std::string& s) {
  ModelSelector sel;
  auto colon = s.find(':');
  sel.base = s.substr(0, colon);
  if (colon == std::string::npos) return sel;
  std::string rest = s.substr(colon + 1);
  size_t pos = 0;
  while (pos < rest.size()) {
    size_t comma = rest.find(',', pos);
    std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("model selector: expected key=value in '" + item + "'");
    sel.kv[item.substr(0, eq)] = item.substr(eq + 1);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return sel;
}

inline std::vector<std::string> registry_names() {
  return {
      "sphere:m=<even>",
      "flat-torus:m=<int>",
      "euclidean-ball:m=<int>[,r=<float>]",
      "hyperbolic-ball:m=<int>,r=<float>",
      "spherical-cap:m=<int>,r=<float>",
      "ball-cross-sphere:p=<int>,q=<int>",
  };
}

struct UnknownModelError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline ModelEntry make_model(const std::string& selector) {
  ModelSelector sel = parse_selector(selector);
  ModelEntry entry;
  if (sel.base == "sphere") {
    int m = sel.get_int("m");
    entry.exact = space_form<Rational>(m, Rational(1));
    entry.flt = to_float(*entry.exact);
  } else if (sel.base == "flat-torus") {
    int m = sel.get_int("m");
    entry.exact = flat_torus<Rational>(m);
    entry.flt = to_float(*entry.exact);
  } else if (sel.base == "euclidean-ball") {
    int m = sel.get_int("m");
    double r = sel.get_double("r", 1.0);
    if (r == 1.0) {
      entry.exact = euclidean_ball<Rational>(m);
      entry.flt = to_float(*entry.exact);
      entry.flt.profile = warped_ball(m, WarpProfile::euclidean, 1.0).profile;
    } else {
      entry.flt = warped_ball(m, WarpProfile::euclidean, r);
    }
  } else if (sel.base == "hyperbolic-ball") {
    entry.flt = warped_ball(sel.get_int("m"), WarpProfile::hyperbolic,
                            sel.get_double("r", 1.0));
  } else if (sel.base == "spherical-cap") {
    entry.flt = warped_ball(sel.get_int("m"), WarpProfile::spherical,
                            sel.get_double("r", 0.7));
  } else if (sel.base == "ball-cross-sphere") {
    int p = sel.get_int("p"), q = sel.get_int("q");
    entry.exact = ball_cross_sphere<Rational>(p, q);
    entry.flt = to_float(*entry.exact);
  } else {
    std::ostringstream os;
    os << "unknown model '" << selector << "'; registry:";
    for (const auto& n : registry_names()) os << "\n  " << n;
    throw UnknownModelError(os.str());
  }
  return entry;
}

}  // namespace gbc
