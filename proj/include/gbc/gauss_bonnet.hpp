#pragma once

// Curvature densities and functionals: the Gauss-Bonnet density, Lipschitz-
// Killing densities, the Q_k functional, Gauss-Kronecker curvature, the b- and
// c-formulation boundary sums and the Euler characteristic estimators
//
//   (2pi)^{m/2} chi(M) = K_m(M) + sum_k b_{m,k} Q_k(R, h | bdM)
//                      = K_m(M) + sum_k c_{m,k} Q_k(Rbar, h | bdM),
//
// plus the flat-manifold check  int_bdM K = Vol(S^{m-1}) chi(M).

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbc/combinat.hpp"
#include "gbc/double_forms.hpp"
#include "gbc/geometry_models.hpp"
#include "gbc/linalg.hpp"
#include "gbc/quadrature.hpp"
#include "gbc/rational.hpp"

namespace gbc {

namespace detail {
template <class S>
S from_rational(const Rational& r) {
  if constexpr (std::is_same_v<S, Rational>) {
    return r;
  } else {
    return r.to_double();
  }
}
}  // namespace detail

/// Gauss-Bonnet density  C^m(R^{m/2}) / (m! (m/2)!).
template <class S>
S gb_density(const DoubleForm<S>& r, int m) {
  if (m % 2 != 0 || m < 2) throw std::domain_error("gb_density: m must be even and >= 2");
  if (r.dims() != m || r.left_degree() != 2 || r.right_degree() != 2)
    throw std::invalid_argument("gb_density: expected a (2,2) form over m dims");
  S c = full_contract(df_power(r, m / 2));
  return c * detail::from_rational<S>(Rational(Integer(1), factorial(m) * factorial(m / 2)));
}

/// Lipschitz-Killing density of order 2k:  C^{2k}(R^k) / (k! (2k)!); the k = 0
/// density is the volume density 1.
template <class S>
S lk_density(const DoubleForm<S>& r, int n, int k) {
  if (k < 0 || 2 * k > n) throw std::domain_error("lk_density: need 0 <= 2k <= n");
  if (k == 0) return S(1);
  if (r.dims() != n || r.left_degree() != 2 || r.right_degree() != 2)
    throw std::invalid_argument("lk_density: expected a (2,2) form over n dims");
  S c = full_contract(df_power(r, k));
  return c * detail::from_rational<S>(Rational(Integer(1), factorial(k) * factorial(2 * k)));
}

/// Density of Q_k(A, b | N):  C^n(A^k owedge b^{n-2k}) / (n! k! (n-2k)!),
/// for frame-constant A and b.
template <class S>
S q_density(const DoubleForm<S>& a, const DoubleForm<S>& b, int n, int k) {
  if (k < 0 || 2 * k > n) throw std::domain_error("q_density: need 0 <= 2k <= n");
  if (a.left_degree() != 2 || a.right_degree() != 2 || b.left_degree() != 1 ||
      b.right_degree() != 1 || a.dims() != n || b.dims() != n)
    throw std::invalid_argument("q_density: expected (2,2) and (1,1) forms over n dims");
  S c = full_contract(owedge(df_power(a, k), df_power(b, n - 2 * k)));
  return c * detail::from_rational<S>(
                 Rational(Integer(1), factorial(n) * factorial(k) * factorial(n - 2 * k)));
}

/// Q_k over a homogeneous space: density times total measure.
template <class S>
measure_of<S> q_functional(const DoubleForm<S>& a, const DoubleForm<S>& b, int n, int k,
                           const measure_of<S>& total_measure) {
  return q_density(a, b, n, k) * total_measure;
}

/// Gauss-Kronecker curvature: determinant of the coefficient matrix of the
/// (1,1) second fundamental form.
template <class S>
S gauss_kronecker(const DoubleForm<S>& h) {
  if (h.left_degree() != 1 || h.right_degree() != 1)
    throw std::invalid_argument("gauss_kronecker: expected a (1,1) form");
  int m = h.dims();
  SquareMatrix<S> mat(m);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) mat(i - 1, j - 1) = h.coeff({i}, {j});
  return determinant(mat);
}

/// Same value through the contraction algebra:  C^m(h^m) / (m!)^2.
template <class S>
S gauss_kronecker_contraction(const DoubleForm<S>& h) {
  if (h.left_degree() != 1 || h.right_degree() != 1)
    throw std::invalid_argument("gauss_kronecker_contraction: expected a (1,1) form");
  int m = h.dims();
  S c = full_contract(df_power(h, m));
  return c * detail::from_rational<S>(Rational(Integer(1), factorial(m) * factorial(m)));
}

/// Intrinsic route for even-dimensional hypersurfaces:
/// K = 2^{m/2} / (m!)^2 * C^m(R^{m/2}).
template <class S>
S gauss_kronecker_intrinsic(const DoubleForm<S>& r, int m) {
  if (m % 2 != 0) throw std::domain_error("gauss_kronecker_intrinsic: m must be even");
  S c = full_contract(df_power(r, m / 2));
  return c * detail::from_rational<S>(
                 Rational(int_pow(2, m / 2), factorial(m) * factorial(m)));
}

/// K = (m!!/m!) * GB density.
template <class S>
S gb_density_to_gk(const DoubleForm<S>& r, int m) {
  return gb_density(r, m) *
         detail::from_rational<S>(Rational(double_factorial(m), factorial(m)));
}

// ---------------------------------------------------------------------------
// Boundary terms.

template <class S>
struct BoundaryTerm {
  std::vector<measure_of<S>> per_k;
  measure_of<S> total{};
};

namespace detail {
/// Closed manifolds contribute no boundary term: per-k zeros.
template <class S>
BoundaryTerm<S> empty_boundary_term(int m) {
  BoundaryTerm<S> out;
  out.per_k.assign(m / 2, measure_of<S>{});
  return out;
}
}  // namespace detail

/// sum_k b_{m,k} Q_k(R, h | bdM) with the ambient curvature restricted to
/// boundary directions; zero for models with empty boundary.
template <class S>
BoundaryTerm<S> boundary_term_b(const ModelGeometry<S>& model) {
  if (model.dim % 2 != 0) throw std::domain_error("boundary_term_b: m must be even");
  int m = model.dim, n = m - 1;
  if (!model.boundary) return detail::empty_boundary_term<S>(m);
  const auto& bd = *model.boundary;
  BoundaryTerm<S> out;
  for (int k = 0; k <= m / 2 - 1; ++k) {
    auto term = detail::from_rational<S>(coeff_b(m, k)) *
                q_functional(bd.ambient_curvature, bd.second_fundamental, n, k, bd.measure);
    out.total = out.total + term;
    out.per_k.push_back(std::move(term));
  }
  return out;
}

/// sum_k c_{m,k} Q_k(Rbar, h | bdM) with the intrinsic boundary curvature;
/// zero for models with empty boundary.
template <class S>
BoundaryTerm<S> boundary_term_c(const ModelGeometry<S>& model) {
  if (model.dim % 2 != 0) throw std::domain_error("boundary_term_c: m must be even");
  int m = model.dim, n = m - 1;
  if (!model.boundary) return detail::empty_boundary_term<S>(m);
  const auto& bd = *model.boundary;
  BoundaryTerm<S> out;
  for (int k = 0; k <= m / 2 - 1; ++k) {
    auto term = detail::from_rational<S>(coeff_c(m, k)) *
                q_functional(bd.intrinsic_curvature, bd.second_fundamental, n, k, bd.measure);
    out.total = out.total + term;
    out.per_k.push_back(std::move(term));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density table.

enum class DensityKind { interior_GB, LK_2k, boundary_b, boundary_c, gauss_kronecker };

inline const char* density_kind_name(DensityKind k) {
  switch (k) {
    case DensityKind::interior_GB: return "interior_GB";
    case DensityKind::LK_2k: return "LK_2k";
    case DensityKind::boundary_b: return "boundary_b";
    case DensityKind::boundary_c: return "boundary_c";
    case DensityKind::gauss_kronecker: return "gauss_kronecker";
  }
  return "?";
}

/// One pointwise density of a model: the value, what family it belongs to,
/// and the order k where that applies.
template <class S>
struct DensityValue {
  DensityKind kind;
  int order = 0;
  S value{};
};

/// Every density the model supports: the Gauss-Bonnet density (even m), all
/// Lipschitz-Killing densities, and per-k boundary densities plus the
/// Gauss-Kronecker curvature of the boundary when there is one.
template <class S>
std::vector<DensityValue<S>> density_table(const ModelGeometry<S>& model) {
  std::vector<DensityValue<S>> out;
  int m = model.dim;
  if (m % 2 == 0)
    out.push_back({DensityKind::interior_GB, m / 2, gb_density(model.curvature, m)});
  for (int k = 0; 2 * k <= m; ++k)
    out.push_back({DensityKind::LK_2k, k, lk_density(model.curvature, m, k)});
  if (model.boundary) {
    const auto& bd = *model.boundary;
    out.push_back(
        {DensityKind::gauss_kronecker, 0, gauss_kronecker(bd.second_fundamental)});
    if (m % 2 == 0)
      for (int k = 0; k <= m / 2 - 1; ++k) {
        out.push_back({DensityKind::boundary_b, k,
                       q_density(bd.ambient_curvature, bd.second_fundamental, m - 1, k)});
        out.push_back({DensityKind::boundary_c, k,
                       q_density(bd.intrinsic_curvature, bd.second_fundamental, m - 1, k)});
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Euler characteristic estimators.

enum class Formulation { b, c, both };

struct QuadConfig {
  int sphere_level = 3;
  int radial_nodes = 32;
  bool force_quadrature = false;  // integrate homogeneous densities numerically
};

/// One verification record: interior term, per-k boundary contributions in
/// both formulations, and the resulting chi estimates.
struct GBReport {
  std::string model;
  int m = 0;
  int chi_declared = 0;
  bool chi_asserted = true;
  bool exact_mode = false;
  std::string note;

  double interior = 0.0;
  std::vector<double> boundary_b, boundary_c;
  double total_b = 0.0, total_c = 0.0;
  double chi_estimate_b = 0.0, chi_estimate_c = 0.0;
  double abs_err_b = 0.0, abs_err_c = 0.0;
  double rel_err_b = 0.0, rel_err_c = 0.0;  // relative to max(1, |chi|)

  // exact-mode views of the same numbers
  std::string interior_exact;
  std::vector<std::string> boundary_b_exact, boundary_c_exact;
  std::string chi_b_exact, chi_c_exact;
  bool exact_match_b = false, exact_match_c = false;

  bool has_b = false, has_c = false;
};

/// Exact-mode estimator for models with PiRational measures.
inline GBReport euler_estimate_exact(const ModelGeometry<Rational>& model,
                                     Formulation formulation = Formulation::both) {
  int m = model.dim;
  if (m % 2 != 0) throw std::domain_error("euler_estimate: odd m; use flat_check");
  GBReport rep;
  rep.model = model.name;
  rep.m = m;
  rep.chi_declared = model.euler_char;
  rep.chi_asserted = model.chi_asserted;
  rep.exact_mode = true;
  rep.note = model.note;

  Rational density = gb_density(model.curvature, m);
  PiRational interior = density * model.volume;
  rep.interior = interior.to_double();
  rep.interior_exact = interior.str();

  PiRational norm = two_pi_pow(m / 2);
  auto finish = [&](const BoundaryTerm<Rational>& term, bool is_b) {
    PiRational total = interior + term.total;
    PiRational chi = total / norm;
    if (chi.pi_power() != 0)
      throw std::logic_error("euler_estimate_exact: chi estimate kept a pi power");
    Rational chi_r = chi.coeff();
    double chi_d = chi_r.to_double();
    bool match = (chi_r == Rational(model.euler_char));
    if (is_b) {
      rep.has_b = true;
      for (const auto& t : term.per_k) {
        rep.boundary_b.push_back(t.to_double());
        rep.boundary_b_exact.push_back(t.str());
      }
      rep.total_b = total.to_double();
      rep.chi_estimate_b = chi_d;
      rep.chi_b_exact = chi_r.str();
      rep.abs_err_b = std::abs(chi_d - model.euler_char);
      rep.rel_err_b = rep.abs_err_b / std::max(1.0, std::abs(double(model.euler_char)));
      rep.exact_match_b = match;
    } else {
      rep.has_c = true;
      for (const auto& t : term.per_k) {
        rep.boundary_c.push_back(t.to_double());
        rep.boundary_c_exact.push_back(t.str());
      }
      rep.total_c = total.to_double();
      rep.chi_estimate_c = chi_d;
      rep.chi_c_exact = chi_r.str();
      rep.abs_err_c = std::abs(chi_d - model.euler_char);
      rep.rel_err_c = rep.abs_err_c / std::max(1.0, std::abs(double(model.euler_char)));
      rep.exact_match_c = match;
    }
  };

  if (formulation != Formulation::c) finish(boundary_term_b(model), true);
  if (formulation != Formulation::b) finish(boundary_term_c(model), false);
  return rep;
}

namespace detail {
/// Interior integral of the Gauss-Bonnet density, float mode. Homogeneous
/// models use density * volume unless quadrature is forced; radial models
/// integrate the profile.
inline double interior_integral_float(const ModelGeometry<double>& model,
                                      const QuadConfig& cfg) {
  int m = model.dim;
  double density = gb_density(model.curvature, m);
  if (model.profile) {
    const auto& pr = *model.profile;
    auto rule = gauss_legendre(0.0, pr.radius, cfg.radial_nodes);
    auto res = integrate(rule, [&](const std::vector<double>& x) {
      return std::pow(pr.f(x[0]), m - 1);
    });
    double vol_sm1 = sphere_volume(m - 1).to_double();
    return density * vol_sm1 * res.value;
  }
  if (cfg.force_quadrature && model.name.rfind("sphere", 0) == 0 && m <= 5) {
    auto rule = sphere_rule(m, cfg.sphere_level);
    auto res = integrate(rule, [&](const std::vector<double>&) { return density; });
    return res.value;
  }
  return density * model.volume;
}
}  // namespace detail

/// Float-mode estimator; quadrature drives the radial models, closed-form
/// measures drive the rest (or quadrature when forced).
inline GBReport euler_estimate_float(const ModelGeometry<double>& model,
                                     Formulation formulation = Formulation::both,
                                     const QuadConfig& cfg = {}) {
  int m = model.dim;
  if (m % 2 != 0) throw std::domain_error("euler_estimate: odd m; use flat_check");
  GBReport rep;
  rep.model = model.name;
  rep.m = m;
  rep.chi_declared = model.euler_char;
  rep.chi_asserted = model.chi_asserted;
  rep.exact_mode = false;
  rep.note = model.note;

  rep.interior = detail::interior_integral_float(model, cfg);
  double norm = std::pow(2.0 * 3.14159265358979323846264338327950288, m / 2);

  auto finish = [&](const BoundaryTerm<double>& term, bool is_b) {
    double total = rep.interior + term.total;
    double chi = total / norm;
    if (is_b) {
      rep.has_b = true;
      rep.boundary_b = term.per_k;
      rep.total_b = total;
      rep.chi_estimate_b = chi;
      rep.abs_err_b = std::abs(chi - model.euler_char);
      rep.rel_err_b = rep.abs_err_b / std::max(1.0, std::abs(double(model.euler_char)));
    } else {
      rep.has_c = true;
      rep.boundary_c = term.per_k;
      rep.total_c = total;
      rep.chi_estimate_c = chi;
      rep.abs_err_c = std::abs(chi - model.euler_char);
      rep.rel_err_c = rep.abs_err_c / std::max(1.0, std::abs(double(model.euler_char)));
    }
  };

  if (formulation != Formulation::c) finish(boundary_term_b(model), true);
  if (formulation != Formulation::b) finish(boundary_term_c(model), false);
  return rep;
}

// ---------------------------------------------------------------------------
// Flat-manifold theorem:  int_bdM K dvol = Vol(S^{m-1}) chi(M); the ratio
// estimates the Gauss-map degree.

struct FlatCheckReport {
  std::string model;
  int m = 0;
  int chi_declared = 0;
  double boundary_integral = 0.0;  // int_bdM K
  double sphere_volume = 0.0;      // Vol(S^{m-1})
  double degree_estimate = 0.0;
  bool exact_mode = false;
  std::string boundary_integral_exact, degree_exact;
  bool exact_match = false;
};

template <class S>
FlatCheckReport flat_check(const ModelGeometry<S>& model) {
  if (!model.curvature.is_zero())
    throw std::domain_error("flat_check: model has nonzero interior curvature");
  FlatCheckReport rep;
  rep.model = model.name;
  rep.m = model.dim;
  rep.chi_declared = model.euler_char;
  rep.exact_mode = std::is_same_v<S, Rational>;

  PiRational vol = sphere_volume(model.dim - 1);
  rep.sphere_volume = vol.to_double();

  if (!model.boundary) {
    rep.boundary_integral = 0.0;
    rep.degree_estimate = 0.0;
    if constexpr (std::is_same_v<S, Rational>) {
      rep.boundary_integral_exact = "0";
      rep.degree_exact = "0";
      rep.exact_match = (model.euler_char == 0);
    } else {
      rep.exact_match = (model.euler_char == 0);
    }
    return rep;
  }

  const auto& bd = *model.boundary;
  S k = gauss_kronecker(bd.second_fundamental);
  if constexpr (std::is_same_v<S, Rational>) {
    PiRational integral = k * bd.measure;
    rep.boundary_integral = integral.to_double();
    rep.boundary_integral_exact = integral.str();
    Rational deg = (integral / vol).coeff();
    rep.degree_estimate = deg.to_double();
    rep.degree_exact = deg.str();
    rep.exact_match = (deg == Rational(model.euler_char));
  } else {
    double integral = k * bd.measure;
    rep.boundary_integral = integral;
    rep.degree_estimate = integral / vol.to_double();
    rep.exact_match = std::abs(rep.degree_estimate - model.euler_char) < 1e-9;
  }
  return rep;
}

}  // namespace gbc
