#pragma once

// Numerical curvature of a coordinate-chart metric via central differences:
// Christoffel symbols from the Koszul formula, the covariant curvature tensor
// in coordinates, frame curvature through a Gram-Schmidt orthonormal frame,
// and residuals of Cartan's structure equations and the first Bianchi
// identity evaluated as finite-difference diagnostics.

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gbc/double_forms.hpp"
#include "gbc/geometry_models.hpp"
#include "gbc/linalg.hpp"

namespace gbc {

struct ChartMetric {
  int dim = 0;
  std::function<Matd(const std::vector<double>&)> g_fn;
  double fd_step = 1e-3;
  std::vector<double> box_lo, box_hi;

  Matd metric_at(const std::vector<double>& x) const {
    Matd g = g_fn(x);
    if (g.size() != dim) throw std::invalid_argument("ChartMetric: g_fn size mismatch");
    return g;
  }
};

using Christoffels = std::vector<std::vector<std::vector<double>>>;  // [k][i][j]

namespace detail {

inline void check_interior(const ChartMetric& metric, const std::vector<double>& x,
                           double clearance) {
  if (static_cast<int>(x.size()) != metric.dim)
    throw std::invalid_argument("point dimension mismatch");
  for (int a = 0; a < metric.dim; ++a) {
    if (x[a] - clearance < metric.box_lo[a] || x[a] + clearance > metric.box_hi[a]) {
      std::ostringstream os;
      os << "finite-difference stencil leaves the domain box at coordinate " << a + 1;
      throw std::domain_error(os.str());
    }
  }
}

inline Matd spd_metric_at(const ChartMetric& metric, const std::vector<double>& x) {
  Matd g = metric.metric_at(x);
  if (!is_spd(g))
    throw std::domain_error("metric not symmetric positive definite at a stencil point");
  return g;
}

}  // namespace detail

/// Christoffel symbols Gamma[k][i][j] = Gamma^k_{ij}, from the Koszul formula
/// with central differences of the metric; symmetric in (i,j).
inline Christoffels christoffel(const ChartMetric& metric, const std::vector<double>& x) {
  detail::check_interior(metric, x, 2.0 * metric.fd_step);
  int m = metric.dim;
  double h = metric.fd_step;
  Matd g = detail::spd_metric_at(metric, x);
  Matd ginv = inverse(g);

  std::vector<Matd> dg;  // dg[a](i,j) = d g_ij / dx_a
  dg.reserve(m);
  for (int a = 0; a < m; ++a) {
    std::vector<double> xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    Matd gp = detail::spd_metric_at(metric, xp);
    Matd gm = detail::spd_metric_at(metric, xm);
    Matd da(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) da(i, j) = (gp(i, j) - gm(i, j)) / (2.0 * h);
    dg.push_back(std::move(da));
  }

  Christoffels gamma(m, std::vector<std::vector<double>>(m, std::vector<double>(m, 0.0)));
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int l = 0; l < m; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[k][i][j] = 0.5 * s;
      }
  return gamma;
}

/// Covariant curvature in chart coordinates,
///   R(d_i, d_j; d_k, d_l) = <grad_j grad_i d_k - grad_i grad_j d_k, d_l>,
/// flattened as r[((i*m+j)*m+k)*m+l]. Christoffel derivatives are nested
/// central differences.
inline std::vector<double> curvature_coordinates(const ChartMetric& metric,
                                                 const std::vector<double>& x) {
  detail::check_interior(metric, x, 3.0 * metric.fd_step);
  int m = metric.dim;
  double h = metric.fd_step;
  Matd g = detail::spd_metric_at(metric, x);
  Christoffels gamma = christoffel(metric, x);

  // dgamma[a][k][i][j] = d Gamma^k_{ij} / dx_a
  std::vector<Christoffels> dgamma;
  dgamma.reserve(m);
  for (int a = 0; a < m; ++a) {
    std::vector<double> xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    Christoffels gp = christoffel(metric, xp);
    Christoffels gm = christoffel(metric, xm);
    Christoffels da(m, std::vector<std::vector<double>>(m, std::vector<double>(m, 0.0)));
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) da[k][i][j] = (gp[k][i][j] - gm[k][i][j]) / (2.0 * h);
    dgamma.push_back(std::move(da));
  }

  auto idx = [m](int i, int j, int k, int l) { return ((i * m + j) * m + k) * m + l; };
  std::vector<double> r(static_cast<size_t>(m) * m * m * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          double v = 0.0;
          for (int s = 0; s < m; ++s) {
            v += (dgamma[j][s][i][k] - dgamma[i][s][j][k]) * g(s, l);
            for (int t = 0; t < m; ++t)
              v += (gamma[s][i][k] * gamma[t][j][s] - gamma[s][j][k] * gamma[t][i][s]) * g(t, l);
          }
          r[idx(i, j, k, l)] = v;
        }
  return r;
}

struct FramedCurvature {
  std::vector<double> point;
  Matd frame;                    // columns: frame vectors in chart components
  DoubleForm<double> curvature;  // (2,2) frame components R(e_i,e_j;e_k,e_l)
  std::map<std::pair<int, int>, double> sectional;

  explicit FramedCurvature(int m) : frame(m), curvature(m, 2, 2) {}
};

/// Curvature at x expressed in the Gram-Schmidt orthonormal frame (chart basis
/// processed in index order, positive diagonal, positively oriented when the
/// chart is).
inline FramedCurvature curvature_frame(const ChartMetric& metric, const std::vector<double>& x) {
  int m = metric.dim;
  auto rc = curvature_coordinates(metric, x);
  Matd g = detail::spd_metric_at(metric, x);
  Matd e = gram_schmidt_frame(g);
  auto idx = [m](int i, int j, int k, int l) { return ((i * m + j) * m + k) * m + l; };

  FramedCurvature out(m);
  out.point = x;
  out.frame = e;
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j)
      for (int k = 1; k <= m; ++k)
        for (int l = k + 1; l <= m; ++l) {
          double v = 0.0;
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
              for (int c = 0; c < m; ++c)
                for (int d = 0; d < m; ++d)
                  v += rc[idx(a, b, c, d)] * e(a, i - 1) * e(b, j - 1) * e(c, k - 1) * e(d, l - 1);
          if (v != 0.0) out.curvature.add_term({i, j}, {k, l}, v);
        }
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j)
      out.sectional[{i, j}] = out.curvature.evaluate({i, j}, {i, j});
  return out;
}

struct StructureResiduals {
  double first_structure = 0.0;    // max | dtheta^i + sum_j omega_ij ^ theta^j |
  double second_structure = 0.0;   // max | domega_ij - Omega_ij + sum_k omega_ik ^ omega_kj |
  double bianchi_first = 0.0;      // algebraic cyclic sum on the frame curvature
  double bianchi_first_rel = 0.0;  // same, relative to max |R_frame|
};

namespace detail {

/// theta(i, a) = theta^i(d_a) at y.
inline Matd coframe_at(const ChartMetric& metric, const std::vector<double>& y) {
  int m = metric.dim;
  Matd g = spd_metric_at(metric, y);
  Matd e = gram_schmidt_frame(g);
  Matd th(m);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < m; ++a) {
      double s = 0.0;
      for (int b = 0; b < m; ++b) s += g(a, b) * e(b, i);
      th(i, a) = s;
    }
  return th;
}

/// omega[i][j][a] = omega_ij(d_a) = g(e_i, grad_{d_a} e_j) at y, with the
/// frame-field derivative itself a central difference.
inline std::vector<std::vector<std::vector<double>>> connection_at(
    const ChartMetric& metric, const std::vector<double>& y) {
  int m = metric.dim;
  double h = metric.fd_step;
  Matd g = spd_metric_at(metric, y);
  Matd e = gram_schmidt_frame(g);
  Christoffels gamma = christoffel(metric, y);

  std::vector<Matd> de;  // de[a](b, j) = d e(b,j) / dx_a
  de.reserve(m);
  for (int a = 0; a < m; ++a) {
    std::vector<double> yp = y, ym = y;
    yp[a] += h;
    ym[a] -= h;
    Matd ep = gram_schmidt_frame(spd_metric_at(metric, yp));
    Matd em = gram_schmidt_frame(spd_metric_at(metric, ym));
    Matd d(m);
    for (int b = 0; b < m; ++b)
      for (int j = 0; j < m; ++j) d(b, j) = (ep(b, j) - em(b, j)) / (2.0 * h);
    de.push_back(std::move(d));
  }

  // omega_ij(d_a) = g(e_i, grad_{d_a} e_j), with
  // (grad_{d_a} e_j)^u = d_a e^u_j + Gamma^u_{ab} e^b_j
  std::vector<std::vector<std::vector<double>>> om(
      m, std::vector<std::vector<double>>(m, std::vector<double>(m, 0.0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int a = 0; a < m; ++a) {
        double s = 0.0;
        for (int u = 0; u < m; ++u) {
          double cov = de[a](u, j);
          for (int b = 0; b < m; ++b) cov += gamma[u][a][b] * e(b, j);
          for (int t = 0; t < m; ++t) s += g(t, u) * e(t, i) * cov;
        }
        om[i][j][a] = s;
      }
  return om;
}

}  // namespace detail

/// Max-abs residuals of both structure equations and the first Bianchi
/// identity at x; exterior derivatives are finite differences of the form
/// coefficient fields along coordinate directions.
inline StructureResiduals structure_residuals(const ChartMetric& metric,
                                              const std::vector<double>& x) {
  int m = metric.dim;
  double h = metric.fd_step;
  detail::check_interior(metric, x, 4.0 * metric.fd_step);

  Matd g = detail::spd_metric_at(metric, x);
  Matd e = gram_schmidt_frame(g);
  auto omega = detail::connection_at(metric, x);
  auto rc = curvature_coordinates(metric, x);
  auto idx = [m](int i, int j, int k, int l) { return ((i * m + j) * m + k) * m + l; };

  // Omega_ij(d_a, d_b) = R(d_a, d_b; e_i, e_j)
  auto curv_form = [&](int i, int j, int a, int b) {
    double s = 0.0;
    for (int c = 0; c < m; ++c)
      for (int d = 0; d < m; ++d) s += rc[idx(a, b, c, d)] * e(c, i) * e(d, j);
    return s;
  };

  // d(theta) and d(omega) by nested central differences of the fields.
  std::vector<Matd> th_p, th_m;
  std::vector<std::vector<std::vector<std::vector<double>>>> om_p, om_m;
  for (int a = 0; a < m; ++a) {
    std::vector<double> xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    th_p.push_back(detail::coframe_at(metric, xp));
    th_m.push_back(detail::coframe_at(metric, xm));
    om_p.push_back(detail::connection_at(metric, xp));
    om_m.push_back(detail::connection_at(metric, xm));
  }
  Matd th = detail::coframe_at(metric, x);

  StructureResiduals res;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      for (int i = 0; i < m; ++i) {
        double dtheta = (th_p[a](i, b) - th_m[a](i, b)) / (2.0 * h) -
                        (th_p[b](i, a) - th_m[b](i, a)) / (2.0 * h);
        double rhs = 0.0;
        for (int j = 0; j < m; ++j)
          rhs -= omega[i][j][a] * th(j, b) - omega[i][j][b] * th(j, a);
        res.first_structure = std::max(res.first_structure, std::abs(dtheta - rhs));
      }
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double domega = (om_p[a][i][j][b] - om_m[a][i][j][b]) / (2.0 * h) -
                          (om_p[b][i][j][a] - om_m[b][i][j][a]) / (2.0 * h);
          double rhs = curv_form(i, j, a, b);
          for (int k = 0; k < m; ++k)
            rhs -= omega[i][k][a] * omega[k][j][b] - omega[i][k][b] * omega[k][j][a];
          res.second_structure = std::max(res.second_structure, std::abs(domega - rhs));
        }
    }

  FramedCurvature fr = curvature_frame(metric, x);
  res.bianchi_first = first_bianchi_residual(fr.curvature);
  double scale = fr.curvature.max_abs();
  res.bianchi_first_rel = (scale > 0.0) ? res.bianchi_first / scale : res.bianchi_first;
  return res;
}

// ---------------------------------------------------------------------------
// Named built-in charts ("polar-flat", "round-sphere", "hyperbolic",
// "sphere-stereographic", "warped:f=<t|sin|sinh>[,m=<2|3>]").

inline ChartMetric builtin_chart(const std::string& selector) {
  ModelSelector sel = parse_selector(selector);
  ChartMetric c;
  if (sel.base == "polar-flat") {
    c.dim = 2;
    c.g_fn = [](const std::vector<double>& x) {
      Matd g(2);
      g(0, 0) = 1.0;
      g(1, 1) = x[0] * x[0];
      return g;
    };
    c.box_lo = {0.25, -6.5};
    c.box_hi = {4.0, 6.5};
  } else if (sel.base == "round-sphere" ||
             (sel.base == "warped" && sel.kv.count("f") && sel.kv.at("f") == "sin")) {
    int m = sel.get_int("m", 2);
    c = ChartMetric{};
    c.dim = m;
    c.g_fn = [m](const std::vector<double>& x) {
      Matd g(m);
      g(0, 0) = 1.0;
      double w = std::sin(x[0]);
      g(1, 1) = w * w;
      for (int i = 2; i < m; ++i) {
        double s = std::sin(x[i - 1]);
        g(i, i) = g(i - 1, i - 1) * s * s;
      }
      return g;
    };
    c.box_lo.assign(m, 0.3);
    c.box_hi.assign(m, 2.8);
    c.box_lo.back() = -6.5;
    c.box_hi.back() = 6.5;
  } else if (sel.base == "hyperbolic") {
    // half-plane chart, curvature -1
    c.dim = 2;
    c.g_fn = [](const std::vector<double>& x) {
      Matd g(2);
      double y2 = x[1] * x[1];
      g(0, 0) = 1.0 / y2;
      g(1, 1) = 1.0 / y2;
      return g;
    };
    c.box_lo = {-3.0, 0.25};
    c.box_hi = {3.0, 4.0};
  } else if (sel.base == "sphere-stereographic") {
    c.dim = 2;
    c.g_fn = [](const std::vector<double>& x) {
      Matd g(2);
      double d = 1.0 + x[0] * x[0] + x[1] * x[1];
      double w = 4.0 / (d * d);
      g(0, 0) = w;
      g(1, 1) = w;
      return g;
    };
    c.box_lo = {-2.5, -2.5};
    c.box_hi = {2.5, 2.5};
  } else if (sel.base == "warped") {
    std::string f = sel.kv.count("f") ? sel.kv.at("f") : "";
    int m = sel.get_int("m", 2);
    std::function<double(double)> fw;
    if (f == "t") {
      fw = [](double t) { return t; };
    } else if (f == "sinh") {
      fw = [](double t) { return std::sinh(t); };
    } else {
      throw UnknownModelError("unknown warped profile '" + f + "' (use t, sin, sinh)");
    }
    c.dim = m;
    c.g_fn = [m, fw](const std::vector<double>& x) {
      Matd g(m);
      g(0, 0) = 1.0;
      double w = fw(x[0]);
      g(1, 1) = w * w;
      for (int i = 2; i < m; ++i) {
        double s = std::sin(x[i - 1]);
        g(i, i) = g(i - 1, i - 1) * s * s;
      }
      return g;
    };
    c.box_lo.assign(m, 0.3);
    c.box_hi.assign(m, 2.8);
    c.box_lo[0] = 0.25;
    c.box_hi[0] = 4.0;
    c.box_lo.back() = -6.5;
    c.box_hi.back() = 6.5;
  } else {
    throw UnknownModelError("unknown chart '" + selector +
                            "'; built-ins: polar-flat, round-sphere, hyperbolic, "
                            "sphere-stereographic, warped:f=<t|sin|sinh>[,m=<int>]");
  }
  return c;
}

}  // namespace gbc
