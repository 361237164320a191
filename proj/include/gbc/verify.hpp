#pragma once

// Identity-verification suites. Each criterion bundles a set of checks into
// VerificationReports; the CLI `verify` command and the acceptance runner are
// thin shells over these.

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gbc/combinat.hpp"
#include "gbc/double_forms.hpp"
#include "gbc/gauss_bonnet.hpp"
#include "gbc/geometry_models.hpp"
#include "gbc/linalg.hpp"
#include "gbc/metric_engine.hpp"
#include "gbc/quadrature.hpp"

namespace gbc {

struct VerificationReport {
  std::string check;       // identity being verified
  std::string expected;
  std::string computed;
  double tolerance = 0.0;  // 0 means exact
  bool pass = false;
  std::string provenance;  // formula / model the check comes from
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<VerificationReport> reports;

  bool passed() const {
    for (const auto& r : reports)
      if (!r.pass) return false;
    return true;
  }
};

/// Deliberate corruptions for negative-path testing of the exit-code contract.
struct FaultInjection {
  bool corrupt_coeff_b = false;
};

namespace verify_detail {

inline void exact_eq(std::vector<VerificationReport>& out, const std::string& check,
                     const Rational& expected, const Rational& computed,
                     const std::string& prov) {
  out.push_back({check, expected.str(), computed.str(), 0.0, expected == computed, prov});
}

inline void exact_eq(std::vector<VerificationReport>& out, const std::string& check,
                     const PiRational& expected, const PiRational& computed,
                     const std::string& prov) {
  out.push_back({check, expected.str(), computed.str(), 0.0, expected == computed, prov});
}

inline void close_to(std::vector<VerificationReport>& out, const std::string& check,
                     double expected, double computed, double tol, const std::string& prov) {
  std::ostringstream e, c;
  e.precision(15);
  c.precision(15);
  e << expected;
  c << computed;
  out.push_back({check, e.str(), c.str(), tol, std::abs(expected - computed) <= tol, prov});
}

inline void count_all(std::vector<VerificationReport>& out, const std::string& check,
                      long total, long good, const std::string& prov) {
  out.push_back({check, std::to_string(total) + " agreements",
                 std::to_string(good) + " agreements", 0.0, good == total, prov});
}

/// Random sparse (k,l) double form with small integer coefficients.
inline DoubleForm<Rational> random_form(std::mt19937& rng, int n, int k, int l, int terms) {
  DoubleForm<Rational> f(n, k, l);
  std::uniform_int_distribution<int> ix(1, n), cf(-6, 6);
  for (int t = 0; t < terms; ++t) {
    Indices left(k), right(l);
    for (int& v : left) v = ix(rng);
    for (int& v : right) v = ix(rng);
    int c = cf(rng);
    if (c == 0) c = 1;
    f.add_term(left, right, Rational(c));
  }
  return f;
}

}  // namespace verify_detail

// --- Criterion 1: exact coefficient identities for all even m <= 12 --------

inline CriterionResult criterion_coefficients(const FaultInjection& fault = {}) {
  using namespace verify_detail;
  CriterionResult cr{1, "exact coefficient identities, even m <= 12", {}};
  auto& out = cr.reports;
  for (int m = 2; m <= 12; m += 2) {
    bool a_ok = true, b_ok = true, c_ok = true, lam_ok = true;
    for (int k = 0; k <= m / 2 - 1; ++k) {
      if (coeff_a(m, k) != coeff_a_product_form(m, k)) a_ok = false;
      Rational b_expected = coeff_a(m, k) * Rational(int_pow(2, k)) *
                            Rational(factorial(k)) * Rational(factorial(m - 2 * k - 1));
      Rational b_actual = coeff_b(m, k);
      if (fault.corrupt_coeff_b && m == 4 && k == 1) b_actual += 1;
      if (b_actual != b_expected) b_ok = false;
      Rational c_sum = 0;
      for (int p = k; p <= m / 2 - 1; ++p) c_sum += coeff_w(m, p, k) * coeff_b(m, p);
      if (coeff_c(m, k) != c_sum) c_ok = false;
      for (int r = 0; r <= m / 2 - 1; ++r) {
        Rational lhs = Rational(m - 2 * k - 1, 2 * (k + 1)) * coeff_lambda(m, k, r) +
                       (k >= 1 ? coeff_lambda(m, k - 1, r) : Rational(0));
        Rational delta = (k == r) ? 1 : 0;
        if (lhs != delta) lam_ok = false;
      }
    }
    std::string M = "m=" + std::to_string(m);
    out.push_back({"a closed form = a product form, " + M, "equal", a_ok ? "equal" : "DIFFER",
                   0.0, a_ok, "two printed forms of the a coefficients"});
    out.push_back({"b = a*2^k*k!*(m-2k-1)!, " + M, "equal", b_ok ? "equal" : "DIFFER", 0.0,
                   b_ok, "b coefficient identity"});
    out.push_back({"c = sum_p w*b, " + M, "equal", c_ok ? "equal" : "DIFFER", 0.0, c_ok,
                   "c as the w-weighted sum of b"});
    out.push_back({"lambda recurrence ((m-2k-1)/(2k+2))*l_k + l_{k-1} = delta, " + M, "equal",
                   lam_ok ? "equal" : "DIFFER", 0.0, lam_ok, "lambda defining recurrence"});

    Rational gamma_sum = 0;
    for (int k = 0; k <= m / 2 - 1; ++k) gamma_sum += coeff_gamma(m, k);
    exact_eq(out, "sum_k gamma_{m,k} = (m-2)!!, " + M, Rational(double_factorial(m - 2)),
             gamma_sum, "gamma sum identity");

    PiRational lhs = coeff_a(m, 0) * Rational(factorial(m - 1)) * sphere_volume(m - 1);
    exact_eq(out, "a_{m,0}*(m-1)!*Vol(S^{m-1}) = (2pi)^{m/2}, " + M, two_pi_pow(m / 2), lhs,
             "normalization identity");
  }
  return cr;
}

// --- Criterion 2: Pfaffian oracle equivalence and pairing counts -----------

inline CriterionResult criterion_pfaffian() {
  using namespace verify_detail;
  CriterionResult cr{2, "Pfaffian: permutation sum = pairing sum, Pf^2 = det, |P_m| = (m-1)!!", {}};
  auto& out = cr.reports;
  std::mt19937 rng(20240211);
  std::uniform_int_distribution<int> entry(-9, 9);
  long total = 0, perm_eq = 0, det_eq = 0;
  for (int m : {2, 4, 6, 8}) {
    for (int rep = 0; rep < 50; ++rep) {
      AntisymMatrix<Rational> a(m);
      SquareMatrix<Rational> full(m);
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) a.set(i, j, Rational(entry(rng)));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) full(i, j) = a(i, j);
      Rational pf_perm = pfaffian_perm(a);
      Rational pf_pair = pfaffian_pairings(a);
      ++total;
      if (pf_perm == pf_pair) ++perm_eq;
      if (pf_pair * pf_pair == determinant(full)) ++det_eq;
    }
  }
  count_all(out, "pfaffian_perm = pfaffian_pairings on 200 random integer matrices", total,
            perm_eq, "pairing-sum rewrite of the Pfaffian");
  count_all(out, "Pf(A)^2 = det(A) on the same corpus", total, det_eq,
            "classical Pfaffian identity");
  for (int m = 2; m <= 10; m += 2)
    exact_eq(out, "|P_m| = (m-1)!! for m=" + std::to_string(m),
             Rational(double_factorial(m - 1)), Rational(pairing_count(m)),
             "pairing enumeration cardinality");
  return cr;
}

// --- Criterion 3: contraction oracle equivalence and closed forms ----------

inline CriterionResult criterion_contraction() {
  using namespace verify_detail;
  CriterionResult cr{3, "contraction: brute-force oracle, C^q(g^q), product rule", {}};
  auto& out = cr.reports;
  std::mt19937 rng(777001);
  std::uniform_int_distribution<int> nd(1, 5);
  long total = 0, good = 0;
  for (int rep = 0; rep < 500; ++rep) {
    int n = nd(rng);
    std::uniform_int_distribution<int> pd(0, n);
    int p = pd(rng);
    auto f = random_form(rng, n, p, p, 5);
    ++total;
    if (full_contract(f) == brute_force_contract(f)) ++good;
  }
  count_all(out, "full_contract = brute_force_contract on 500 random sparse forms (n <= 5)",
            total, good, "inductive contraction definition");

  bool cgq_ok = true;
  for (int n = 1; n <= 8; ++n) {
    auto g = DoubleForm<Rational>::metric(n);
    for (int q = 0; q <= n; ++q) {
      Rational expected(factorial(n) * factorial(q), factorial(n - q));
      if (full_contract(df_power(g, q)) != expected) cgq_ok = false;
    }
  }
  out.push_back({"C^q(g^q) = n!q!/(n-q)! for all n <= 8, q <= n", "equal",
                 cgq_ok ? "equal" : "DIFFER", 0.0, cgq_ok, "closed form for contractions of metric powers"});

  long pr_total = 0, pr_good = 0;
  for (int rep = 0; rep < 60; ++rep) {
    int n = 3 + static_cast<int>(rng() % 3);  // 3..5
    int pmax = n - 3;
    int p = (pmax <= 0) ? 0 : static_cast<int>(rng() % (pmax + 1));
    auto psi = random_form(rng, n, p, p, 4);
    auto g = DoubleForm<Rational>::metric(n);
    Rational base = full_contract(psi);
    for (int q = 1; q <= 3 && p + q <= n; ++q) {
      Rational factor = 1;
      for (int j = 1; j <= q; ++j) factor *= Rational((p + j) * (n - p + 1 - j));
      auto gq = df_power(g, q);
      ++pr_total;
      if (full_contract(owedge(psi, gq)) == factor * base) ++pr_good;
    }
  }
  count_all(out, "C^{p+q}(psi owedge g^q) = prod (p+j)(n-p+1-j) C^p(psi), q in {1,2,3}",
            pr_total, pr_good, "contraction product rule");
  return cr;
}

// --- Criterion 4: Gauss-Bonnet on closed space forms ------------------------

inline CriterionResult criterion_space_forms() {
  using namespace verify_detail;
  CriterionResult cr{4, "closed space forms: K_m/(2pi)^{m/2} = 2, quadrature path, Hopf identity", {}};
  auto& out = cr.reports;
  for (int m = 2; m <= 10; m += 2) {
    auto sphere = space_form<Rational>(m, Rational(1));
    PiRational km = gb_density(sphere.curvature, m) * sphere.volume;
    PiRational chi = km / two_pi_pow(m / 2);
    exact_eq(out, "exact K_m/(2pi)^{m/2} = 2 for S^" + std::to_string(m),
             PiRational(Rational(2)), chi, "top Lipschitz-Killing curvature of a closed manifold");
    auto rep = euler_estimate_exact(sphere, Formulation::b);
    out.push_back({"euler_estimate report agrees, S^" + std::to_string(m), "2",
                   rep.chi_b_exact, 0.0, rep.exact_match_b, "top Lipschitz-Killing curvature of a closed manifold"});
    // Hopf identity a^{m/2} Vol(M) = 1/2 Vol(S^m) chi
    exact_eq(out, "Hopf identity for S^" + std::to_string(m),
             Rational(1, 2) * sphere_volume(m) * Rational(2), sphere.volume, "Hopf volume identity for space forms");
  }
  for (int m : {2, 4}) {
    auto sphere = to_float(space_form<Rational>(m, Rational(1)));
    QuadConfig cfg;
    cfg.force_quadrature = true;
    cfg.sphere_level = 3;
    auto rep = euler_estimate_float(sphere, Formulation::b, cfg);
    close_to(out, "quadrature chi(S^" + std::to_string(m) + ")", 2.0, rep.chi_estimate_b, 1e-6,
             "top Lipschitz-Killing curvature, product-rule quadrature");
  }
  return cr;
}

// --- Criterion 5: the sphere-cross-ball family ------------------------------

inline CriterionResult criterion_ball_cross_sphere() {
  using namespace verify_detail;
  CriterionResult cr{5, "B x S family: total = 2(2pi)^{m/2}, interior 0, Q_{p/2} closed form", {}};
  auto& out = cr.reports;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {4, 1}}) {
    int m = p + q + 1;
    std::string name = "(p,q)=(" + std::to_string(p) + "," + std::to_string(q) + ")";
    auto model = ball_cross_sphere<Rational>(p, q);

    Rational interior_density = gb_density(model.curvature, m);
    exact_eq(out, "interior GB density vanishes, " + name, Rational(0), interior_density,
             "all curvature sits on a proper factor");

    auto bterm = boundary_term_b(model);
    exact_eq(out, "b-boundary total = 2(2pi)^{m/2}, " + name,
             Rational(2) * two_pi_pow(m / 2), bterm.total, "closed-form boundary total of the sphere-cross-ball family");
    auto cterm = boundary_term_c(model);
    exact_eq(out, "c-boundary total = 2(2pi)^{m/2}, " + name,
             Rational(2) * two_pi_pow(m / 2), cterm.total, "Gauss-equation rewrite");

    // Q_{p/2}(R,h | bdM) = p!/(2^{p/2} (p/2)!) Vol(S^p) Vol(S^q)
    const auto& bd = *model.boundary;
    PiRational q_value = q_functional(bd.ambient_curvature, bd.second_fundamental, m - 1,
                                      p / 2, bd.measure);
    PiRational q_closed = Rational(factorial(p), int_pow(2, p / 2) * factorial(p / 2)) *
                          (sphere_volume(p) * sphere_volume(q));
    exact_eq(out, "Q_{p/2} closed form, " + name, q_closed, q_value, "closed form of the single surviving Q_k");

    // Vol(S^p)Vol(S^q) = 2^{p/2+1} (p/2)! / (p! (q-1)!!) * (2pi)^{(p+q+1)/2}
    PiRational spsq = sphere_volume(p) * sphere_volume(q);
    PiRational spsq_closed =
        Rational(int_pow(2, p / 2 + 1) * factorial(p / 2), factorial(p) * double_factorial(q - 1)) *
        two_pi_pow((p + q + 1) / 2);
    exact_eq(out, "Vol(S^p)Vol(S^q) as PiRational, " + name, spsq_closed, spsq, "product of sphere volumes as rational times (2 pi)^{m/2}");
  }
  return cr;
}

// --- Criterion 6: warped-product balls --------------------------------------

inline CriterionResult criterion_warped_balls() {
  using namespace verify_detail;
  CriterionResult cr{6, "warped balls: Euclidean exact, hyperbolic/spherical radial identities", {}};
  auto& out = cr.reports;
  for (int m : {2, 4, 6}) {
    auto ball = euclidean_ball<Rational>(m);
    auto rep = euler_estimate_exact(ball, Formulation::both);
    bool ok = rep.exact_match_b && rep.exact_match_c && rep.chi_b_exact == "1" &&
              rep.chi_c_exact == "1";
    out.push_back({"Euclidean ball chi = 1 exactly, m=" + std::to_string(m), "1",
                   rep.chi_b_exact + " (b), " + rep.chi_c_exact + " (c)", 0.0, ok,
                   "gamma-sum identity"});
  }

  // Radial integral identities:
  //   hyperbolic: (-1)^{m/2}(m-1)!! int_0^r sinh^{m-1} + sum_k gamma cosh^{m-2k-1} = (m-2)!!
  //   spherical :          (m-1)!! int_0^r sin^{m-1}  + sum_k gamma cos^{m-2k-1}  = (m-2)!!
  auto radial_identity = [&](bool hyperbolic, int m, double r) {
    auto rule = gauss_legendre(0.0, r, 32);
    double integral = integrate(rule, [&](const std::vector<double>& x) {
                        return std::pow(hyperbolic ? std::sinh(x[0]) : std::sin(x[0]), m - 1);
                      }).value;
    double lead = double_factorial(m - 1).get_d() * integral;
    if (hyperbolic && (m / 2) % 2 == 1) lead = -lead;
    double sum = 0.0;
    for (int k = 0; k <= m / 2 - 1; ++k) {
      double fp = hyperbolic ? std::cosh(r) : std::cos(r);
      sum += coeff_gamma(m, k).to_double() * std::pow(fp, m - 2 * k - 1);
    }
    return lead + sum;
  };
  for (int m : {2, 4, 6}) {
    for (double r : {0.5, 1.0, 2.0})
      close_to(out,
               "hyperbolic ball identity m=" + std::to_string(m) + " r=" + std::to_string(r),
               double_factorial(m - 2).get_d(), radial_identity(true, m, r), 1e-9,
               "radial integral identity, f = sinh");
    for (double r : {0.5, 1.0, 1.4})
      close_to(out,
               "spherical ball identity m=" + std::to_string(m) + " r=" + std::to_string(r),
               double_factorial(m - 2).get_d(), radial_identity(false, m, r), 1e-9,
               "radial integral identity, f = sin");
  }

  // The same content through the model path: chi estimate = 1.
  QuadConfig cfg;
  cfg.radial_nodes = 32;
  for (int m : {2, 4, 6}) {
    auto hyp = warped_ball(m, WarpProfile::hyperbolic, 1.0);
    auto rep = euler_estimate_float(hyp, Formulation::both, cfg);
    close_to(out, "hyperbolic ball chi estimate, m=" + std::to_string(m), 1.0,
             rep.chi_estimate_c, 1e-9, "radial integral identity via euler_estimate");
    auto sph = warped_ball(m, WarpProfile::spherical, 1.0);
    auto rep2 = euler_estimate_float(sph, Formulation::both, cfg);
    close_to(out, "spherical cap chi estimate, m=" + std::to_string(m), 1.0,
             rep2.chi_estimate_c, 1e-9, "radial integral identity via euler_estimate");
  }
  return cr;
}

// --- Criterion 7: flat-manifold theorem -------------------------------------

inline CriterionResult criterion_flat_theorem() {
  using namespace verify_detail;
  CriterionResult cr{7, "flat manifolds: int_bd K = Vol(S^{m-1}) chi; classical 2D Gauss-Bonnet", {}};
  auto& out = cr.reports;
  for (int m : {2, 3, 4, 5}) {
    auto ball = euclidean_ball<Rational>(m);
    auto rep = flat_check(ball);
    out.push_back({"Gauss-map degree of B^" + std::to_string(m), "1", rep.degree_exact, 0.0,
                   rep.exact_match && rep.degree_exact == "1", "flat-boundary theorem"});
  }
  auto torus = flat_torus<Rational>(4);
  auto trep = flat_check(torus);
  out.push_back({"flat torus: 0 = Vol(S^3) * 0", "0", trep.degree_exact, 0.0,
                 trep.exact_match, "flat-boundary theorem, empty boundary"});

  auto cap = warped_ball(2, WarpProfile::spherical, 0.7);
  auto rep = euler_estimate_float(cap, Formulation::b, {});
  close_to(out, "spherical cap m=2 r=0.7: int K + int k_g = 2pi", 2.0 * 3.14159265358979323846,
           rep.total_b, 1e-8, "classical Gauss-Bonnet");
  return cr;
}

// --- Criterion 8: b/c formulation agreement ---------------------------------

inline CriterionResult criterion_bc_agreement() {
  using namespace verify_detail;
  CriterionResult cr{8, "b/c formulation agreement on every registered boundary model", {}};
  auto& out = cr.reports;

  // exact models
  std::vector<ModelGeometry<Rational>> exact_models;
  for (int m : {2, 4, 6}) exact_models.push_back(euclidean_ball<Rational>(m));
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {4, 1}})
    exact_models.push_back(ball_cross_sphere<Rational>(p, q));
  for (const auto& model : exact_models) {
    auto b = boundary_term_b(model);
    auto c = boundary_term_c(model);
    exact_eq(out, "b = c exactly on " + model.name, b.total, c.total, "Gauss-equation rewrite");
  }

  // float models
  std::vector<ModelGeometry<double>> float_models;
  for (int m : {2, 4, 6}) {
    float_models.push_back(warped_ball(m, WarpProfile::hyperbolic, 1.0));
    float_models.push_back(warped_ball(m, WarpProfile::spherical, 1.0));
    float_models.push_back(warped_ball(m, WarpProfile::euclidean, 1.5));
  }
  for (const auto& model : float_models) {
    auto b = boundary_term_b(model);
    auto c = boundary_term_c(model);
    close_to(out, "|b - c| <= 1e-9 on " + model.name, b.total, c.total, 1e-9,
             "Gauss-equation rewrite, float mode");
  }
  return cr;
}

// --- Criterion 9: metric engine ---------------------------------------------

inline CriterionResult criterion_metric_engine() {
  using namespace verify_detail;
  CriterionResult cr{9, "metric engine: space-form charts, flat charts, residual decay", {}};
  auto& out = cr.reports;

  auto compare_chart = [&](const std::string& chart_name, const std::vector<double>& x,
                           double a, const std::string& label) {
    ChartMetric chart = builtin_chart(chart_name);
    auto fr = curvature_frame(chart, x);
    int m = chart.dim;
    auto g = DoubleForm<double>::metric(m);
    auto expected = (a / 2.0) * owedge(g, g);
    double diff = max_coeff_difference(fr.curvature, expected);
    close_to(out, label, 0.0, diff, 1e-5, "space-form oracle R = (a/2) g owedge g");
  };
  compare_chart("round-sphere", {1.0, 0.5}, 1.0, "round-sphere chart reproduces R = 1/2 g^2");
  compare_chart("hyperbolic", {0.3, 1.2}, -1.0, "hyperbolic chart reproduces R = -1/2 g^2");
  compare_chart("warped:f=sin,m=3", {1.0, 1.2, 0.4}, 1.0, "warped sin chart, m=3");
  compare_chart("warped:f=sinh,m=3", {0.9, 1.2, 0.4}, -1.0, "warped sinh chart, m=3");

  {
    ChartMetric flat = builtin_chart("polar-flat");
    auto fr = curvature_frame(flat, {1.7, 0.4});
    close_to(out, "flat curvilinear chart: ||R|| = 0", 0.0, fr.curvature.max_abs(), 1e-5,
             "flatness is coordinate-free");
    ChartMetric flat3 = builtin_chart("warped:f=t,m=3");
    auto fr3 = curvature_frame(flat3, {1.3, 1.1, 0.2});
    close_to(out, "flat spherical chart m=3: ||R|| = 0", 0.0, fr3.curvature.max_abs(), 1e-5,
             "flatness is coordinate-free");
  }

  // residuals at fd_step = 1e-3 and ~O(step^2) decay over {4e-3, 2e-3, 1e-3}
  for (const std::string& name : {std::string("round-sphere"), std::string("hyperbolic")}) {
    std::vector<double> x = (name == "hyperbolic") ? std::vector<double>{0.3, 1.2}
                                                   : std::vector<double>{1.0, 0.5};
    double res_by_step[3];
    double steps[3] = {4e-3, 2e-3, 1e-3};
    for (int i = 0; i < 3; ++i) {
      ChartMetric chart = builtin_chart(name);
      chart.fd_step = steps[i];
      auto res = structure_residuals(chart, x);
      res_by_step[i] = std::max(res.first_structure, res.second_structure);
      if (i == 2)
        close_to(out, name + ": structure residuals at fd=1e-3", 0.0, res_by_step[i], 1e-4,
                 "Cartan structure equations");
    }
    bool decays = res_by_step[0] > res_by_step[1] && res_by_step[1] > res_by_step[2] &&
                  res_by_step[0] >= 4.0 * res_by_step[2];
    std::ostringstream seq;
    seq.precision(3);
    seq << res_by_step[0] << " -> " << res_by_step[1] << " -> " << res_by_step[2];
    out.push_back({name + ": residual ~O(step^2) decay over {4e-3, 2e-3, 1e-3}",
                   "monotone, total factor >= 4", seq.str(), 0.0, decays,
                   "central-difference truncation order"});
  }

  // Algebraic first Bianchi on the frame curvature, curved m=3 charts (the
  // m=2 cyclic sum is trivially zero).
  for (const std::string& sel : {std::string("warped:f=sin,m=3"), std::string("warped:f=sinh,m=3")}) {
    ChartMetric chart = builtin_chart(sel);
    std::vector<double> x = (sel.find("sinh") != std::string::npos)
                                ? std::vector<double>{0.9, 1.2, 0.4}
                                : std::vector<double>{1.0, 1.2, 0.4};
    auto res = structure_residuals(chart, x);
    close_to(out, sel + ": first Bianchi residual (relative)", 0.0, res.bianchi_first_rel,
             1e-8, "first Bianchi identity, algebraic cyclic sum");
  }
  return cr;
}

// --- Criterion 10: Gauss-Kronecker equivalence -------------------------------

inline CriterionResult criterion_gauss_kronecker() {
  using namespace verify_detail;
  CriterionResult cr{10, "Gauss-Kronecker: determinant route = intrinsic contraction route", {}};
  auto& out = cr.reports;
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  long total = 0, good = 0;
  for (int m : {2, 4}) {
    for (int rep = 0; rep < 50; ++rep) {
      DoubleForm<double> h(m, 1, 1);
      for (int i = 1; i <= m; ++i)
        for (int j = i; j <= m; ++j) {
          double v = u(rng);
          h.add_term({i}, {j}, v);
          if (i != j) h.add_term({j}, {i}, v);
        }
      double det_route = gauss_kronecker(h);
      auto r = 0.5 * owedge(h, h);
      double intrinsic = gauss_kronecker_intrinsic(r, m);
      ++total;
      double scale = std::max(1e-12, std::abs(det_route));
      if (std::abs(det_route - intrinsic) <= 1e-10 * scale) ++good;
    }
  }
  count_all(out, "det(h) = 2^{m/2}/(m!)^2 C^m(R^{m/2}) for 100 random symmetric h", total,
            good, "intrinsic contraction form of the Gauss-Kronecker curvature");

  for (int m : {2, 4}) {
    auto g = DoubleForm<Rational>::metric(m);
    auto r = Rational(1, 2) * owedge(g, g);
    exact_eq(out, "unit sphere K = 1 via K = (m!!/m!) R-density, m=" + std::to_string(m),
             Rational(1), gb_density_to_gk(r, m), "K = (m!!/m!) times the Gauss-Bonnet density");
  }
  return cr;
}

// --- suites -----------------------------------------------------------------

inline std::vector<CriterionResult> run_all_criteria(const FaultInjection& fault = {}) {
  return {criterion_coefficients(fault), criterion_pfaffian(),    criterion_contraction(),
          criterion_space_forms(),       criterion_ball_cross_sphere(),
          criterion_warped_balls(),      criterion_flat_theorem(), criterion_bc_agreement(),
          criterion_metric_engine(),     criterion_gauss_kronecker()};
}

inline std::vector<CriterionResult> run_suite(const std::string& suite,
                                              const FaultInjection& fault = {}) {
  if (suite == "coefficients") return {criterion_coefficients(fault), criterion_pfaffian()};
  if (suite == "algebra") return {criterion_contraction(), criterion_gauss_kronecker()};
  if (suite == "models")
    return {criterion_space_forms(), criterion_ball_cross_sphere(), criterion_warped_balls(),
            criterion_flat_theorem(), criterion_bc_agreement()};
  if (suite == "metric-engine") return {criterion_metric_engine()};
  if (suite == "all") return run_all_criteria(fault);
  throw std::invalid_argument("unknown suite '" + suite +
                              "' (use algebra, coefficients, models, metric-engine, all)");
}

}  // namespace gbc
