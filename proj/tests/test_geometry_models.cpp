#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gbc/gauss_bonnet.hpp"
#include "gbc/geometry_models.hpp"

using namespace gbc;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

std::vector<std::string> registered_selectors() {
  return {"sphere:m=2",      "sphere:m=4",
          "flat-torus:m=2",  "flat-torus:m=4",
          "euclidean-ball:m=2", "euclidean-ball:m=3", "euclidean-ball:m=4",
          "hyperbolic-ball:m=2,r=1.0", "hyperbolic-ball:m=4,r=1.0",
          "spherical-cap:m=2,r=0.7", "spherical-cap:m=4,r=1.0",
          "ball-cross-sphere:p=2,q=1", "ball-cross-sphere:p=2,q=3"};
}
}  // namespace

TEST_CASE("curvature structure invariants at sampled points") {
  std::mt19937 rng(606);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (const auto& sel : registered_selectors()) {
    ModelEntry entry = make_model(sel);
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> point{u(rng), u(rng)};
      const auto& r = entry.flt.curvature_at(point);
      CHECK(is_symmetric(r));
      CHECK(first_bianchi_residual(r) <= 1e-12);
    }
    if (entry.exact) {
      const auto& r = entry.exact->curvature_at({0.0});
      CHECK(is_symmetric(r));
      CHECK(first_bianchi_residual(r) == 0.0);
    }
  }
}

TEST_CASE("gauss equation residual vanishes on every boundary model") {
  for (const auto& sel : registered_selectors()) {
    ModelEntry entry = make_model(sel);
    if (entry.flt.boundary) {
      CHECK(entry.flt.boundary->gauss_residual().max_abs() <= 1e-12);
    }
    if (entry.exact && entry.exact->boundary) {
      CHECK(entry.exact->boundary->gauss_residual().is_zero());
    }
  }
}

TEST_CASE("space forms") {
  auto s2 = space_form<Rational>(2, Rational(1));
  CHECK(gb_density(s2.curvature, 2) == Rational(1));
  CHECK((gb_density(s2.curvature, 2) * s2.volume) == PiRational(Rational(4), 1));  // 4 pi

  auto flat = space_form<Rational>(4, Rational(0));
  CHECK(gb_density(flat.curvature, 4) == Rational(0));

  auto s4 = space_form<Rational>(4, Rational(1));
  CHECK(gb_density(s4.curvature, 4) == Rational(3));

  // Hopf identity a^{m/2} Vol(M) = 1/2 Vol(S^m) chi for the unit spheres
  for (int m : {2, 4, 6, 8, 10}) {
    auto sphere = space_form<Rational>(m, Rational(1));
    CHECK(sphere.volume == Rational(1, 2) * sphere_volume(m) * Rational(2));
  }
  CHECK_THROWS_AS(space_form<Rational>(1, Rational(1)), std::domain_error);
}

TEST_CASE("warped-product boundary data") {
  // Euclidean ball of radius r: h = (1/r) gbar, Rbar = (1/r^2) * (1/2) gbar owedge gbar
  auto eb = warped_ball(4, WarpProfile::euclidean, 2.0);
  CHECK(eb.boundary->second_fundamental.coeff({1}, {1}) == doctest::Approx(0.5));
  CHECK(eb.boundary->intrinsic_curvature.evaluate({1, 2}, {1, 2}) == doctest::Approx(0.25));

  // hyperbolic: principal curvatures coth(r)
  auto hb = warped_ball(3, WarpProfile::hyperbolic, 1.0);
  CHECK(hb.boundary->second_fundamental.coeff({2}, {2}) ==
        doctest::Approx(std::cosh(1.0) / std::sinh(1.0)));

  // equatorial sphere: f'(pi/2) = 0 makes h vanish (to roundoff in cos(pi/2))
  auto eq = warped_ball(3, WarpProfile::spherical, kPi / 2.0);
  CHECK(eq.boundary->second_fundamental.max_abs() <= 1e-15);

  // profile must stay positive on (0, r]
  CHECK_THROWS_AS(warped_ball(3, WarpProfile::spherical, 3.5), std::domain_error);
  CHECK_THROWS_AS(warped_ball(1, WarpProfile::euclidean, 1.0), std::domain_error);
}

TEST_CASE("ball-cross-sphere parity table") {
  auto asserted_case = ball_cross_sphere<Rational>(2, 1);
  CHECK(asserted_case.euler_char == 2);
  CHECK(asserted_case.chi_asserted);
  CHECK(asserted_case.dim == 4);

  auto open_case = ball_cross_sphere<Rational>(1, 2);  // p odd, q even: reported, not asserted
  CHECK(open_case.euler_char == 2);
  CHECK_FALSE(open_case.chi_asserted);
  CHECK_FALSE(open_case.note.empty());

  auto odd_odd = ball_cross_sphere<Rational>(1, 1);
  CHECK(odd_odd.euler_char == 0);

  auto even_even = ball_cross_sphere<Rational>(2, 2);  // m odd
  CHECK(even_even.euler_char == 2);
  CHECK(even_even.dim % 2 == 1);

  // interior density vanishes in every parity
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {1, 2}, {2, 3}, {4, 1}}) {
    auto model = ball_cross_sphere<Rational>(p, q);
    if (model.dim % 2 == 0) CHECK(gb_density(model.curvature, model.dim) == Rational(0));
  }

  // p odd, q even: the b-boundary term vanishes, so the report shows
  // chi_estimate 0 against the stored product-formula value 2.
  auto rep = euler_estimate_exact(ball_cross_sphere<Rational>(1, 2), Formulation::b);
  CHECK(rep.chi_b_exact == "0");
  CHECK_FALSE(rep.chi_asserted);
}

TEST_CASE("euclidean ball and flat torus") {
  auto ball = euclidean_ball<Rational>(4);
  CHECK(ball.euler_char == 1);
  CHECK(ball.curvature.is_zero());
  CHECK(gauss_kronecker(ball.boundary->second_fundamental) == Rational(1));
  CHECK(ball.boundary->measure == sphere_volume(3));

  // disk: the k=0 boundary density integrates to int k_g = 2 pi
  auto disk = euclidean_ball<Rational>(2);
  auto term = boundary_term_b(disk);
  CHECK(term.total == PiRational(Rational(2), 1));

  auto torus = flat_torus<Rational>(4);
  CHECK_FALSE(torus.boundary.has_value());
  CHECK(torus.euler_char == 0);
  CHECK(torus.volume == two_pi_pow(4));
}

TEST_CASE("registry and selector parsing") {
  CHECK(make_model("sphere:m=4").exact.has_value());
  CHECK(make_model("euclidean-ball:m=3").exact.has_value());
  CHECK_FALSE(make_model("hyperbolic-ball:m=2,r=0.5").exact.has_value());
  CHECK_FALSE(make_model("euclidean-ball:m=3,r=2.0").exact.has_value());  // r != 1 needs floats
  CHECK(make_model("ball-cross-sphere:p=2,q=3").flt.dim == 6);

  CHECK_THROWS_AS(make_model("klein-bottle:m=2"), UnknownModelError);
  try {
    make_model("klein-bottle:m=2");
  } catch (const UnknownModelError& e) {
    CHECK(std::string(e.what()).find("sphere:m=") != std::string::npos);  // lists registry
  }
  CHECK_THROWS_AS(make_model("sphere"), std::invalid_argument);        // missing m
  CHECK_THROWS_AS(make_model("sphere:m"), std::invalid_argument);      // malformed kv
  auto sel = parse_selector("ball-cross-sphere:p=2,q=1");
  CHECK(sel.base == "ball-cross-sphere");
  CHECK(sel.get_int("p") == 2);
  CHECK(sel.get_int("q") == 1);
}

TEST_CASE("boundary ambient curvature is the index-filtered interior curvature") {
  // frame convention: the last interior direction is the outer normal
  for (const auto& sel : registered_selectors()) {
    ModelEntry entry = make_model(sel);
    if (!entry.exact || !entry.exact->boundary) continue;
    const auto& model = *entry.exact;
    CHECK(restrict_dims(model.curvature, model.dim - 1) ==
          model.boundary->ambient_curvature);
  }
}

TEST_CASE("float conversion is consistent") {
  auto exact = ball_cross_sphere<Rational>(2, 1);
  auto flt = to_float(exact);
  CHECK(flt.dim == exact.dim);
  CHECK(flt.boundary->measure ==
        doctest::Approx(exact.boundary->measure.to_double()).epsilon(1e-15));
  CHECK(max_coeff_difference(flt.curvature, to_float(exact.curvature)) == 0.0);
}
