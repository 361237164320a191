// Manually-run Monte-Carlo diagnostic for the tube-coefficient convention.
//
// For the unit sphere S^2 in R^3 the printed coefficients give
//   sum_k alpha_{3,2,k} K_{2k}(S^2) eps^{1+2k} = 4 pi eps + (4 pi / 3) eps^3,
// while the two-sided shell {x : dist(x, S^2) <= eps} has volume
//   (4 pi / 3)((1+eps)^3 - (1-eps)^3) = 8 pi eps + (8 pi / 3) eps^3,
// i.e. exactly twice the formula. This samples the shell volume so the factor
// can be seen directly. Not registered with ctest; run it by hand.

#include <cmath>
#include <iostream>
#include <random>

#include "gbc/combinat.hpp"

int main(int argc, char** argv) {
  using namespace gbc;
  double eps = (argc > 1) ? std::atof(argv[1]) : 0.1;
  long samples = (argc > 2) ? std::atol(argv[2]) : 20'000'000L;

  std::mt19937_64 rng(12345);
  double side = 1.0 + eps;
  std::uniform_real_distribution<double> u(-side, side);
  long hits = 0;
  for (long i = 0; i < samples; ++i) {
    double x = u(rng), y = u(rng), z = u(rng);
    double r = std::sqrt(x * x + y * y + z * z);
    if (std::abs(r - 1.0) <= eps) ++hits;
  }
  double box = std::pow(2.0 * side, 3);
  double mc = box * static_cast<double>(hits) / static_cast<double>(samples);

  const double pi = 3.14159265358979323846;
  double k0 = 4.0 * pi;  // K_0(S^2) = area
  double k2 = 4.0 * pi;  // K_2(S^2) = (1/2) total scalar curvature = area for S^2
  double formula = tube_alpha(3, 2, 0).to_double() * k0 * eps +
                   tube_alpha(3, 2, 1).to_double() * k2 * eps * eps * eps;
  double shell = (4.0 * pi / 3.0) * (std::pow(1.0 + eps, 3) - std::pow(1.0 - eps, 3));

  std::cout.precision(8);
  std::cout << "eps = " << eps << ", samples = " << samples << "\n"
            << "Monte-Carlo shell volume          : " << mc << "\n"
            << "closed-form two-sided shell volume: " << shell << "\n"
            << "printed tube formula              : " << formula << "\n"
            << "shell / formula                   : " << shell / formula << "\n";
  return 0;
}
