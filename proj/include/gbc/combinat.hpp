#pragma once

// Exact combinatorics: double factorials, sphere volumes, the coefficient
// families a, b, c, w, lambda, gamma and the Weyl tube coefficients, plus
// Pfaffians of skew-symmetric matrices (full permutation sum and the
// (m-1)!!-term pairing sum).

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "gbc/rational.hpp"

namespace gbc {

/// Surface measure of the unit d-sphere, as an exact rational times an
/// integer power of pi:
///   d odd : (2pi)^((d+1)/2) / (d-1)!!
///   d even: 2 (2pi)^(d/2)   / (d-1)!!
inline PiRational sphere_volume(int d) {
  if (d < 0) throw std::domain_error("sphere_volume: d must be >= 0");
  if (d % 2 == 1) {
    int h = (d + 1) / 2;
    return PiRational(Rational(int_pow(2, h), double_factorial(d - 1)), h);
  }
  int h = d / 2;
  return PiRational(Rational(2 * int_pow(2, h), double_factorial(d - 1)), h);
}

namespace detail {
inline void check_mk(int m, int k, const char* who) {
  if (m < 2 || m % 2 != 0)
    throw std::domain_error(std::string(who) + ": m must be even and >= 2");
  if (k < 0 || k > m / 2 - 1)
    throw std::domain_error(std::string(who) + ": k out of range [0, m/2-1]");
}
}  // namespace detail

/// a_{m,k} = 1 / ((2k)!! (m-2k-1)!!)
inline Rational coeff_a(int m, int k) {
  detail::check_mk(m, k, "coeff_a");
  return Rational(Integer(1), double_factorial(2 * k) * double_factorial(m - 2 * k - 1));
}

/// Product form (1/m!!) * prod_{j=k}^{m/2-1} (2j+2)/(m-2j-1); must agree with
/// coeff_a, kept as an independent route for the cross-check.
inline Rational coeff_a_product_form(int m, int k) {
  detail::check_mk(m, k, "coeff_a_product_form");
  Rational r(Integer(1), double_factorial(m));
  for (int j = k; j <= m / 2 - 1; ++j)
    r *= Rational(2 * j + 2, m - 2 * j - 1);
  return r;
}

/// b_{m,k} = (m-2k-2)!!
inline Rational coeff_b(int m, int k) {
  detail::check_mk(m, k, "coeff_b");
  return Rational(double_factorial(m - 2 * k - 2));
}

/// c_{m,k} = (-1)^(m/2-k-1) (m-2k-3)!!
inline Rational coeff_c(int m, int k) {
  detail::check_mk(m, k, "coeff_c");
  Rational v(double_factorial(m - 2 * k - 3));
  return ((m / 2 - k - 1) % 2 == 0) ? v : -v;
}

/// w_{m,p,k} = (-1/2)^(p-k) (m-1-2k)! / ((m-1-2p)! (p-k)!), zero for k > p.
inline Rational coeff_w(int m, int p, int k) {
  if (m < 2 || m % 2 != 0) throw std::domain_error("coeff_w: m must be even and >= 2");
  if (p < 0 || p > m / 2 - 1) throw std::domain_error("coeff_w: p out of range");
  if (k < 0) throw std::domain_error("coeff_w: k must be >= 0");
  if (k > p) return 0;
  Rational r(factorial(m - 1 - 2 * k), factorial(m - 1 - 2 * p) * factorial(p - k));
  r *= Rational(Integer(1), int_pow(2, p - k));
  return ((p - k) % 2 == 0) ? r : -r;
}

/// lambda_{m,k,r} = (-1)^(k-r) prod_{j=r}^{k} (2j+2)/(m-2j-1), zero for r > k.
inline Rational coeff_lambda(int m, int k, int r) {
  if (m < 2 || m % 2 != 0) throw std::domain_error("coeff_lambda: m must be even and >= 2");
  if (k < 0 || k > m / 2 - 1 || r < 0 || r > m / 2 - 1)
    throw std::domain_error("coeff_lambda: k, r out of range [0, m/2-1]");
  if (r > k) return 0;
  Rational prod = 1;
  for (int j = r; j <= k; ++j) prod *= Rational(2 * j + 2, m - 2 * j - 1);
  return ((k - r) % 2 == 0) ? prod : -prod;
}

/// gamma_{m,k} = (m-1)! c_{m,k} / (2^k k! (m-1-2k)!)  (first printed equality,
/// the normative one).
inline Rational coeff_gamma(int m, int k) {
  detail::check_mk(m, k, "coeff_gamma");
  Rational r(factorial(m - 1), int_pow(2, k) * factorial(k) * factorial(m - 1 - 2 * k));
  return r * coeff_c(m, k);
}

/// The second printed equality for gamma_{m,k}, verbatim:
///   (-1)^(m/2-k-1) (m-1)! / (2^(m/2-k) k! (m-2k-1) (m/2-k-1)!).
/// Disagrees with coeff_gamma at (4,0); exposed as a diagnostic only.
inline Rational coeff_gamma_alt_printed(int m, int k) {
  detail::check_mk(m, k, "coeff_gamma_alt_printed");
  Rational r(factorial(m - 1),
             int_pow(2, m / 2 - k) * factorial(k) * Integer(m - 2 * k - 1) *
                 factorial(m / 2 - k - 1));
  return ((m / 2 - k - 1) % 2 == 0) ? r : -r;
}

/// Weyl tube coefficient alpha_{d,n,k} = pi^((d-n)/2) / (2^(k+1) Gamma((d-n)/2 + 1 + k)),
/// exact, with half-integer pi powers when d-n is odd.
inline HalfPiRational tube_alpha(int d, int n, int k) {
  if (n < 0 || d <= n) throw std::domain_error("tube_alpha: need d > n >= 0");
  if (k < 0 || k > n / 2) throw std::domain_error("tube_alpha: k out of range [0, floor(n/2)]");
  int s = d - n;
  if (s % 2 == 0) {
    // Gamma(s/2 + 1 + k) = (s/2 + k)!
    Rational c(Integer(1), int_pow(2, k + 1) * factorial(s / 2 + k));
    return HalfPiRational{c, s};
  }
  // Gamma(s/2 + 1 + k) = Gamma(t + 1/2) = (2t-1)!!/2^t sqrt(pi), t = (s+1)/2 + k.
  int t = (s + 1) / 2 + k;
  Rational c(int_pow(2, t), int_pow(2, k + 1) * double_factorial(s + 2 * k));
  return HalfPiRational{c, s - 1};
}

// Skew-symmetric matrix with antisymmetry enforced at insertion; the diagonal
// stays zero. Scalar is Rational or double.
template <class S>
class AntisymMatrix {
 public:
  explicit AntisymMatrix(int size) : n_(size), a_(size * size, S(0)) {
    if (size < 1) throw std::domain_error("AntisymMatrix: size must be >= 1");
  }

  int size() const { return n_; }

  const S& operator()(int i, int j) const { return a_[idx(i, j)]; }

  /// Sets a_{ij} = v and a_{ji} = -v. Setting a diagonal entry to a nonzero
  /// value is a domain error.
  void set(int i, int j, const S& v) {
    if (i == j) {
      if (!(v == S(0))) throw std::domain_error("AntisymMatrix: nonzero diagonal");
      return;
    }
    a_[idx(i, j)] = v;
    a_[idx(j, i)] = -v;
  }

 private:
  int idx(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
      throw std::out_of_range("AntisymMatrix: index out of range");
    return i * n_ + j;
  }
  int n_;
  std::vector<S> a_;
};

/// Pf(A) = (1/m!!) sum_{sigma in S_m} (-1)^sigma a_{sigma1 sigma2} ... a_{sigma(m-1) sigma(m)}.
/// Full permutation sum; factorial cost, guarded to m <= 10. Exists as the
/// oracle for pfaffian_pairings.
template <class S>
S pfaffian_perm(const AntisymMatrix<S>& a) {
  int m = a.size();
  if (m % 2 != 0) throw std::domain_error("pfaffian_perm: size must be even");
  if (m > 10) throw std::domain_error("pfaffian_perm: size > 10 (factorial cost guard)");

  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;

  S sum(0);
  int sign = 1;
  // Heap's algorithm: each step applies one transposition, so the sign just flips.
  std::vector<int> ctr(m, 0);
  auto accumulate = [&]() {
    S term = (sign > 0) ? S(1) : S(-1);
    for (int i = 0; i + 1 < m; i += 2) term = term * a(perm[i], perm[i + 1]);
    sum += term;
  };
  accumulate();
  int i = 0;
  while (i < m) {
    if (ctr[i] < i) {
      std::swap(perm[i % 2 == 0 ? 0 : ctr[i]], perm[i]);
      sign = -sign;
      accumulate();
      ++ctr[i];
      i = 0;
    } else {
      ctr[i] = 0;
      ++i;
    }
  }

  Integer mdf = double_factorial(m);
  if constexpr (std::is_same_v<S, Rational>) {
    return sum / Rational(mdf);
  } else {
    return sum / static_cast<S>(mdf.get_d());
  }
}

namespace detail {
/// Enumerates the canonical pairing permutations of {0,...,m-1}: each pair is
/// ascending and consecutive pairs open with the smallest unused index. There
/// are exactly (m-1)!! of them.
inline void for_each_pairing(int m, const std::function<void(const std::vector<int>&, int)>& fn) {
  std::vector<int> perm;
  std::vector<bool> used(m, false);
  // sign: parity (inversion count) of the partial sequence built so far.
  // Appending value v adds one inversion per already-placed value > v.
  auto inversions_added = [&](int v) {
    int inv = 0;
    for (int u = v + 1; u < m; ++u)
      if (used[u]) ++inv;
    return inv;
  };
  std::function<void(int)> rec = [&](int sign) {
    if (static_cast<int>(perm.size()) == m) {
      fn(perm, sign);
      return;
    }
    int first = 0;
    while (used[first]) ++first;
    if (inversions_added(first) % 2 != 0) sign = -sign;
    used[first] = true;
    perm.push_back(first);
    for (int second = first + 1; second < m; ++second) {
      if (used[second]) continue;
      int s2 = (inversions_added(second) % 2 == 0) ? sign : -sign;
      used[second] = true;
      perm.push_back(second);
      rec(s2);
      perm.pop_back();
      used[second] = false;
    }
    perm.pop_back();
    used[first] = false;
  };
  rec(1);
}
}  // namespace detail

/// Number of canonical pairings of {1..m}, by actual enumeration.
inline Integer pairing_count(int m) {
  if (m % 2 != 0) throw std::domain_error("pairing_count: m must be even");
  long count = 0;
  detail::for_each_pairing(m, [&](const std::vector<int>&, int) { ++count; });
  return Integer(count);
}

/// Pf(A) as the sum over the (m-1)!! canonical pairings,
/// Pf(A) = sum_P (-1)^sigma a_{sigma1 sigma2} ... a_{sigma(m-1) sigma(m)}.
template <class S>
S pfaffian_pairings(const AntisymMatrix<S>& a) {
  int m = a.size();
  if (m % 2 != 0) throw std::domain_error("pfaffian_pairings: size must be even");
  S sum(0);
  detail::for_each_pairing(m, [&](const std::vector<int>& perm, int sign) {
    S term = (sign > 0) ? S(1) : S(-1);
    for (int i = 0; i + 1 < m; i += 2) term = term * a(perm[i], perm[i + 1]);
    sum += term;
  });
  return sum;
}

}  // namespace gbc
