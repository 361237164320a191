#pragma once

// Exact scalar types: arbitrary-precision integers and rationals (GMP-backed),
// plus rationals carrying a symbolic power of pi.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace gbc {

using Integer = mpz_class;

inline Integer factorial(int n) {
  if (n < 0) throw std::domain_error("factorial: n must be >= 0");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// n!! with (-1)!! = 0!! = 1 and n!! = n*(n-2)!! for n >= 1.
inline Integer double_factorial(int n) {
  if (n < -1) throw std::domain_error("double_factorial: n must be >= -1");
  Integer r = 1;
  for (int k = n; k >= 2; k -= 2) r *= k;
  return r;
}

inline Integer int_pow(Integer base, int exp) {
  if (exp < 0) throw std::domain_error("int_pow: negative exponent");
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
  return r;
}

// Always reduced, denominator > 0, zero is 0/1 (mpq canonical form is
// enforced on every construction path).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}                 // NOLINT: implicit by design
  Rational(int n) : v_(n) {}                  // NOLINT
  Rational(const Integer& n) : v_(n) {}       // NOLINT
  Rational(const Integer& num, const Integer& den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }
  bool is_zero() const { return v_ == 0; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }

  Rational pow(int e) const {
    if (e < 0) return (Rational(1) / *this).pow(-e);
    Rational r = 1, b = *this;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  }

  double to_double() const { return v_.get_d(); }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  mpq_class v_;
};

// Value coeff * pi^pi_power with pi_power an integer >= 0. Addition only
// combines equal powers; zero is normalized to power 0.
class PiRational {
 public:
  PiRational() = default;
  PiRational(const Rational& c) : coeff_(c) {}  // NOLINT: pure rational
  PiRational(long c) : coeff_(c) {}             // NOLINT
  PiRational(const Rational& c, int pi_power) : coeff_(c), pi_power_(pi_power) {
    if (pi_power < 0) throw std::domain_error("PiRational: negative pi power");
    normalize();
  }

  const Rational& coeff() const { return coeff_; }
  int pi_power() const { return pi_power_; }
  bool is_zero() const { return coeff_.is_zero(); }

  PiRational operator-() const { return PiRational(-coeff_, pi_power_); }

  friend PiRational operator+(const PiRational& a, const PiRational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.pi_power_ != b.pi_power_)
      throw std::domain_error("PiRational: adding distinct pi powers");
    return PiRational(a.coeff_ + b.coeff_, a.pi_power_);
  }
  friend PiRational operator-(const PiRational& a, const PiRational& b) {
    return a + (-b);
  }
  friend PiRational operator*(const PiRational& a, const PiRational& b) {
    return PiRational(a.coeff_ * b.coeff_, a.pi_power_ + b.pi_power_);
  }
  friend PiRational operator*(const Rational& a, const PiRational& b) {
    return PiRational(a * b.coeff_, b.pi_power_);
  }
  friend PiRational operator*(const PiRational& a, const Rational& b) {
    return b * a;
  }

  /// Exact division; the divisor's pi power must not exceed ours.
  friend PiRational operator/(const PiRational& a, const PiRational& b) {
    if (b.is_zero()) throw std::domain_error("PiRational: division by zero");
    if (a.is_zero()) return PiRational();
    if (a.pi_power_ < b.pi_power_)
      throw std::domain_error("PiRational: division would need negative pi power");
    return PiRational(a.coeff_ / b.coeff_, a.pi_power_ - b.pi_power_);
  }

  friend bool operator==(const PiRational& a, const PiRational& b) {
    return a.coeff_ == b.coeff_ && a.pi_power_ == b.pi_power_;
  }
  friend bool operator!=(const PiRational& a, const PiRational& b) { return !(a == b); }

  double to_double() const {
    static const double kPi = 3.14159265358979323846264338327950288;
    double r = coeff_.to_double();
    for (int i = 0; i < pi_power_; ++i) r *= kPi;
    return r;
  }

  std::string str() const {
    if (pi_power_ == 0) return coeff_.str();
    std::string s = coeff_.str() + "*pi";
    if (pi_power_ > 1) s += "^" + std::to_string(pi_power_);
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const PiRational& p) {
    return os << p.str();
  }

 private:
  void normalize() {
    if (coeff_.is_zero()) pi_power_ = 0;
  }
  Rational coeff_ = 0;
  int pi_power_ = 0;
};

/// (2*pi)^k as an exact PiRational.
inline PiRational two_pi_pow(int k) {
  return PiRational(Rational(int_pow(2, k)), k);
}

// coeff * pi^(half_steps/2); only the Weyl tube coefficients need half-integer
// powers, so this stays a separate narrow type.
struct HalfPiRational {
  Rational coeff = 0;
  int pi_half_steps = 0;

  friend bool operator==(const HalfPiRational& a, const HalfPiRational& b) {
    return a.coeff == b.coeff &&
           (a.coeff.is_zero() || a.pi_half_steps == b.pi_half_steps);
  }

  double to_double() const {
    static const double kPi = 3.14159265358979323846264338327950288;
    return coeff.to_double() * std::pow(kPi, 0.5 * pi_half_steps);
  }

  std::string str() const {
    if (pi_half_steps == 0 || coeff.is_zero()) return coeff.str();
    std::string s = coeff.str() + "*pi";
    if (pi_half_steps == 2) return s;
    if (pi_half_steps % 2 == 0) return s + "^" + std::to_string(pi_half_steps / 2);
    return s + "^(" + std::to_string(pi_half_steps) + "/2)";
  }
};

}  // namespace gbc
