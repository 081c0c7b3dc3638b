#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "lag/error.hpp"

namespace lag {

// Exact rational scalar on top of GMP. Always canonical: reduced, denominator > 0.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) fail(Errc::bad_input, "rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "p" or "p/q" with optional leading '-'.
  static Rational from_string(const std::string& s);

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) fail(Errc::bad_input, "division by zero");
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
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  // n! as an exact rational (for the Bernoulli-free 1/(j+1)! style factors).
  static Rational factorial(unsigned n);

  std::string str() const { return v_.get_str(); }
  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace lag
