#pragma once

#include <map>
#include <string>
#include <vector>

#include "lag/rational.hpp"

namespace lag {

// Exponent vector; length equals the number of base coordinates.
using Monomial = std::vector<unsigned>;

unsigned monomial_degree(const Monomial& m);

// Graded lexicographic, descending (leading term first when iterating a map).
struct GrlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial over Rational with a fixed number of variables.
// Terms are kept in descending graded-lex order and never store zero coefficients,
// so printing and iteration order are canonical.
class Poly {
 public:
  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int index);  // x_index
  static Poly monomial(int nvars, const Monomial& m, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Zero for the zero polynomial; the constant term otherwise (throws unless constant).
  Rational constant_value() const;
  // Total degree; -1 for the zero polynomial.
  int degree() const;

  const std::map<Monomial, Rational, GrlexDesc>& terms() const { return terms_; }
  Rational coeff(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Rational& c) const;
  Poly pow(unsigned e) const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derive(int var) const;                       // d/dx_var
  Rational eval(const std::vector<Rational>& x) const;

  // Canonical rendering, e.g. "3/2*x^2*y - x + 1"; parses back with the
  // expression grammar. `names` must have nvars entries.
  std::string render(const std::vector<std::string>& names) const;

 private:
  void check_compat(const Poly& o) const;
  int nvars_;
  std::map<Monomial, Rational, GrlexDesc> terms_;
};

}  // namespace lag
