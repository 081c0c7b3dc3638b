#pragma once

#include <map>
#include <string>
#include <vector>

#include "lag/presentation.hpp"

namespace lag {

// Strictly increasing frame (or coordinate) indices, 0-based.
using IndexTuple = std::vector<int>;

// Sorts `word` in place counting transpositions; returns 0 if an index repeats,
// otherwise the sign (+1/-1) of the sorting permutation.
int sort_word(IndexTuple& word);

// Homogeneous section of wedge^q A with polynomial coefficients, stored on a
// fixed presentation's frame. Degree 0 is a plain polynomial (empty key).
class Multivector {
 public:
  Multivector() : host_(nullptr), degree_(0) {}
  Multivector(const AlgebroidPresentation* host, int degree);

  static Multivector scalar(const AlgebroidPresentation* host, const Poly& f);
  static Multivector frame(const AlgebroidPresentation* host, int i);
  static Multivector wedge_basis(const AlgebroidPresentation* host, const IndexTuple& idx);

  const AlgebroidPresentation* host() const { return host_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<IndexTuple, Poly>& terms() const { return terms_; }
  Poly coeff(const IndexTuple& idx) const;

  // Adds c * e_{word}; the word may be unsorted and is canonicalized with sign.
  void add_word(IndexTuple word, const Poly& c);

  Multivector operator-() const;
  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend bool operator==(const Multivector& a, const Multivector& b);
  friend bool operator!=(const Multivector& a, const Multivector& b) { return !(a == b); }

  Multivector scaled(const Poly& f) const;
  Multivector scaled(const Rational& c) const;

  // Zero iff every coefficient is zero; degree of the zero element is kept.
  int coeff_degree() const;  // max total degree among coefficients, -1 if zero

  std::string render() const;

  void check_host(const AlgebroidPresentation* host) const;

 private:
  const AlgebroidPresentation* host_;
  int degree_;
  std::map<IndexTuple, Poly> terms_;
};

Multivector wedge(const Multivector& a, const Multivector& b);

// Schouten bracket on wedge^* A extended from the frame bracket and the anchor:
// [e_i, e_j] from the structure table, [u, f] = rho(u) f, Leibniz in the second
// slot [X, Y^Z] = [X,Y]^Z + (-1)^{(|X|-1)|Y|} Y^[X,Z], graded antisymmetry
// [X,Y] = -(-1)^{(|X|-1)(|Y|-1)} [Y,X]. Result degree |X|+|Y|-1 (0 for two
// functions, where the bracket vanishes).
Multivector schouten(const Multivector& x, const Multivector& y);

// Contraction with the base 1-form df pulled back through the anchor:
// pairs A-legs via <rho* df, e_j> = rho(e_j) f.
Multivector contract_rho_df(const Multivector& x, const Poly& f);

}  // namespace lag
