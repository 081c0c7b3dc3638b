#pragma once

#include <optional>
#include <vector>

#include "lag/linalg.hpp"
#include "lag/multivector.hpp"

namespace lag {

// Enumeration helpers for bounded-degree linear problems. Orders are fixed so
// that solver output (and hence every report) is deterministic.

// All monomials of total degree <= d in nvars variables, graded order, within
// each degree the Poly term order.
std::vector<Monomial> monomials_up_to(int nvars, int d);

// Strictly increasing words of length k over {0..n-1}, lexicographic.
std::vector<IndexTuple> words_of_length(int n, int k);

// Basis x^alpha * e_I of degree-`degree` multivectors with coefficient degree
// <= d: word-major, monomial-minor.
std::vector<Multivector> multivector_basis(const AlgebroidPresentation* host, int degree,
                                           int d);

// Exact linear algebra on tuples of multivectors. Columns and target must be
// tuples of equal length with slot-wise matching hosts; entries of one slot may
// have differing degrees only if zero. Coordinates are indexed by the union of
// the (word, monomial) supports, so no degree window has to be guessed.
class MultivectorSystem {
 public:
  // `columns[j]` is the image of the j-th unknown under the linear operator.
  explicit MultivectorSystem(std::vector<std::vector<Multivector>> columns);

  // Solves sum_j c_j columns[j] = target exactly (free variables zero).
  std::optional<std::vector<Rational>> solve(const std::vector<Multivector>& target) const;

  // Basis of {c : sum_j c_j columns[j] = 0}.
  std::vector<std::vector<Rational>> kernel() const;

 private:
  std::vector<std::vector<Multivector>> columns_;
};

// Convenience: linear combination of a basis.
Multivector combine(const std::vector<Multivector>& basis, const std::vector<Rational>& c);

}  // namespace lag
