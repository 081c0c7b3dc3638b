#pragma once

#include <map>
#include <string>
#include <vector>

#include "lag/multivector.hpp"

namespace lag {

// Generator key of a multiderivation table: frame slots (strictly increasing)
// followed by coordinate-function slots (non-decreasing; repeats allowed since
// function slots are symmetric).
struct MdKey {
  IndexTuple frames;
  IndexTuple coords;
  friend bool operator<(const MdKey& a, const MdKey& b) {
    if (a.frames != b.frames) return a.frames < b.frames;
    return a.coords < b.coords;
  }
  friend bool operator==(const MdKey& a, const MdKey& b) {
    return a.frames == b.frames && a.coords == b.coords;
  }
};

// Bidegree (n,p) multiderivation, n,p >= -1, stored extensionally through the
// values of its symbols on frame sections and coordinate functions:
//
//   table[{(j_1<...<j_{n+1-i}), (a_1<=...<=a_i)}] = D(e_{j_1},...,e_{j_{n+1-i}}, x_{a_1},...,x_{a_i})
//
// with i = 0..min(n+1,p+1) function slots placed last and value degree p+1-i.
// n = -1 holds a single value of degree p+1 under the empty key.
class MultiDerivation {
 public:
  MultiDerivation() : host_(nullptr), n_(-1), p_(-1) {}
  MultiDerivation(const AlgebroidPresentation* host, int n, int p);

  static MultiDerivation element(const Multivector& v);  // bidegree (-1, deg-1)
  // The Schouten structure as the bidegree (1,0) multiderivation: frame table
  // from the bracket coefficients, first symbol from the anchor.
  static MultiDerivation schouten_structure(const AlgebroidPresentation* host);

  const AlgebroidPresentation* host() const { return host_; }
  int n() const { return n_; }
  int p() const { return p_; }
  int max_function_slots() const { return std::min(n_ + 1, p_ + 1); }
  bool is_zero() const { return tables_.empty(); }
  const std::map<MdKey, Multivector>& tables() const { return tables_; }

  void set_value(const IndexTuple& frames, const IndexTuple& coords, const Multivector& value);
  Multivector value(const IndexTuple& frames, const IndexTuple& coords) const;
  Multivector element_value() const;  // n == -1 only

  MultiDerivation operator-() const;
  MultiDerivation& operator+=(const MultiDerivation& o);
  MultiDerivation& operator-=(const MultiDerivation& o);
  friend MultiDerivation operator+(MultiDerivation a, const MultiDerivation& b) { return a += b; }
  friend MultiDerivation operator-(MultiDerivation a, const MultiDerivation& b) { return a -= b; }
  MultiDerivation scaled(const Rational& c) const;
  friend bool operator==(const MultiDerivation& a, const MultiDerivation& b);
  friend bool operator!=(const MultiDerivation& a, const MultiDerivation& b) { return !(a == b); }

  std::string render() const;  // one line per table entry

 private:
  void check_key(const IndexTuple& frames, const IndexTuple& coords) const;
  const AlgebroidPresentation* host_;
  int n_, p_;
  std::map<MdKey, Multivector> tables_;
};

// Expansion order of the Leibniz recursion; both must agree (well-definedness
// guard, exercised by the property tests).
enum class EvalStrategy { right_fold, left_fold };

// Applies D to n+1 multivector arguments (degree-0 arguments act as functions)
// by multilinear expansion, slot transposition with shifted-degree signs, and
// Leibniz peeling down to the stored tables.
Multivector evaluate(const MultiDerivation& D, const std::vector<Multivector>& args,
                     EvalStrategy strategy = EvalStrategy::right_fold);

// An (a,b)-shuffle written as the image sequence (sigma(0),...,sigma(a+b-1)),
// ascending on the first a and on the last b entries.
using Permutation = std::vector<int>;
std::vector<Permutation> shuffles(int a, int b);
int permutation_sign(const Permutation& perm);
// Koszul sign moving X_0,...,X_r into the order X_{perm(0)},...,X_{perm(r)}
// inside the symmetric algebra on shifted degrees (degree |X|-1 elements).
int koszul_sign(const Permutation& perm, const std::vector<int>& shifted_degrees);

// [D,E] = (-1)^{n n'} D o E - (-1)^{p p'} E o D with the shuffle composition;
// tables of the result are produced by evaluating on generators. The composite
// arity n+n' must stay within max_n (table growth guard). When both operands
// have n = -1 the literal composite degenerates to zero and the bracket is
// taken in the derived sense, landing back in bidegree (-1, p+p'):
// [tau, tau'] = -schouten(tau, tau').
MultiDerivation gerstenhaber(const MultiDerivation& D, const MultiDerivation& E, int max_n = 3);

// d D = [m, D] with m the Schouten structure of the host.
MultiDerivation deformation_coboundary(const MultiDerivation& D, int max_n = 3);

struct CocycleReport {
  bool ok = true;
  struct Entry {
    MdKey key;
    Multivector residual;
  };
  std::vector<Entry> residuals;  // nonzero tables of the coboundary
};
// Bidegree (0,p) only: D is a cocycle iff [m,D] vanishes on every generator
// tuple, both the frame-pair table and the symbol tables.
CocycleReport is_cocycle(const MultiDerivation& D);

}  // namespace lag
