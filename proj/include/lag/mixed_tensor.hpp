#pragma once

#include <map>
#include <string>
#include <vector>

#include "lag/multivector.hpp"

namespace lag {

// Key of a mixed exterior monomial: base legs d/dx_a first, then frame legs e_i,
// both strictly increasing. All legs are odd, so the TM-first ordering fixes the
// sign convention of every component.
struct MixedKey {
  IndexTuple tm;
  IndexTuple fr;
  friend bool operator<(const MixedKey& a, const MixedKey& b) {
    if (a.tm != b.tm) return a.tm < b.tm;
    return a.fr < b.fr;
  }
  friend bool operator==(const MixedKey& a, const MixedKey& b) {
    return a.tm == b.tm && a.fr == b.fr;
  }
};

// One leg of a mixed word during rewriting.
struct Leg {
  bool is_tm;
  int idx;
};

// Element of wedge^*(TM + A) with polynomial coefficients; components of mixed
// bidegree may coexist (sums of (p,q) shapes).
class MixedTensor {
 public:
  MixedTensor() : host_(nullptr) {}
  explicit MixedTensor(const AlgebroidPresentation* host);

  static MixedTensor from_multivector(const Multivector& v);           // pure A
  static MixedTensor tm_basis(const AlgebroidPresentation* host, int a);

  const AlgebroidPresentation* host() const { return host_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<MixedKey, Poly>& terms() const { return terms_; }
  Poly coeff(const MixedKey& k) const;

  // Adds c * (legs word) canonicalized with sign; zero on repeated legs.
  void add_word(const std::vector<Leg>& word, const Poly& c);
  void add_term(MixedKey k, const Poly& c);  // key already canonical

  MixedTensor operator-() const;
  MixedTensor& operator+=(const MixedTensor& o);
  MixedTensor& operator-=(const MixedTensor& o);
  friend MixedTensor operator+(MixedTensor a, const MixedTensor& b) { return a += b; }
  friend MixedTensor operator-(MixedTensor a, const MixedTensor& b) { return a -= b; }
  friend bool operator==(const MixedTensor& a, const MixedTensor& b);
  friend bool operator!=(const MixedTensor& a, const MixedTensor& b) { return !(a == b); }

  MixedTensor scaled(const Poly& f) const;
  MixedTensor scaled(const Rational& c) const;

  // Component of pure frame type (p = 0) as a Multivector of the given degree;
  // fails if a term of different shape is present and `strict`.
  Multivector pure_a_part(int degree) const;
  bool has_tm_leg() const;

  std::string render() const;  // display only, TM legs shown as d/d<coord>

  void check_host(const AlgebroidPresentation* host) const;

 private:
  const AlgebroidPresentation* host_;
  std::map<MixedKey, Poly> terms_;
};

MixedTensor mixed_wedge(const MixedTensor& a, const MixedTensor& b);

// Contraction with the base coordinate form dx_a (pairs TM legs only).
MixedTensor contract_dx(const MixedTensor& w, int a);
// Contraction with rho* dx_a (pairs A legs via the anchor coefficients).
MixedTensor contract_rho_dx(const MixedTensor& w, int a);
// df-linear combinations of the two above.
MixedTensor contract_df(const MixedTensor& w, const Poly& f);
MixedTensor contract_rho_star_df(const MixedTensor& w, const Poly& f);

// Degree-zero derivation replacing each A leg e_j by rho(e_j) in TM.
MixedTensor d_rho(const MixedTensor& w);

// A rho-compatible k-tensor in Gamma(TM (x) wedge^{k-1} A), stored through its
// coordinate components comp[a] = i_{dx_a} pi.
struct RhoTensor {
  const AlgebroidPresentation* host = nullptr;
  int k = 0;
  std::vector<Multivector> comp;  // size = base_dim, each of degree k-1

  static RhoTensor zero(const AlgebroidPresentation* host, int k);
  MixedTensor to_mixed() const;
  bool is_zero() const;
  friend bool operator==(const RhoTensor& a, const RhoTensor& b) {
    return a.host == b.host && a.k == b.k && a.comp == b.comp;
  }
};

// Compatibility residuals i_{rho*dx_a} i_{dx_b} pi + i_{rho*dx_b} i_{dx_a} pi,
// one entry per pair a <= b; all must vanish.
struct RhoCompatReport {
  bool ok = true;
  struct Entry {
    int a, b;
    Multivector residual;  // degree k-2
  };
  std::vector<Entry> residuals;  // nonzero ones
};
RhoCompatReport rho_compat_check(const RhoTensor& pi);

// D_rho tau for tau in wedge^k A; the result is rho-compatible by construction.
RhoTensor d_rho_tau(const Multivector& tau);

// B pi = sum_{j=0}^{k-1} ((-1)^j / (j+1)!) D_rho^j pi.
MixedTensor b_pi(const RhoTensor& pi);

// inv_* on a mixed tensor: on a (p,q) component, (-1)^q sum_{j<=q} ((-1)^j/j!) D_rho^j.
MixedTensor inv_star(const MixedTensor& w);

}  // namespace lag
