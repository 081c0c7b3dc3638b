#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "lag/cochain.hpp"
#include "lag/differentials.hpp"
#include "lag/mixed_tensor.hpp"
#include "lag/presentation.hpp"

namespace lag {

// First-jet prolongation of a presentation. The derived algebroid has frame
// J_1..J_n (jets of the e_i) followed by F_{a,i} = dx_a (x) e_i at index
// n + a*n + i, over the same base coordinates; the anchor factors through the
// J part. Sections of the F block form a bundle of Lie algebras Hom(TM, A).
struct JetPresentation {
  const AlgebroidPresentation* base = nullptr;
  std::unique_ptr<AlgebroidPresentation> jet;

  int j_index(int i) const { return i; }
  int f_index(int a, int i) const { return base->rank() + a * base->rank() + i; }
  bool is_f(int u) const { return u >= base->rank(); }
  std::pair<int, int> f_split(int u) const;  // u = f_index(a, i) -> (a, i)
};

// Builds the bracket and anchor tables of the prolongation and validates the
// result (any residual is an internal error).
JetPresentation build_jet(const AlgebroidPresentation* p);

// Adjoint action of the frame element with jet index u on w in wedge^* A:
// J_i acts by [e_i, .], F_{a,i} by w |-> -[w, x_a] ^ e_i.
Multivector jet_adjoint(const JetPresentation& J, int u, const Multivector& w);

// wedge^k A as a coefficient module over the jet presentation, with the action
// above installed; feeds the degree-1 cochain machinery.
CoefficientModule jet_adjoint_module(const JetPresentation& J, int k);

// Section of Hom(TM, A) with polynomial entries: sum entries[a][i] dx_a (x) e_i.
struct IsotropyElement {
  const AlgebroidPresentation* host = nullptr;
  std::vector<std::vector<Poly>> entries;  // [m][n]

  static IsotropyElement zero(const AlgebroidPresentation* host);
  static IsotropyElement rank_one(const AlgebroidPresentation* host, int a, int i,
                                  const Poly& c);
};

// Fiberwise bracket mu.rho.lam - lam.rho.mu (the F-F block of the jet bracket).
IsotropyElement isotropy_bracket(const IsotropyElement& lam, const IsotropyElement& mu);
// Action on wedge^* A: w |-> -sum entries[a][i] [w, x_a] ^ e_i.
Multivector isotropy_adjoint(const IsotropyElement& H, const Multivector& w);

// mu_pi(H): H applied to the TM leg of pi, wedged with the remaining legs;
// on rank-one H = c dx_a (x) e_i this is (-1)^(k-1) c (iota_{dx_a} pi) ^ e_i.
Multivector mu_pi(const RhoTensor& pi, const IsotropyElement& H);

// A degree-k jet cocycle presented by its values chi_j[i] on the J frame plus
// the compatible tensor pi generating the F values:
// chi(F_{a,i}) = (-1)^(k-1) (iota_{dx_a} pi) ^ e_i. explicit_f optionally
// carries hand-assembled F values ([m][n]) for validation; when present it
// takes precedence over the generated ones.
struct CharPair {
  const AlgebroidPresentation* host = nullptr;
  int k = 0;
  std::vector<Multivector> chi_j;  // [n], degree k
  RhoTensor pi;
  std::vector<std::vector<Multivector>> explicit_f;

  Multivector f_value(int a, int i) const;
  friend bool operator==(const CharPair& a, const CharPair& b) {
    return a.host == b.host && a.k == b.k && a.chi_j == b.chi_j && a.pi == b.pi;
  }
  friend bool operator!=(const CharPair& a, const CharPair& b) { return !(a == b); }
};

// chi = -[., tau] on the jet frame, pi the symbol of [tau, .]; 1 <= deg tau <= top.
CharPair exact_char_pair(const Multivector& tau);

// chi_j[i] = delta(e_i), pi from the symbol values; delta must validate
// (Errc::validation) and 1 <= k <= top (Errc::bad_input).
CharPair char_pair_from_differential(const KDifferential& delta);
// Inverse of the above; the pair must pass char_pair_cocycle_check
// (Errc::cocycle_fail).
KDifferential differential_from_char_pair(const CharPair& cp);

struct CharPairReport {
  bool ok = true;
  bool pi_compatible = true;      // rho-compatibility of pi
  bool pi_consistent = true;      // pi recovered from the F values matches
  CochainResidualReport cocycle;  // residuals over jet frame pairs
};

// Assembles the full cochain over build_jet(host) and checks: pi compatibility,
// the degree-1 cocycle residuals, and the recovery of pi from the F values.
CharPairReport char_pair_cocycle_check(const CharPair& cp);

// chi restricted to the F block equals mu_pi (trivially true for generated
// values; detects tampered explicit_f tables).
bool pullback_membership(const CharPair& cp);

}  // namespace lag
