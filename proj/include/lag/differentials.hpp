#pragma once

#include <optional>
#include <vector>

#include "lag/cochain.hpp"
#include "lag/deform.hpp"
#include "lag/mixed_tensor.hpp"
#include "lag/multivector.hpp"

namespace lag {

// Degree-(k-1) derivation of the section algebra, stored through its generator
// values: delta0[i] = delta(e_i) (degree k) and delta1[a] = delta(x_a) (degree
// k-1). delta1 stays empty when the base is a point or k = 0; the extension to
// arbitrary sections is fixed by the graded Leibniz rule (dapply).
struct KDifferential {
  const AlgebroidPresentation* host = nullptr;
  int k = 0;
  std::vector<Multivector> delta0;
  std::vector<Multivector> delta1;

  static KDifferential zero(const AlgebroidPresentation* host, int k);
  bool has_symbol() const { return !delta1.empty(); }
  // delta on a function: sum_a (d f / d x_a) * delta(x_a); zero when k = 0.
  Multivector apply_function(const Poly& f) const;
  // Largest coefficient degree appearing in the generator values (0 if none).
  int data_degree() const;

  KDifferential operator-() const;
  KDifferential& operator+=(const KDifferential& o);
  KDifferential& operator-=(const KDifferential& o);
  friend KDifferential operator+(KDifferential a, const KDifferential& b) { return a += b; }
  friend KDifferential operator-(KDifferential a, const KDifferential& b) { return a -= b; }
  friend bool operator==(const KDifferential& a, const KDifferential& b);
  friend bool operator!=(const KDifferential& a, const KDifferential& b) { return !(a == b); }
};

// Graded Leibniz extension of delta to a multivector: on f e_{j_1..j_q} the
// function part delta(f) ^ e_J plus the slot expansion with signs
// (-1)^{(k-1)s} e_{j_1} ^ .. ^ delta(e_{j_s}) ^ .. ^ e_{j_q}.
Multivector dapply(const KDifferential& delta, const Multivector& v);

// Residuals of the compatibility equations a k-differential must satisfy, each
// written as (right-hand side) - (left-hand side) of the defining identity:
//   symbol_pair:    [delta(x_a), x_b] + (-1)^{k-1} [x_a, delta(x_b)]
//   symbol_anchor:  [delta(e_i), x_a] + [e_i, delta(x_a)] - delta(rho_i^a)
//   frame_cocycle:  [delta(e_i), e_j] + [e_i, delta(e_j)] - dapply(delta, [e_i, e_j])
// For k = top+1 the values on frame sections must vanish identically.
// `inconsistent` fires when the verdict from these residuals disagrees with
// the verdict obtained by probing the frame identity on section pairs with
// polynomial coefficients (1 <= k <= top, where the two are equivalent); it
// flags an internal error, never bad input.
struct DiffValidationReport {
  bool ok = true;
  struct CoordPair {
    int a, b;
    Multivector residual;
  };
  struct FrameCoord {
    int i, a;
    Multivector residual;
  };
  struct FramePair {
    int i, j;
    Multivector residual;
  };
  std::vector<CoordPair> symbol_pair;
  std::vector<FrameCoord> symbol_anchor;
  std::vector<FramePair> frame_cocycle;
  bool delta0_must_vanish = false;
  bool inconsistent = false;
};

DiffValidationReport validate_k_differential(const KDifferential& delta);

// delta = [tau, .] on generators; 0 <= deg(tau) <= top+1 (a degree-(top+1)
// generator is automatically zero). Always validates.
KDifferential exact_differential(const Multivector& tau);

// The tensor pi with delta(f) = (-1)^{k-1} iota_{df} pi, i.e. comp[a] =
// (-1)^{k-1} delta1[a]; requires k >= 1.
RhoTensor tensor_from_differential(const KDifferential& delta);
// The unique differential with the given degree-(top+1) symbol: delta0 = 0.
KDifferential top_plus_one_differential(const RhoTensor& pi);

// Searches tau with coefficient degree <= degree_bound and exact_differential
// (tau) == delta; nullopt when no such tau exists within the bound.
std::optional<Multivector> exactness_witness(const KDifferential& delta, int degree_bound);
// Witness for delta' - delta; both must share host and k.
std::optional<Multivector> equivalence_witness(const KDifferential& delta,
                                               const KDifferential& delta_prime,
                                               int degree_bound);
// Default search bound: data degree + 2.
int default_degree_bound(const KDifferential& delta);

// The same data as a bidegree (0, k-1) multiderivation (frame table delta0,
// symbol table delta1) and back.
MultiDerivation to_multiderivation(const KDifferential& delta);
KDifferential from_multiderivation(const MultiDerivation& d);

// Reduced space of k-differentials over a point base: degree-1 cohomology with
// values in the k-th wedge of the adjoint module.
H1Report reduced_space_point_base(const AlgebroidPresentation* p, int k);

// Basis of the space of valid k-differentials with coefficient degree <= d
// (solution space of the validation equations; deterministic order).
std::vector<KDifferential> valid_differential_basis(const AlgebroidPresentation* p, int k,
                                                    int d);
// Basis of the rho-compatible tensors of symbol degree k with coefficient
// degree <= d.
std::vector<RhoTensor> rho_compatible_basis(const AlgebroidPresentation* p, int k, int d);

// Pointwise classification of a degree-(top+1) symbol tensor: at each sample
// point, a nonzero anchor forces the tensor to vanish there, and a zero anchor
// with nonzero adjoint character (some tr ad_{e_i} != 0) forces the same. The
// two symbolic gates are the compatibility residuals of pi and the frame
// identity residuals (the latter vanish identically in this degree).
struct TopPlusOneReport {
  bool valid = true;
  struct PointEntry {
    std::vector<Rational> point;
    bool rho_nonzero = false;
    bool character_nonzero = false;
    bool pi_nonzero = false;
    bool ok = true;
  };
  std::vector<PointEntry> points;
  RhoCompatReport rho_compat;
  std::vector<DiffValidationReport::FramePair> frame_cocycle;
  std::optional<std::vector<Rational>> witness;  // first failing sample point
};

TopPlusOneReport classify_top_plus_one(const AlgebroidPresentation* p, const RhoTensor& pi,
                                       const std::vector<std::vector<Rational>>& samples);

// Dimension of {closed 1-cochains with scalar coefficients of degree <= d}
// modulo {differentials of functions of degree <= d+1 that land in that
// space}; exact linear algebra at the stated truncation.
struct BoundedH1Report {
  int degree_bound = 0;
  int dim_closed = 0;
  int dim_exact_in_window = 0;
  int dim = 0;
};

BoundedH1Report h1_trivial_coeffs_bounded(const AlgebroidPresentation* p, int degree_bound);

}  // namespace lag
