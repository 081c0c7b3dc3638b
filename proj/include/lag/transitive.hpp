#pragma once

#include <optional>
#include <vector>

#include "lag/cochain.hpp"
#include "lag/differentials.hpp"
#include "lag/mixed_tensor.hpp"
#include "lag/presentation.hpp"

namespace lag {

// Bundle map lambda: TM -> A splitting the anchor; rows[a][i] is the e_i
// coefficient of lambda(d/dx_a).
struct Connection {
  const AlgebroidPresentation* host = nullptr;
  std::vector<std::vector<Poly>> rows;  // [m][n]
};

// Exact test of rho . lambda = id as a Poly matrix identity.
bool validate_connection(const Connection& c);

// The connection declared on the presentation, if any (not re-validated).
std::optional<Connection> declared_connection(const AlgebroidPresentation* p);

// Linear solve for a connection with entries of coefficient degree
// <= degree_bound; empty when none exists within the bound (the presentation
// is then not certified transitive).
std::optional<Connection> find_connection(const AlgebroidPresentation* p,
                                          int degree_bound = 1);

// Substitutes lambda into every TM leg:
// X_1 ^ ... ^ X_p ^ Z -> lambda(X_1) ^ ... ^ lambda(X_p) ^ Z.
// Every term of w must have p + q == degree legs.
Multivector upsilon(const Connection& c, const MixedTensor& w, int degree);

// The canonical generator of a rho-compatible tensor through the connection.
// The result L is verified exactly against [L, f] = (-1)^(k-1) iota_{df} pi
// and its anchor derivative being pi; Errc::identity_fail signals drift.
Multivector lambda_from_pi(const Connection& c, const RhoTensor& pi);

// A kernel-valued 1-cocycle omega plus a generator part lambda. Two pairs
// present the same differential when they differ by some nu in the kernel
// wedge: omega' = omega - [nu, .], lambda' = lambda + nu.
struct PrimaryPair {
  const AlgebroidPresentation* host = nullptr;
  int k = 0;
  OneCochain omega;    // KERNEL_WEDGE(k) coefficients, one value per frame
  Multivector lambda;  // degree k
};

struct PrimaryPairReport {
  bool ok = true;
  std::vector<int> outside_kernel;  // frame indices whose omega value escapes
  CochainResidualReport cocycle;
};

// Checks both pair invariants: every omega value is annihilated by each
// rho* dx_a and lies in the declared kernel span, and omega is a 1-cocycle.
PrimaryPairReport validate_primary_pair(const PrimaryPair& pp);

// omega(u) = delta0(u) - [L, u] with L generated from the symbol tensor of
// delta; delta must validate (Errc::validation) and 1 <= k <= top
// (Errc::bad_input).
PrimaryPair primary_pair_from_differential(const KDifferential& delta, const Connection& c);

// delta = [lambda, .] + omega; the pair must validate (Errc::validation).
KDifferential differential_from_primary_pair(const PrimaryPair& pp);

// Strict class test: nu = b.lambda - a.lambda must lie in the kernel wedge and
// carry a.omega onto b.omega.
bool same_primary_class(const PrimaryPair& a, const PrimaryPair& b);

// Searches nu in the kernel wedge with coefficient degree <= degree_bound such
// that b.omega - a.omega is the coboundary of nu; the two pairs then present
// equivalent differentials. Empty result is inconclusive (bounded search).
std::optional<Multivector> primary_equivalence_witness(const PrimaryPair& a,
                                                       const PrimaryPair& b,
                                                       int degree_bound);

}  // namespace lag
