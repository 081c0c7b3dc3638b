#pragma once

#include <string>
#include <vector>

#include "lag/poly.hpp"

namespace lag {

// A Lie algebroid presented over a polynomial patch: base coordinates x_a,
// a global frame e_i, anchor rho(e_i) = sum_a anchor[i][a] d/dx_a and bracket
// table [e_i, e_j] = sum_k c(i,j)[k] e_k (stored for i < j, extended skewly).
// All structure data are polynomials in the base coordinates.
class AlgebroidPresentation {
 public:
  AlgebroidPresentation() = default;
  AlgebroidPresentation(std::vector<std::string> coords, std::vector<std::string> frame);

  int base_dim() const { return int(coords_.size()); }
  int rank() const { return int(frame_.size()); }
  // top degree of the exterior algebra of A; "top+1" in the exceptional range.
  int top() const { return rank(); }

  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<std::string>& frame() const { return frame_; }
  const std::string& coord_name(int a) const { return coords_.at(a); }
  const std::string& frame_name(int i) const { return frame_.at(i); }
  std::string name;  // informative label from the definition file, may be empty

  void set_anchor(int i, int a, const Poly& p);
  void set_bracket(int i, int j, int k, const Poly& p);  // requires i < j

  // rho(e_i) component in direction d/dx_a.
  const Poly& anchor(int i, int a) const;
  // rho(e_i) f, the anchor vector field applied to a function.
  Poly anchor_apply(int i, const Poly& f) const;
  // coefficients of [e_i, e_j] in the frame (any i, j; skew, zero on diagonal).
  std::vector<Poly> frame_bracket(int i, int j) const;

  // Optional declared data from the definition file (may be empty):
  // rows of a frame of ker rho, coefficients in the e_i basis.
  std::vector<std::vector<Poly>> kernel_frame;
  // connection lambda(d/dx_a) = sum_i connection[a][i] e_i, rows per coordinate.
  std::vector<std::vector<Poly>> connection;

  Poly zero_poly() const { return Poly(base_dim()); }
  Poly one_poly() const { return Poly::constant(base_dim(), Rational(1)); }

 private:
  void check_frame_index(int i) const;
  std::vector<std::string> coords_;
  std::vector<std::string> frame_;
  std::vector<std::vector<Poly>> anchor_;            // [i][a]
  std::vector<std::vector<std::vector<Poly>>> c_;    // [i][j][k], i < j
};

// Structure-equation residuals. `ok` iff every residual polynomial vanishes.
struct PresentationReport {
  struct JacobiResidual {
    int i, j, k;               // frame triple, 0-based
    std::vector<Poly> comps;   // residual coefficients in the frame
  };
  struct AnchorResidual {
    int i, j;                  // frame pair
    std::vector<Poly> comps;   // residual vector field components
  };
  bool ok = true;
  std::vector<JacobiResidual> jacobi;   // nonzero residuals only
  std::vector<AnchorResidual> anchor;   // nonzero residuals only
};

// Checks the Jacobi identity (with anchor Leibniz corrections) on all frame
// triples and the anchor morphism condition on all frame pairs.
PresentationReport validate_presentation(const AlgebroidPresentation& p);

}  // namespace lag
