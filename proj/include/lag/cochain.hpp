#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lag/linsolve.hpp"
#include "lag/multivector.hpp"

namespace lag {

// Coefficient module for degree-1 Chevalley-Eilenberg cochains. Values are
// multivectors over `value_host`; cochains assign one value to each frame
// section of `cochain_host`. The two hosts coincide except for cochains over a
// derived (jet) presentation, whose action on the underlying wedge powers is
// installed through `nabla_override` by the module that builds it.
class CoefficientModule {
 public:
  enum class Kind { trivial_r, adjoint_wedge, kernel_wedge };

  static CoefficientModule trivial_r(const AlgebroidPresentation* host);
  static CoefficientModule adjoint_wedge(const AlgebroidPresentation* host, int k);
  // Wedge power of the declared kernel frame (host->kernel_frame rows).
  static CoefficientModule kernel_wedge(const AlgebroidPresentation* host, int k);

  Kind kind() const { return kind_; }
  int k() const { return k_; }
  const AlgebroidPresentation* cochain_host() const { return cochain_host_; }
  const AlgebroidPresentation* value_host() const { return value_host_; }
  // Degree of value multivectors (0 for the trivial module).
  int value_degree() const;

  // Checks the declared data backing the module: for kernel_wedge, every
  // kernel frame row must be anchor-annihilated. Throws Errc::bad_input.
  void validate() const;

  // Covariant derivative along the i-th frame section of cochain_host.
  Multivector nabla(int i, const Multivector& value) const;

  // Fiber data for point-base cohomology: constant multivectors spanning the
  // module fiber. kernel_wedge uses wedges of the declared rows.
  std::vector<Multivector> fiber_basis() const;

  // Coordinates of a constant value in fiber_basis(); empty optional when the
  // value is not in the span (flags kernel membership failures).
  std::optional<std::vector<Rational>> fiber_coords(const Multivector& value) const;

  // Membership of a section in the module (poly coefficients allowed):
  // trivial/adjoint accept any value of the right degree; kernel_wedge solves
  // for coefficients over the kernel-wedge basis.
  bool contains(const Multivector& value) const;

  // Basis of module sections with coefficient degree <= d (for witness
  // searches): fiber basis elements times monomials.
  std::vector<Multivector> section_basis(int d) const;

  using Nabla = std::function<Multivector(int, const Multivector&)>;
  void set_nabla_override(const AlgebroidPresentation* cochain_host, Nabla nabla);

 private:
  CoefficientModule() = default;
  Kind kind_ = Kind::trivial_r;
  int k_ = 0;
  const AlgebroidPresentation* cochain_host_ = nullptr;
  const AlgebroidPresentation* value_host_ = nullptr;
  Nabla nabla_override_;
};

// A 1-cochain: one module value per frame section of the cochain host,
// extended to arbitrary sections by C-infinity-linearity.
struct OneCochain {
  CoefficientModule module;
  std::vector<Multivector> values;  // size == cochain_host()->rank()

  static OneCochain zero(const CoefficientModule& module);
  // chi applied to a coefficient vector sum_i f_i e_i.
  Multivector apply(const std::vector<Poly>& section_coeffs) const;
};

struct CochainResidualReport {
  struct Entry {
    int i, j;             // frame pair, i < j
    Multivector residual; // nonzero
  };
  bool ok = true;
  std::vector<Entry> entries;
};

// d(chi)(e_i, e_j) = nabla_i chi(e_j) - nabla_j chi(e_i) - chi([e_i, e_j]);
// pass iff every residual vanishes. Module data is validated first.
CochainResidualReport ce_coboundary_residual(const OneCochain& chi);

// The coboundary of a module section: (d nu)(e_i) = nabla_i nu.
OneCochain ce_coboundary(const CoefficientModule& module, const Multivector& nu);

struct H1Report {
  int dim_z1 = 0;
  int dim_b1 = 0;
  int dim_h1 = 0;
  std::vector<OneCochain> representatives;  // dim_h1 cocycles spanning Z1 mod B1
};

// Exact degree-1 cohomology of a point-base presentation with coefficients in
// the module; throws Errc::not_point_base when the base has coordinates.
H1Report lie_algebra_h1(const AlgebroidPresentation* p, const CoefficientModule& module);

}  // namespace lag
