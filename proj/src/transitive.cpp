#include "lag/transitive.hpp"

#include <utility>

#include "lag/error.hpp"
#include "lag/linsolve.hpp"

namespace lag {

namespace {

void check_conn_shape(const Connection& c) {
  if (!c.host) fail(Errc::bad_input, "connection without a host");
  if (int(c.rows.size()) != c.host->base_dim())
    fail(Errc::size_mismatch, "connection row count");
  for (const auto& row : c.rows)
    if (int(row.size()) != c.host->rank())
      fail(Errc::size_mismatch, "connection column count");
}

Multivector lambda_image(const Connection& c, int a) {
  Multivector v(c.host, 1);
  for (int i = 0; i < c.host->rank(); ++i) v.add_word({i}, c.rows[size_t(a)][size_t(i)]);
  return v;
}

void check_pair_shape(const PrimaryPair& pp) {
  if (!pp.host) fail(Errc::bad_input, "primary pair without a host");
  if (pp.k < 1 || pp.k > pp.host->top())
    fail(Errc::bad_input, "primary pair degree out of range");
  if (pp.omega.module.kind() != CoefficientModule::Kind::kernel_wedge ||
      pp.omega.module.value_host() != pp.host || pp.omega.module.k() != pp.k)
    fail(Errc::bad_input, "primary pair requires kernel-wedge coefficients");
  if (int(pp.omega.values.size()) != pp.host->rank())
    fail(Errc::size_mismatch, "frame value count of a primary pair");
  for (const auto& v : pp.omega.values) {
    v.check_host(pp.host);
    if (!v.is_zero() && v.degree() != pp.k) fail(Errc::degree_mismatch, "omega value");
  }
  pp.lambda.check_host(pp.host);
  if (!pp.lambda.is_zero() && pp.lambda.degree() != pp.k)
    fail(Errc::degree_mismatch, "generator part of a primary pair");
}

bool in_kernel_wedge(const CoefficientModule& mod, const Multivector& v) {
  const AlgebroidPresentation* p = mod.value_host();
  for (int a = 0; a < p->base_dim(); ++a)
    if (!contract_rho_df(v, Poly::variable(p->base_dim(), a)).is_zero()) return false;
  return mod.contains(v);
}

}  // namespace

bool validate_connection(const Connection& c) {
  check_conn_shape(c);
  const AlgebroidPresentation* p = c.host;
  for (int a = 0; a < p->base_dim(); ++a)
    for (int b = 0; b < p->base_dim(); ++b) {
      Poly s = p->zero_poly();
      for (int i = 0; i < p->rank(); ++i) s += c.rows[size_t(a)][size_t(i)] * p->anchor(i, b);
      if (s != (a == b ? p->one_poly() : p->zero_poly())) return false;
    }
  return true;
}

std::optional<Connection> declared_connection(const AlgebroidPresentation* p) {
  if (!p) fail(Errc::bad_input, "null presentation");
  if (p->connection.empty()) return std::nullopt;
  Connection c{p, p->connection};
  check_conn_shape(c);
  return c;
}

std::optional<Connection> find_connection(const AlgebroidPresentation* p, int degree_bound) {
  if (!p) fail(Errc::bad_input, "null presentation");
  const int m = p->base_dim();
  const int n = p->rank();
  const auto monos = monomials_up_to(m, degree_bound);
  Connection c{p, std::vector<std::vector<Poly>>(
                      size_t(m), std::vector<Poly>(size_t(n), p->zero_poly()))};
  for (int a = 0; a < m; ++a) {
    std::vector<std::vector<Multivector>> cols;
    for (int i = 0; i < n; ++i)
      for (const auto& mono : monos) {
        std::vector<Multivector> col;
        for (int b = 0; b < m; ++b)
          col.push_back(Multivector::scalar(
              p, Poly::monomial(m, mono, Rational(1)) * p->anchor(i, b)));
        cols.push_back(std::move(col));
      }
    std::vector<Multivector> target;
    for (int b = 0; b < m; ++b)
      target.push_back(Multivector::scalar(p, a == b ? p->one_poly() : p->zero_poly()));
    const auto sol = MultivectorSystem(std::move(cols)).solve(target);
    if (!sol) return std::nullopt;
    size_t t = 0;
    for (int i = 0; i < n; ++i)
      for (const auto& mono : monos) {
        if (!(*sol)[t].is_zero())
          c.rows[size_t(a)][size_t(i)] += Poly::monomial(m, mono, (*sol)[t]);
        ++t;
      }
  }
  return c;
}

Multivector upsilon(const Connection& c, const MixedTensor& w, int degree) {
  check_conn_shape(c);
  w.check_host(c.host);
  Multivector out(c.host, degree);
  for (const auto& [key, coeff] : w.terms()) {
    if (int(key.tm.size() + key.fr.size()) != degree)
      fail(Errc::degree_mismatch, "mixed term leg count");
    Multivector acc = Multivector::scalar(c.host, coeff);
    for (int a : key.tm) acc = wedge(acc, lambda_image(c, a));
    if (!key.fr.empty()) acc = wedge(acc, Multivector::wedge_basis(c.host, key.fr));
    out += acc;
  }
  return out;
}

Multivector lambda_from_pi(const Connection& c, const RhoTensor& pi) {
  check_conn_shape(c);
  if (pi.host != c.host) fail(Errc::host_mismatch, "tensor host");
  const AlgebroidPresentation* p = c.host;
  if (pi.k < 1 || pi.k > p->top()) fail(Errc::bad_input, "tensor degree out of range");
  if (!validate_connection(c)) fail(Errc::bad_input, "connection does not split the anchor");
  if (!rho_compat_check(pi).ok) fail(Errc::bad_input, "tensor is not rho-compatible");

  Multivector L = upsilon(c, b_pi(pi), pi.k);
  for (int a = 0; a < p->base_dim(); ++a) {
    Multivector got =
        schouten(L, Multivector::scalar(p, Poly::variable(p->base_dim(), a)));
    Multivector want = (pi.k - 1) % 2 == 0 ? pi.comp[size_t(a)] : -pi.comp[size_t(a)];
    if (got != want)
      fail(Errc::identity_fail,
           "bracket with coordinate " + p->coord_name(a) + " deviates from the tensor");
  }
  if (d_rho_tau(L) != pi)
    fail(Errc::identity_fail, "anchor derivative of the generator deviates from the tensor");
  return L;
}

PrimaryPairReport validate_primary_pair(const PrimaryPair& pp) {
  check_pair_shape(pp);
  PrimaryPairReport rep;
  for (int i = 0; i < pp.host->rank(); ++i)
    if (!in_kernel_wedge(pp.omega.module, pp.omega.values[size_t(i)]))
      rep.outside_kernel.push_back(i);
  rep.cocycle = ce_coboundary_residual(pp.omega);
  rep.ok = rep.outside_kernel.empty() && rep.cocycle.ok;
  return rep;
}

PrimaryPair primary_pair_from_differential(const KDifferential& delta, const Connection& c) {
  if (!delta.host) fail(Errc::bad_input, "differential without a host");
  if (delta.host != c.host) fail(Errc::host_mismatch, "connection host");
  const AlgebroidPresentation* p = delta.host;
  if (delta.k < 1 || delta.k > p->top())
    fail(Errc::bad_input, "primary pairs cover degrees 1..top");
  if (!validate_connection(c)) fail(Errc::bad_input, "connection does not split the anchor");
  if (!validate_k_differential(delta).ok)
    fail(Errc::validation, "differential fails its compatibility equations");

  const RhoTensor pi = delta.has_symbol() ? tensor_from_differential(delta)
                                          : RhoTensor::zero(p, delta.k);
  PrimaryPair pp{p, delta.k, OneCochain{CoefficientModule::kernel_wedge(p, delta.k), {}},
                 lambda_from_pi(c, pi)};
  for (int i = 0; i < p->rank(); ++i)
    pp.omega.values.push_back(delta.delta0[size_t(i)] -
                              schouten(pp.lambda, Multivector::frame(p, i)));
  if (!validate_primary_pair(pp).ok)
    fail(Errc::validation, "extracted pair fails the kernel cocycle conditions");
  return pp;
}

KDifferential differential_from_primary_pair(const PrimaryPair& pp) {
  if (!validate_primary_pair(pp).ok)
    fail(Errc::validation, "pair fails the kernel cocycle conditions");
  const AlgebroidPresentation* p = pp.host;
  KDifferential d = KDifferential::zero(p, pp.k);
  for (int i = 0; i < p->rank(); ++i)
    d.delta0[size_t(i)] =
        schouten(pp.lambda, Multivector::frame(p, i)) + pp.omega.values[size_t(i)];
  for (int a = 0; a < p->base_dim(); ++a)
    d.delta1[size_t(a)] =
        schouten(pp.lambda, Multivector::scalar(p, Poly::variable(p->base_dim(), a)));
  if (!validate_k_differential(d).ok)
    fail(Errc::internal, "assembled differential fails its equations");
  return d;
}

bool same_primary_class(const PrimaryPair& a, const PrimaryPair& b) {
  check_pair_shape(a);
  check_pair_shape(b);
  if (a.host != b.host) fail(Errc::host_mismatch, "primary pair hosts");
  if (a.k != b.k) fail(Errc::degree_mismatch, "primary pair degrees");
  const Multivector nu = b.lambda - a.lambda;
  if (!in_kernel_wedge(a.omega.module, nu)) return false;
  for (int i = 0; i < a.host->rank(); ++i)
    if (b.omega.values[size_t(i)] !=
        a.omega.values[size_t(i)] - schouten(nu, Multivector::frame(a.host, i)))
      return false;
  return true;
}

std::optional<Multivector> primary_equivalence_witness(const PrimaryPair& a,
                                                       const PrimaryPair& b,
                                                       int degree_bound) {
  check_pair_shape(a);
  check_pair_shape(b);
  if (a.host != b.host) fail(Errc::host_mismatch, "primary pair hosts");
  if (a.k != b.k) fail(Errc::degree_mismatch, "primary pair degrees");
  const int n = a.host->rank();
  const auto basis = a.omega.module.section_basis(degree_bound);
  std::vector<std::vector<Multivector>> cols;
  for (const auto& s : basis) {
    std::vector<Multivector> col;
    for (int i = 0; i < n; ++i) col.push_back(a.omega.module.nabla(i, s));
    cols.push_back(std::move(col));
  }
  std::vector<Multivector> target;
  for (int i = 0; i < n; ++i)
    target.push_back(b.omega.values[size_t(i)] - a.omega.values[size_t(i)]);
  const auto sol = MultivectorSystem(std::move(cols)).solve(target);
  if (!sol) return std::nullopt;
  if (basis.empty()) return Multivector(a.host, a.k);
  return combine(basis, *sol);
}

}  // namespace lag
