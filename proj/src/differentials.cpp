#include "lag/differentials.hpp"

#include <algorithm>
#include <utility>

#include "lag/error.hpp"
#include "lag/linsolve.hpp"

namespace lag {

namespace {

Multivector bracket_mv(const AlgebroidPresentation* p, int i, int j) {
  Multivector v(p, 1);
  const auto blk = p->frame_bracket(i, j);
  for (int t = 0; t < p->rank(); ++t) v.add_word({t}, blk[size_t(t)]);
  return v;
}

void check_shape(const KDifferential& d) {
  if (!d.host) fail(Errc::bad_input, "differential without a host");
  if (d.k < 0 || d.k > d.host->top() + 1) fail(Errc::bad_input, "differential degree out of range");
  if (int(d.delta0.size()) != d.host->rank())
    fail(Errc::size_mismatch, "frame value count of a differential");
  const bool wants_symbol = d.host->base_dim() > 0 && d.k >= 1;
  if (int(d.delta1.size()) != (wants_symbol ? d.host->base_dim() : 0))
    fail(Errc::size_mismatch, "coordinate value count of a differential");
  for (const auto& v : d.delta0) {
    v.check_host(d.host);
    if (!v.is_zero() && v.degree() != d.k) fail(Errc::degree_mismatch, "frame value degree");
  }
  for (const auto& v : d.delta1) {
    v.check_host(d.host);
    if (!v.is_zero() && v.degree() != d.k - 1)
      fail(Errc::degree_mismatch, "coordinate value degree");
  }
}

}  // namespace

KDifferential KDifferential::zero(const AlgebroidPresentation* host, int k) {
  KDifferential d;
  d.host = host;
  d.k = k;
  d.delta0.assign(size_t(host->rank()), Multivector(host, std::max(k, 0)));
  if (host->base_dim() > 0 && k >= 1)
    d.delta1.assign(size_t(host->base_dim()), Multivector(host, k - 1));
  return d;
}

Multivector KDifferential::apply_function(const Poly& f) const {
  Multivector out(host, std::max(k - 1, 0));
  for (size_t a = 0; a < delta1.size(); ++a) {
    Poly df = f.derive(int(a));
    if (!df.is_zero()) out += delta1[a].scaled(df);
  }
  return out;
}

int KDifferential::data_degree() const {
  int d = 0;
  for (const auto& v : delta0) d = std::max(d, v.coeff_degree());
  for (const auto& v : delta1) d = std::max(d, v.coeff_degree());
  return d;
}

KDifferential KDifferential::operator-() const {
  KDifferential r = *this;
  for (auto& v : r.delta0) v = -v;
  for (auto& v : r.delta1) v = -v;
  return r;
}

KDifferential& KDifferential::operator+=(const KDifferential& o) {
  if (host != o.host) fail(Errc::host_mismatch, "differential sum");
  if (k != o.k) fail(Errc::degree_mismatch, "differential sum degree");
  for (size_t i = 0; i < delta0.size(); ++i) delta0[i] += o.delta0[i];
  for (size_t a = 0; a < delta1.size(); ++a) delta1[a] += o.delta1[a];
  return *this;
}

KDifferential& KDifferential::operator-=(const KDifferential& o) { return *this += -o; }

bool operator==(const KDifferential& a, const KDifferential& b) {
  return a.host == b.host && a.k == b.k && a.delta0 == b.delta0 && a.delta1 == b.delta1;
}

Multivector dapply(const KDifferential& delta, const Multivector& v) {
  v.check_host(delta.host);
  const AlgebroidPresentation* p = delta.host;
  const int out_deg = v.degree() + delta.k - 1;
  Multivector out(p, std::max(out_deg, 0));
  for (const auto& [word, f] : v.terms()) {
    if (delta.k >= 1 && !delta.delta1.empty()) {
      Multivector df = delta.apply_function(f);
      if (!df.is_zero()) {
        Multivector tail(p, int(word.size()));
        tail.add_word(word, p->one_poly());
        out += wedge(df, tail);
      }
    }
    for (size_t s = 0; s < word.size(); ++s) {
      const Multivector& mid = delta.delta0.at(size_t(word[s]));
      if (mid.is_zero()) continue;
      Multivector left(p, int(s));
      left.add_word(IndexTuple(word.begin(), word.begin() + s), f);
      Multivector right(p, int(word.size() - s - 1));
      right.add_word(IndexTuple(word.begin() + s + 1, word.end()), p->one_poly());
      Multivector term = wedge(wedge(left, mid), right);
      if (((delta.k - 1) * int(s)) % 2 != 0) term = -term;
      out += term;
    }
  }
  return out;
}

DiffValidationReport validate_k_differential(const KDifferential& delta) {
  check_shape(delta);
  const AlgebroidPresentation* p = delta.host;
  const int n = p->rank();
  const int m = p->base_dim();
  const int k = delta.k;
  DiffValidationReport rep;

  if (k == p->top() + 1) {
    for (const auto& v : delta.delta0)
      if (!v.is_zero()) rep.delta0_must_vanish = true;
  }

  if (delta.has_symbol()) {
    const int sgn = (k - 1) % 2 == 0 ? 1 : -1;
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        Multivector res =
            schouten(delta.delta1[size_t(a)], Multivector::scalar(p, Poly::variable(m, b)));
        Multivector other =
            schouten(Multivector::scalar(p, Poly::variable(m, a)), delta.delta1[size_t(b)]);
        res += sgn > 0 ? other : -other;
        if (!res.is_zero()) rep.symbol_pair.push_back({a, b, res});
      }
  }

  if (m > 0) {
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < m; ++a) {
        Multivector res =
            schouten(delta.delta0[size_t(i)], Multivector::scalar(p, Poly::variable(m, a)));
        if (delta.has_symbol()) {
          res += schouten(Multivector::frame(p, i), delta.delta1[size_t(a)]);
          res -= delta.apply_function(p->anchor(i, a));
        }
        if (!res.is_zero()) rep.symbol_anchor.push_back({i, a, res});
      }
  }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Multivector res = schouten(delta.delta0[size_t(i)], Multivector::frame(p, j));
      res += schouten(Multivector::frame(p, i), delta.delta0[size_t(j)]);
      res -= dapply(delta, bracket_mv(p, i, j));
      if (!res.is_zero()) rep.frame_cocycle.push_back({i, j, res});
    }

  rep.ok = rep.symbol_pair.empty() && rep.symbol_anchor.empty() && rep.frame_cocycle.empty() &&
           !rep.delta0_must_vanish;

  // Coherence audit for 1 <= k <= top: the frame identity probed on degree-1
  // sections with coordinate coefficients must reproduce the verdict above.
  if (k >= 1 && k <= p->top()) {
    std::vector<Multivector> sections;
    for (int i = 0; i < n; ++i) sections.push_back(Multivector::frame(p, i));
    for (int a = 0; a < m; ++a)
      for (int i = 0; i < n; ++i)
        sections.push_back(Multivector::frame(p, i).scaled(Poly::variable(m, a)));
    bool probes_ok = true;
    for (size_t s = 0; s < sections.size() && probes_ok; ++s)
      for (size_t t = s + 1; t < sections.size() && probes_ok; ++t) {
        Multivector res = schouten(dapply(delta, sections[s]), sections[t]);
        res += schouten(sections[s], dapply(delta, sections[t]));
        res -= dapply(delta, schouten(sections[s], sections[t]));
        if (!res.is_zero()) probes_ok = false;
      }
    if (probes_ok != rep.ok) rep.inconsistent = true;
  }
  return rep;
}

KDifferential exact_differential(const Multivector& tau) {
  const AlgebroidPresentation* p = tau.host();
  if (!p) fail(Errc::bad_input, "exact differential without a host");
  // Degree top+1 only carries the (automatically zero) generator.
  if (tau.degree() > p->top() + 1) fail(Errc::degree_mismatch, "generator degree out of range");
  KDifferential d = KDifferential::zero(p, tau.degree());
  for (int i = 0; i < p->rank(); ++i)
    d.delta0[size_t(i)] = schouten(tau, Multivector::frame(p, i));
  for (size_t a = 0; a < d.delta1.size(); ++a)
    d.delta1[a] =
        schouten(tau, Multivector::scalar(p, Poly::variable(p->base_dim(), int(a))));
  return d;
}

RhoTensor tensor_from_differential(const KDifferential& delta) {
  check_shape(delta);
  if (delta.k < 1) fail(Errc::bad_input, "symbol tensor needs k >= 1");
  RhoTensor pi = RhoTensor::zero(delta.host, delta.k);
  for (size_t a = 0; a < delta.delta1.size(); ++a)
    pi.comp[a] = (delta.k - 1) % 2 == 0 ? delta.delta1[a] : -delta.delta1[a];
  return pi;
}

KDifferential top_plus_one_differential(const RhoTensor& pi) {
  if (!pi.host) fail(Errc::bad_input, "tensor without a host");
  if (pi.k != pi.host->top() + 1) fail(Errc::degree_mismatch, "tensor degree is not top+1");
  KDifferential d = KDifferential::zero(pi.host, pi.k);
  for (size_t a = 0; a < d.delta1.size(); ++a)
    d.delta1[a] = (pi.k - 1) % 2 == 0 ? pi.comp[a] : -pi.comp[a];
  return d;
}

namespace {

// Residuals of a differential flattened in a fixed order, as a system tuple.
std::vector<Multivector> residual_tuple(const KDifferential& d) {
  const AlgebroidPresentation* p = d.host;
  const int n = p->rank();
  const int m = p->base_dim();
  std::vector<Multivector> out;
  if (d.has_symbol()) {
    const int sgn = (d.k - 1) % 2 == 0 ? 1 : -1;
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        Multivector res =
            schouten(d.delta1[size_t(a)], Multivector::scalar(p, Poly::variable(m, b)));
        Multivector other =
            schouten(Multivector::scalar(p, Poly::variable(m, a)), d.delta1[size_t(b)]);
        out.push_back(sgn > 0 ? res + other : res - other);
      }
  }
  if (m > 0)
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < m; ++a) {
        Multivector res =
            schouten(d.delta0[size_t(i)], Multivector::scalar(p, Poly::variable(m, a)));
        if (d.has_symbol()) {
          res += schouten(Multivector::frame(p, i), d.delta1[size_t(a)]);
          res -= d.apply_function(p->anchor(i, a));
        }
        out.push_back(std::move(res));
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Multivector res = schouten(d.delta0[size_t(i)], Multivector::frame(p, j));
      res += schouten(Multivector::frame(p, i), d.delta0[size_t(j)]);
      res -= dapply(d, bracket_mv(p, i, j));
      out.push_back(std::move(res));
    }
  return out;
}

// Unknowns of the generator-value parameterization at coefficient degree <= d.
std::vector<KDifferential> differential_unknowns(const AlgebroidPresentation* p, int k, int d) {
  std::vector<KDifferential> out;
  if (k <= p->top()) {
    const auto frame_values = multivector_basis(p, k, d);
    for (int i = 0; i < p->rank(); ++i)
      for (const auto& b : frame_values) {
        KDifferential e = KDifferential::zero(p, k);
        e.delta0[size_t(i)] = b;
        out.push_back(std::move(e));
      }
  }
  if (k >= 1 && p->base_dim() > 0) {
    const auto symbol_values = multivector_basis(p, k - 1, d);
    for (int a = 0; a < p->base_dim(); ++a)
      for (const auto& b : symbol_values) {
        KDifferential e = KDifferential::zero(p, k);
        e.delta1[size_t(a)] = b;
        out.push_back(std::move(e));
      }
  }
  return out;
}

}  // namespace

std::optional<Multivector> exactness_witness(const KDifferential& delta, int degree_bound) {
  check_shape(delta);
  const AlgebroidPresentation* p = delta.host;
  const auto basis = multivector_basis(p, delta.k, degree_bound);
  std::vector<Multivector> target = delta.delta0;
  target.insert(target.end(), delta.delta1.begin(), delta.delta1.end());
  std::vector<std::vector<Multivector>> cols;
  for (const auto& tau : basis) {
    KDifferential e = exact_differential(tau);
    std::vector<Multivector> col = e.delta0;
    col.insert(col.end(), e.delta1.begin(), e.delta1.end());
    cols.push_back(std::move(col));
  }
  auto c = MultivectorSystem(std::move(cols)).solve(target);
  if (!c) return std::nullopt;
  if (basis.empty()) return Multivector(p, delta.k);  // zero target, zero witness
  return combine(basis, *c);
}

std::optional<Multivector> equivalence_witness(const KDifferential& delta,
                                               const KDifferential& delta_prime,
                                               int degree_bound) {
  if (delta.host != delta_prime.host) fail(Errc::host_mismatch, "equivalence witness");
  if (delta.k != delta_prime.k) fail(Errc::degree_mismatch, "equivalence witness degree");
  return exactness_witness(delta_prime - delta, degree_bound);
}

int default_degree_bound(const KDifferential& delta) { return delta.data_degree() + 2; }

MultiDerivation to_multiderivation(const KDifferential& delta) {
  check_shape(delta);
  MultiDerivation d(delta.host, 0, delta.k - 1);
  for (int i = 0; i < delta.host->rank(); ++i)
    if (!delta.delta0[size_t(i)].is_zero()) d.set_value({i}, {}, delta.delta0[size_t(i)]);
  for (size_t a = 0; a < delta.delta1.size(); ++a)
    if (!delta.delta1[a].is_zero()) d.set_value({}, {int(a)}, delta.delta1[a]);
  return d;
}

KDifferential from_multiderivation(const MultiDerivation& d) {
  if (d.n() != 0) fail(Errc::bad_input, "expected a one-argument multiderivation");
  KDifferential out = KDifferential::zero(d.host(), d.p() + 1);
  for (int i = 0; i < d.host()->rank(); ++i) out.delta0[size_t(i)] = d.value({i}, {});
  for (size_t a = 0; a < out.delta1.size(); ++a) out.delta1[a] = d.value({}, {int(a)});
  return out;
}

H1Report reduced_space_point_base(const AlgebroidPresentation* p, int k) {
  return lie_algebra_h1(p, CoefficientModule::adjoint_wedge(p, k));
}

std::vector<KDifferential> valid_differential_basis(const AlgebroidPresentation* p, int k,
                                                    int d) {
  const auto unknowns = differential_unknowns(p, k, d);
  std::vector<std::vector<Multivector>> cols;
  for (const auto& e : unknowns) cols.push_back(residual_tuple(e));
  const auto null = MultivectorSystem(std::move(cols)).kernel();
  std::vector<KDifferential> out;
  for (const auto& c : null) {
    KDifferential acc = KDifferential::zero(p, k);
    for (size_t t = 0; t < unknowns.size(); ++t) {
      if (c[t].is_zero()) continue;
      KDifferential scaled = unknowns[t];
      for (auto& v : scaled.delta0) v = v.scaled(c[t]);
      for (auto& v : scaled.delta1) v = v.scaled(c[t]);
      acc += scaled;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<RhoTensor> rho_compatible_basis(const AlgebroidPresentation* p, int k, int d) {
  const int m = p->base_dim();
  std::vector<RhoTensor> unknowns;
  const auto values = multivector_basis(p, k - 1, d);
  for (int a = 0; a < m; ++a)
    for (const auto& b : values) {
      RhoTensor t = RhoTensor::zero(p, k);
      t.comp[size_t(a)] = b;
      unknowns.push_back(std::move(t));
    }
  std::vector<std::vector<Multivector>> cols;
  for (const auto& t : unknowns) {
    std::vector<Multivector> res;
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b)
        res.push_back(contract_rho_df(t.comp[size_t(b)], Poly::variable(m, a)) +
                      contract_rho_df(t.comp[size_t(a)], Poly::variable(m, b)));
    cols.push_back(std::move(res));
  }
  const auto null = MultivectorSystem(std::move(cols)).kernel();
  std::vector<RhoTensor> out;
  for (const auto& c : null) {
    RhoTensor acc = RhoTensor::zero(p, k);
    for (size_t t = 0; t < unknowns.size(); ++t)
      for (size_t a = 0; a < acc.comp.size(); ++a)
        acc.comp[a] += unknowns[t].comp[a].scaled(c[t]);
    out.push_back(std::move(acc));
  }
  return out;
}

namespace {

bool mv_nonzero_at(const Multivector& v, const std::vector<Rational>& x) {
  for (const auto& [word, f] : v.terms()) {
    (void)word;
    if (!f.eval(x).is_zero()) return true;
  }
  return false;
}

}  // namespace

TopPlusOneReport classify_top_plus_one(const AlgebroidPresentation* p, const RhoTensor& pi,
                                       const std::vector<std::vector<Rational>>& samples) {
  if (pi.host != p) fail(Errc::host_mismatch, "tensor host");
  if (pi.k != p->top() + 1) fail(Errc::degree_mismatch, "tensor degree is not top+1");
  const int n = p->rank();
  const int m = p->base_dim();

  TopPlusOneReport rep;
  rep.rho_compat = rho_compat_check(pi);
  rep.frame_cocycle = validate_k_differential(top_plus_one_differential(pi)).frame_cocycle;
  rep.valid = rep.rho_compat.ok && rep.frame_cocycle.empty();

  for (const auto& x : samples) {
    if (int(x.size()) != m) fail(Errc::bad_input, "sample point arity");
    TopPlusOneReport::PointEntry e;
    e.point = x;
    for (int i = 0; i < n && !e.rho_nonzero; ++i)
      for (int a = 0; a < m && !e.rho_nonzero; ++a)
        if (!p->anchor(i, a).eval(x).is_zero()) e.rho_nonzero = true;
    if (!e.rho_nonzero) {
      for (int i = 0; i < n && !e.character_nonzero; ++i) {
        Rational tr(0);
        for (int j = 0; j < n; ++j) tr += p->frame_bracket(i, j)[size_t(j)].eval(x);
        if (!tr.is_zero()) e.character_nonzero = true;
      }
    }
    for (size_t a = 0; a < pi.comp.size() && !e.pi_nonzero; ++a)
      if (mv_nonzero_at(pi.comp[a], x)) e.pi_nonzero = true;
    const bool must_vanish = e.rho_nonzero || e.character_nonzero;
    e.ok = !(must_vanish && e.pi_nonzero);
    if (!e.ok && !rep.witness) rep.witness = x;
    rep.valid = rep.valid && e.ok;
    rep.points.push_back(std::move(e));
  }
  return rep;
}

BoundedH1Report h1_trivial_coeffs_bounded(const AlgebroidPresentation* p, int degree_bound) {
  const int n = p->rank();
  const int m = p->base_dim();
  const int d = degree_bound;
  BoundedH1Report rep;
  rep.degree_bound = d;
  if (n == 0) return rep;

  // Closed cochains: kernel of the pairwise residuals over the (frame,
  // monomial) coordinates of scalar-valued cochains with degree <= d.
  const auto monos_d = monomials_up_to(m, d);
  auto residuals_of = [&](const std::vector<Poly>& chi) {
    std::vector<Multivector> out;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Poly r = p->anchor_apply(i, chi[size_t(j)]) - p->anchor_apply(j, chi[size_t(i)]);
        const auto blk = p->frame_bracket(i, j);
        for (int t = 0; t < n; ++t) r -= blk[size_t(t)] * chi[size_t(t)];
        out.push_back(Multivector::scalar(p, r));
      }
    return out;
  };
  std::vector<std::vector<Multivector>> cols;
  for (int i = 0; i < n; ++i)
    for (const auto& mu : monos_d) {
      std::vector<Poly> chi(size_t(n), p->zero_poly());
      chi[size_t(i)] = Poly::monomial(m, mu, Rational(1));
      cols.push_back(residuals_of(chi));
    }
  const auto z = MultivectorSystem(std::move(cols)).kernel();
  rep.dim_closed = int(z.size());

  // Differentials of functions with degree <= d+1, written over a window wide
  // enough to hold their coefficients exactly.
  std::vector<std::vector<Poly>> b_rows;
  int window = d;
  for (const auto& mu : monomials_up_to(m, d + 1)) {
    Poly f = Poly::monomial(m, mu, Rational(1));
    std::vector<Poly> row;
    for (int i = 0; i < n; ++i) {
      row.push_back(p->anchor_apply(i, f));
      window = std::max(window, row.back().degree());
    }
    b_rows.push_back(std::move(row));
  }
  const auto monos_w = monomials_up_to(m, window);
  auto flatten = [&](const std::vector<Poly>& row) {
    std::vector<Rational> v;
    v.reserve(size_t(n) * monos_w.size());
    for (int i = 0; i < n; ++i)
      for (const auto& mu : monos_w) v.push_back(row[size_t(i)].coeff(mu));
    return v;
  };

  // Combinations of the differentials whose coordinates of degree > d vanish.
  std::vector<size_t> outside;
  for (size_t c = 0; c < size_t(n) * monos_w.size(); ++c)
    if (monomial_degree(monos_w[c % monos_w.size()]) > unsigned(d)) outside.push_back(c);
  RationalMatrix restr(int(outside.size()), int(b_rows.size()));
  std::vector<std::vector<Rational>> b_flat;
  for (const auto& row : b_rows) b_flat.push_back(flatten(row));
  for (size_t o = 0; o < outside.size(); ++o)
    for (size_t r = 0; r < b_flat.size(); ++r) restr.at(int(o), int(r)) = b_flat[r][outside[o]];
  const auto lambdas = nullspace(restr);

  // Both spaces over the degree <= d coordinates, frame-major.
  const size_t per_frame = monos_d.size();
  auto to_window_d = [&](const std::vector<Rational>& wide) {
    std::vector<Rational> v;
    v.reserve(size_t(n) * per_frame);
    for (int i = 0; i < n; ++i)
      for (size_t t = 0; t < per_frame; ++t) v.push_back(wide[size_t(i) * monos_w.size() + t]);
    return v;
  };
  std::vector<std::vector<Rational>> b_in;
  for (const auto& lam : lambdas) {
    std::vector<Rational> wide(size_t(n) * monos_w.size(), Rational(0));
    for (size_t r = 0; r < b_flat.size(); ++r) {
      if (lam[r].is_zero()) continue;
      for (size_t c = 0; c < wide.size(); ++c) wide[c] += lam[r] * b_flat[r][c];
    }
    b_in.push_back(to_window_d(wide));
  }
  RationalMatrix bmat(int(b_in.size()), int(size_t(n) * per_frame));
  for (size_t r = 0; r < b_in.size(); ++r)
    for (size_t c = 0; c < b_in[r].size(); ++c) bmat.at(int(r), int(c)) = b_in[r][c];
  rep.dim_exact_in_window = rank(bmat);
  rep.dim = quotient_dimension(z, b_in);
  return rep;
}

}  // namespace lag
