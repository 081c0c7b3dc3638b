#include "lag/jet.hpp"

#include <map>
#include <string>

#include "lag/error.hpp"
#include "lag/linsolve.hpp"

namespace lag {

namespace {

// Shared adjoint kernel; u is a jet frame index over a rank-n base.
Multivector jet_ad(const AlgebroidPresentation* base, int u, const Multivector& w) {
  const int n = base->rank();
  if (u < n) return schouten(Multivector::frame(base, u), w);
  const int a = (u - n) / n;
  const int i = (u - n) % n;
  Multivector br =
      schouten(w, Multivector::scalar(base, Poly::variable(base->base_dim(), a)));
  if (br.is_zero()) return Multivector(base, w.degree());
  return -wedge(br, Multivector::frame(base, i));
}

void check_h_shape(const IsotropyElement& H) {
  if (!H.host) fail(Errc::bad_input, "isotropy element without a host");
  if (int(H.entries.size()) != H.host->base_dim())
    fail(Errc::size_mismatch, "isotropy element row count");
  for (const auto& row : H.entries)
    if (int(row.size()) != H.host->rank())
      fail(Errc::size_mismatch, "isotropy element column count");
}

void check_pair_shape(const CharPair& cp) {
  if (!cp.host) fail(Errc::bad_input, "characteristic pair without a host");
  if (cp.k < 1 || cp.k > cp.host->top())
    fail(Errc::bad_input, "characteristic pair degree out of range");
  if (int(cp.chi_j.size()) != cp.host->rank())
    fail(Errc::size_mismatch, "jet-frame value count");
  if (cp.pi.host != cp.host) fail(Errc::host_mismatch, "tensor host");
  if (cp.pi.k != cp.k) fail(Errc::degree_mismatch, "tensor degree");
  for (const auto& v : cp.chi_j) {
    v.check_host(cp.host);
    if (!v.is_zero() && v.degree() != cp.k) fail(Errc::degree_mismatch, "jet-frame value");
  }
  if (!cp.explicit_f.empty()) {
    if (int(cp.explicit_f.size()) != cp.host->base_dim())
      fail(Errc::size_mismatch, "explicit F-value row count");
    for (const auto& row : cp.explicit_f)
      if (int(row.size()) != cp.host->rank())
        fail(Errc::size_mismatch, "explicit F-value column count");
  }
}

}  // namespace

std::pair<int, int> JetPresentation::f_split(int u) const {
  const int n = base->rank();
  if (u < n || u >= n + base->base_dim() * n) fail(Errc::bad_index, "not an F index");
  return {(u - n) / n, (u - n) % n};
}

JetPresentation build_jet(const AlgebroidPresentation* p) {
  if (!p) fail(Errc::bad_input, "prolongation of a null presentation");
  if (!validate_presentation(*p).ok)
    fail(Errc::bad_input, "prolongation of an invalid presentation");
  const int n = p->rank();
  const int m = p->base_dim();

  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("J" + std::to_string(i + 1));
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i)
      names.push_back("F" + std::to_string(a + 1) + "_" + std::to_string(i + 1));

  JetPresentation J;
  J.base = p;
  J.jet = std::make_unique<AlgebroidPresentation>(p->coords(), names);
  auto fidx = [n](int a, int i) { return n + a * n + i; };

  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a) J.jet->set_anchor(i, a, p->anchor(i, a));

  const int N = n + m * n;
  for (int U = 0; U < N; ++U)
    for (int V = U + 1; V < N; ++V) {
      std::map<int, Poly> coeffs;
      auto add = [&](int W, const Poly& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = coeffs.emplace(W, c);
        if (!fresh) it->second += c;
      };
      if (V < n) {  // jet lift of [e_i, e_j]
        const auto blk = p->frame_bracket(U, V);
        for (int k = 0; k < n; ++k) {
          add(k, blk[size_t(k)]);
          for (int a = 0; a < m; ++a) add(fidx(a, k), blk[size_t(k)].derive(a));
        }
      } else if (U < n) {  // mixed: derivative of the anchor row plus bracket lift
        const int b = (V - n) / n, j = (V - n) % n;
        for (int c = 0; c < m; ++c) add(fidx(c, j), p->anchor(U, b).derive(c));
        const auto blk = p->frame_bracket(U, j);
        for (int k = 0; k < n; ++k) add(fidx(b, k), blk[size_t(k)]);
      } else {  // fiberwise Hom(TM, A) bracket
        const int a = (U - n) / n, i = (U - n) % n;
        const int b = (V - n) / n, j = (V - n) % n;
        add(fidx(a, j), p->anchor(i, b));
        add(fidx(b, i), -p->anchor(j, a));
      }
      for (const auto& [W, c] : coeffs)
        if (!c.is_zero()) J.jet->set_bracket(U, V, W, c);
    }

  const auto rep = validate_presentation(*J.jet);
  if (!rep.ok) fail(Errc::internal, "jet prolongation fails the structure equations");
  return J;
}

Multivector jet_adjoint(const JetPresentation& J, int u, const Multivector& w) {
  w.check_host(J.base);
  if (u < 0 || u >= J.jet->rank()) fail(Errc::bad_index, "jet frame index");
  return jet_ad(J.base, u, w);
}

CoefficientModule jet_adjoint_module(const JetPresentation& J, int k) {
  CoefficientModule mod = CoefficientModule::adjoint_wedge(J.base, k);
  const AlgebroidPresentation* base = J.base;
  mod.set_nabla_override(J.jet.get(), [base](int u, const Multivector& w) {
    return jet_ad(base, u, w);
  });
  return mod;
}

IsotropyElement IsotropyElement::zero(const AlgebroidPresentation* host) {
  IsotropyElement H;
  H.host = host;
  H.entries.assign(size_t(host->base_dim()),
                   std::vector<Poly>(size_t(host->rank()), host->zero_poly()));
  return H;
}

IsotropyElement IsotropyElement::rank_one(const AlgebroidPresentation* host, int a, int i,
                                          const Poly& c) {
  IsotropyElement H = zero(host);
  H.entries.at(size_t(a)).at(size_t(i)) = c;
  return H;
}

IsotropyElement isotropy_bracket(const IsotropyElement& lam, const IsotropyElement& mu) {
  check_h_shape(lam);
  check_h_shape(mu);
  if (lam.host != mu.host) fail(Errc::host_mismatch, "isotropy bracket");
  const AlgebroidPresentation* p = lam.host;
  IsotropyElement out = IsotropyElement::zero(p);
  for (int a = 0; a < p->base_dim(); ++a)
    for (int j = 0; j < p->rank(); ++j) {
      Poly s = p->zero_poly();
      for (int i = 0; i < p->rank(); ++i)
        for (int b = 0; b < p->base_dim(); ++b)
          s += (lam.entries[a][i] * mu.entries[b][j] -
                mu.entries[a][i] * lam.entries[b][j]) *
               p->anchor(i, b);
      out.entries[size_t(a)][size_t(j)] = s;
    }
  return out;
}

Multivector isotropy_adjoint(const IsotropyElement& H, const Multivector& w) {
  check_h_shape(H);
  w.check_host(H.host);
  const AlgebroidPresentation* p = H.host;
  Multivector out(p, w.degree());
  for (int a = 0; a < p->base_dim(); ++a) {
    Multivector br = schouten(w, Multivector::scalar(p, Poly::variable(p->base_dim(), a)));
    if (br.is_zero()) continue;
    for (int i = 0; i < p->rank(); ++i) {
      if (H.entries[a][i].is_zero()) continue;
      out -= wedge(br, Multivector::frame(p, i)).scaled(H.entries[a][i]);
    }
  }
  return out;
}

Multivector mu_pi(const RhoTensor& pi, const IsotropyElement& H) {
  check_h_shape(H);
  if (pi.host != H.host) fail(Errc::host_mismatch, "mu_pi");
  const AlgebroidPresentation* p = pi.host;
  Multivector out(p, pi.k);
  for (int a = 0; a < p->base_dim(); ++a) {
    Multivector ha(p, 1);
    for (int i = 0; i < p->rank(); ++i) ha.add_word({i}, H.entries[a][i]);
    if (!ha.is_zero()) out += wedge(ha, pi.comp[size_t(a)]);
  }
  return out;
}

Multivector CharPair::f_value(int a, int i) const {
  if (!explicit_f.empty()) return explicit_f.at(size_t(a)).at(size_t(i));
  Multivector v = wedge(pi.comp.at(size_t(a)), Multivector::frame(host, i));
  return (k - 1) % 2 == 0 ? v : -v;
}

CharPair exact_char_pair(const Multivector& tau) {
  const AlgebroidPresentation* p = tau.host();
  if (!p) fail(Errc::bad_input, "generator without a host");
  if (tau.degree() < 1 || tau.degree() > p->top())
    fail(Errc::degree_mismatch, "generator degree out of range");
  CharPair cp;
  cp.host = p;
  cp.k = tau.degree();
  for (int i = 0; i < p->rank(); ++i)
    cp.chi_j.push_back(-schouten(Multivector::frame(p, i), tau));
  cp.pi = d_rho_tau(tau);
  return cp;
}

CharPair char_pair_from_differential(const KDifferential& delta) {
  if (delta.k < 1 || delta.k > delta.host->top())
    fail(Errc::bad_input, "characteristic pairs cover degrees 1..top");
  if (!validate_k_differential(delta).ok)
    fail(Errc::validation, "differential fails its compatibility equations");
  CharPair cp;
  cp.host = delta.host;
  cp.k = delta.k;
  cp.chi_j = delta.delta0;
  cp.pi = delta.has_symbol() ? tensor_from_differential(delta)
                             : RhoTensor::zero(delta.host, delta.k);
  return cp;
}

KDifferential differential_from_char_pair(const CharPair& cp) {
  if (!char_pair_cocycle_check(cp).ok)
    fail(Errc::cocycle_fail, "pair is not a jet cocycle with matching tensor");
  KDifferential d = KDifferential::zero(cp.host, cp.k);
  d.delta0 = cp.chi_j;
  for (size_t a = 0; a < d.delta1.size(); ++a)
    d.delta1[a] = (cp.k - 1) % 2 == 0 ? cp.pi.comp[a] : -cp.pi.comp[a];
  return d;
}

CharPairReport char_pair_cocycle_check(const CharPair& cp) {
  check_pair_shape(cp);
  const AlgebroidPresentation* p = cp.host;
  const int n = p->rank();
  const int m = p->base_dim();
  CharPairReport rep;
  rep.pi_compatible = rho_compat_check(cp.pi).ok;

  JetPresentation J = build_jet(p);
  OneCochain chi{jet_adjoint_module(J, cp.k), {}};
  for (int i = 0; i < n; ++i) chi.values.push_back(cp.chi_j[size_t(i)]);
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i) chi.values.push_back(cp.f_value(a, i));
  rep.cocycle = ce_coboundary_residual(chi);

  // The F values of a jet cocycle determine the tensor (joint wedge with all
  // frame legs is injective below top degree); recover it and compare.
  int d = 0;
  for (int a = 0; a < m; ++a) {
    d = std::max(d, cp.pi.comp[size_t(a)].coeff_degree());
    for (int i = 0; i < n; ++i) d = std::max(d, cp.f_value(a, i).coeff_degree());
  }
  const auto basis = multivector_basis(p, cp.k - 1, d);
  std::vector<std::vector<Multivector>> cols;
  for (const auto& b : basis) {
    std::vector<Multivector> col;
    for (int i = 0; i < n; ++i) {
      Multivector v = wedge(b, Multivector::frame(p, i));
      col.push_back((cp.k - 1) % 2 == 0 ? v : -v);
    }
    cols.push_back(std::move(col));
  }
  const MultivectorSystem sys(std::move(cols));
  for (int a = 0; a < m && rep.pi_consistent; ++a) {
    std::vector<Multivector> target;
    for (int i = 0; i < n; ++i) target.push_back(cp.f_value(a, i));
    auto c = sys.solve(target);
    if (!c)
      rep.pi_consistent = false;
    else if ((basis.empty() ? Multivector(p, cp.k - 1) : combine(basis, *c)) !=
             cp.pi.comp[size_t(a)])
      rep.pi_consistent = false;
  }

  rep.ok = rep.pi_compatible && rep.cocycle.ok && rep.pi_consistent;
  return rep;
}

bool pullback_membership(const CharPair& cp) {
  check_pair_shape(cp);
  const AlgebroidPresentation* p = cp.host;
  for (int a = 0; a < p->base_dim(); ++a)
    for (int i = 0; i < p->rank(); ++i)
      if (cp.f_value(a, i) != mu_pi(cp.pi, IsotropyElement::rank_one(p, a, i, p->one_poly())))
        return false;
  return true;
}

}  // namespace lag
