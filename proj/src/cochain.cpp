#include "lag/cochain.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "lag/error.hpp"
#include "lag/linalg.hpp"

namespace lag {

namespace {

Multivector kernel_row_section(const AlgebroidPresentation* p, int r) {
  const auto& row = p->kernel_frame.at(size_t(r));
  Multivector u(p, 1);
  for (int i = 0; i < p->rank(); ++i) u.add_word({i}, row.at(size_t(i)));
  return u;
}

}  // namespace

CoefficientModule CoefficientModule::trivial_r(const AlgebroidPresentation* host) {
  CoefficientModule m;
  m.kind_ = Kind::trivial_r;
  m.k_ = 0;
  m.cochain_host_ = host;
  m.value_host_ = host;
  return m;
}

CoefficientModule CoefficientModule::adjoint_wedge(const AlgebroidPresentation* host, int k) {
  if (k < 1 || k > host->top()) fail(Errc::bad_input, "adjoint wedge degree out of range");
  CoefficientModule m;
  m.kind_ = Kind::adjoint_wedge;
  m.k_ = k;
  m.cochain_host_ = host;
  m.value_host_ = host;
  return m;
}

CoefficientModule CoefficientModule::kernel_wedge(const AlgebroidPresentation* host, int k) {
  if (k < 1) fail(Errc::bad_input, "kernel wedge degree out of range");
  CoefficientModule m;
  m.kind_ = Kind::kernel_wedge;
  m.k_ = k;
  m.cochain_host_ = host;
  m.value_host_ = host;
  return m;
}

int CoefficientModule::value_degree() const { return kind_ == Kind::trivial_r ? 0 : k_; }

void CoefficientModule::validate() const {
  if (kind_ != Kind::kernel_wedge) return;
  const auto& rows = value_host_->kernel_frame;
  if (rows.empty() && k_ > 0) {
    // An empty declaration is legitimate only when no nonzero constant section
    // is anchor-annihilated, i.e. the kernel really has rank zero.
    const int n = value_host_->rank();
    std::map<std::pair<int, Monomial>, std::vector<Rational>> cond;
    for (int a = 0; a < value_host_->base_dim(); ++a)
      for (int i = 0; i < n; ++i)
        for (const auto& [mono, c] : value_host_->anchor(i, a).terms()) {
          auto& row = cond[{a, mono}];
          row.resize(size_t(n));
          row[size_t(i)] = c;
        }
    RationalMatrix m(int(cond.size()), n);
    int r = 0;
    for (const auto& [key, row] : cond) {
      (void)key;
      for (int i = 0; i < int(row.size()); ++i) m.at(r, i) = row[size_t(i)];
      ++r;
    }
    if (!nullspace(m).empty())
      fail(Errc::bad_input, "kernel wedge module requires a declared kernel frame");
    return;
  }
  for (size_t r = 0; r < rows.size(); ++r) {
    if (int(rows[r].size()) != value_host_->rank())
      fail(Errc::bad_input, "kernel frame row width");
    for (int a = 0; a < value_host_->base_dim(); ++a) {
      Poly comp = value_host_->zero_poly();
      for (int i = 0; i < value_host_->rank(); ++i)
        comp += rows[r][size_t(i)] * value_host_->anchor(i, a);
      if (!comp.is_zero())
        fail(Errc::bad_input,
             "kernel frame row " + std::to_string(r + 1) + " is not anchor-annihilated");
    }
    for (const auto& c : rows[r])
      if (!c.is_zero() && !c.is_constant())
        fail(Errc::bad_input, "kernel frame rows must be constant");
  }
}

Multivector CoefficientModule::nabla(int i, const Multivector& value) const {
  if (nabla_override_) return nabla_override_(i, value);
  if (kind_ == Kind::trivial_r) {
    Multivector out(value_host_, 0);
    for (const auto& [word, f] : value.terms()) {
      (void)word;
      out.add_word({}, value_host_->anchor_apply(i, f));
    }
    return out;
  }
  return schouten(Multivector::frame(value_host_, i), value);
}

std::vector<Multivector> CoefficientModule::fiber_basis() const {
  std::vector<Multivector> out;
  if (kind_ == Kind::trivial_r) {
    Multivector one(value_host_, 0);
    one.add_word({}, value_host_->one_poly());
    out.push_back(one);
    return out;
  }
  if (kind_ == Kind::adjoint_wedge) {
    for (const auto& w : words_of_length(value_host_->rank(), k_))
      out.push_back(Multivector::wedge_basis(value_host_, w));
    return out;
  }
  const int r = int(value_host_->kernel_frame.size());
  for (const auto& w : words_of_length(r, k_)) {
    Multivector v = kernel_row_section(value_host_, w[0]);
    for (size_t s = 1; s < w.size(); ++s) v = wedge(v, kernel_row_section(value_host_, w[s]));
    out.push_back(v);
  }
  return out;
}

std::optional<std::vector<Rational>> CoefficientModule::fiber_coords(
    const Multivector& value) const {
  std::vector<std::vector<Multivector>> cols;
  for (const auto& b : fiber_basis()) cols.push_back({b});
  return MultivectorSystem(std::move(cols)).solve({value});
}

bool CoefficientModule::contains(const Multivector& value) const {
  if (value.is_zero()) return true;
  if (value.degree() != value_degree()) return false;
  if (kind_ != Kind::kernel_wedge) return true;
  int d = 0;
  for (const auto& [word, f] : value.terms()) {
    (void)word;
    d = std::max(d, f.degree());
  }
  std::vector<std::vector<Multivector>> cols;
  for (const auto& b : section_basis(d)) cols.push_back({b});
  return MultivectorSystem(std::move(cols)).solve({value}).has_value();
}

std::vector<Multivector> CoefficientModule::section_basis(int d) const {
  std::vector<Multivector> out;
  const auto monos = monomials_up_to(value_host_->base_dim(), d);
  for (const auto& b : fiber_basis())
    for (const auto& m : monos)
      out.push_back(b.scaled(Poly::monomial(value_host_->base_dim(), m, Rational(1))));
  return out;
}

void CoefficientModule::set_nabla_override(const AlgebroidPresentation* cochain_host,
                                           Nabla nabla) {
  cochain_host_ = cochain_host;
  nabla_override_ = std::move(nabla);
}

OneCochain OneCochain::zero(const CoefficientModule& module) {
  OneCochain chi{module, {}};
  chi.values.assign(size_t(module.cochain_host()->rank()),
                    Multivector(module.value_host(), module.value_degree()));
  return chi;
}

Multivector OneCochain::apply(const std::vector<Poly>& section_coeffs) const {
  Multivector out(module.value_host(), module.value_degree());
  for (size_t i = 0; i < section_coeffs.size(); ++i) out += values.at(i).scaled(section_coeffs[i]);
  return out;
}

CochainResidualReport ce_coboundary_residual(const OneCochain& chi) {
  chi.module.validate();
  const auto* H = chi.module.cochain_host();
  if (int(chi.values.size()) != H->rank()) fail(Errc::size_mismatch, "cochain value count");
  CochainResidualReport report;
  for (int i = 0; i < H->rank(); ++i) {
    for (int j = i + 1; j < H->rank(); ++j) {
      Multivector res = chi.module.nabla(i, chi.values[size_t(j)]);
      res -= chi.module.nabla(j, chi.values[size_t(i)]);
      res -= chi.apply(H->frame_bracket(i, j));
      if (!res.is_zero()) {
        report.ok = false;
        report.entries.push_back({i, j, res});
      }
    }
  }
  return report;
}

OneCochain ce_coboundary(const CoefficientModule& module, const Multivector& nu) {
  OneCochain chi{module, {}};
  for (int i = 0; i < module.cochain_host()->rank(); ++i)
    chi.values.push_back(module.nabla(i, nu));
  return chi;
}

H1Report lie_algebra_h1(const AlgebroidPresentation* p, const CoefficientModule& module) {
  if (p->base_dim() != 0) fail(Errc::not_point_base, "H1 requires a point base");
  if (module.cochain_host() != p) fail(Errc::host_mismatch, "module host");
  module.validate();

  const int n = p->rank();
  const auto fiber = module.fiber_basis();
  const int q = int(fiber.size());
  H1Report report;
  if (n == 0 || q == 0) return report;

  // Z1: kernel of d1 over the (frame, fiber) basis of C1.
  std::vector<OneCochain> c1_basis;
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < q; ++b) {
      OneCochain chi = OneCochain::zero(module);
      chi.values[size_t(i)] = fiber[size_t(b)];
      c1_basis.push_back(std::move(chi));
    }
  std::vector<std::vector<Multivector>> d1_cols;
  for (const auto& chi : c1_basis) {
    std::vector<Multivector> residuals;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Multivector res = module.nabla(i, chi.values[size_t(j)]);
        res -= module.nabla(j, chi.values[size_t(i)]);
        res -= chi.apply(p->frame_bracket(i, j));
        residuals.push_back(std::move(res));
      }
    d1_cols.push_back(std::move(residuals));
  }
  const auto z1 = MultivectorSystem(std::move(d1_cols)).kernel();
  report.dim_z1 = int(z1.size());

  // B1: image of d0; coordinates of each coboundary in the C1 basis.
  auto cochain_coords = [&](const OneCochain& chi) {
    std::vector<Rational> coords;
    coords.reserve(size_t(n) * size_t(q));
    for (int i = 0; i < n; ++i) {
      auto c = module.fiber_coords(chi.values[size_t(i)]);
      if (!c) fail(Errc::bad_input, "cochain value outside the module fiber");
      coords.insert(coords.end(), c->begin(), c->end());
    }
    return coords;
  };
  std::vector<std::vector<Rational>> b_rows;
  for (const auto& b : fiber) b_rows.push_back(cochain_coords(ce_coboundary(module, b)));

  auto rank_of = [](const std::vector<std::vector<Rational>>& rows, int width) {
    if (rows.empty()) return 0;
    RationalMatrix m(int(rows.size()), width);
    for (int r = 0; r < int(rows.size()); ++r)
      for (int c = 0; c < width; ++c) m.at(r, c) = rows[size_t(r)][size_t(c)];
    return rank(m);
  };
  const int width = n * q;
  report.dim_b1 = rank_of(b_rows, width);
  report.dim_h1 = report.dim_z1 - report.dim_b1;

  // Representatives: cocycles extending span(B1) to span(Z1).
  std::vector<std::vector<Rational>> accum = b_rows;
  int accum_rank = report.dim_b1;
  for (const auto& z : z1) {
    accum.push_back(z);
    int r = rank_of(accum, width);
    if (r > accum_rank) {
      accum_rank = r;
      OneCochain rep = OneCochain::zero(module);
      for (int i = 0; i < n; ++i)
        for (int b = 0; b < q; ++b)
          rep.values[size_t(i)] += fiber[size_t(b)].scaled(z[size_t(i) * size_t(q) + size_t(b)]);
      report.representatives.push_back(std::move(rep));
    } else {
      accum.pop_back();
    }
  }
  return report;
}

}  // namespace lag
