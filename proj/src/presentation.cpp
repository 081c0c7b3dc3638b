#include "lag/presentation.hpp"

#include "lag/error.hpp"

namespace lag {

AlgebroidPresentation::AlgebroidPresentation(std::vector<std::string> coords,
                                             std::vector<std::string> frame)
    : coords_(std::move(coords)), frame_(std::move(frame)) {
  int m = base_dim(), n = rank();
  anchor_.assign(n, std::vector<Poly>(m, Poly(m)));
  c_.assign(n, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n, Poly(m))));
}

void AlgebroidPresentation::check_frame_index(int i) const {
  if (i < 0 || i >= rank()) fail(Errc::bad_index, "frame index out of range");
}

void AlgebroidPresentation::set_anchor(int i, int a, const Poly& p) {
  check_frame_index(i);
  if (a < 0 || a >= base_dim()) fail(Errc::bad_index, "coordinate index out of range");
  if (p.nvars() != base_dim()) fail(Errc::size_mismatch, "anchor entry variable count");
  anchor_[i][a] = p;
}

void AlgebroidPresentation::set_bracket(int i, int j, int k, const Poly& p) {
  check_frame_index(i);
  check_frame_index(j);
  check_frame_index(k);
  if (i >= j) fail(Errc::bad_index, "bracket table rows require i < j");
  if (p.nvars() != base_dim()) fail(Errc::size_mismatch, "bracket entry variable count");
  c_[i][j][k] = p;
}

const Poly& AlgebroidPresentation::anchor(int i, int a) const {
  check_frame_index(i);
  if (a < 0 || a >= base_dim()) fail(Errc::bad_index, "coordinate index out of range");
  return anchor_[i][a];
}

Poly AlgebroidPresentation::anchor_apply(int i, const Poly& f) const {
  check_frame_index(i);
  Poly r(base_dim());
  for (int a = 0; a < base_dim(); ++a) r += anchor_[i][a] * f.derive(a);
  return r;
}

std::vector<Poly> AlgebroidPresentation::frame_bracket(int i, int j) const {
  check_frame_index(i);
  check_frame_index(j);
  std::vector<Poly> out(rank(), Poly(base_dim()));
  if (i == j) return out;
  if (i < j) return c_[i][j];
  for (int k = 0; k < rank(); ++k) out[k] = -c_[j][i][k];
  return out;
}

namespace {

// [sum_l f_l e_l, e_k] = sum_l ( f_l [e_l, e_k] - (rho(e_k) f_l) e_l ).
std::vector<Poly> bracket_section_frame(const AlgebroidPresentation& p,
                                        const std::vector<Poly>& f, int k) {
  std::vector<Poly> out(p.rank(), Poly(p.base_dim()));
  for (int l = 0; l < p.rank(); ++l) {
    if (f[l].is_zero()) continue;
    std::vector<Poly> blk = p.frame_bracket(l, k);
    for (int t = 0; t < p.rank(); ++t) out[t] += f[l] * blk[t];
    out[l] -= p.anchor_apply(k, f[l]);
  }
  return out;
}

bool all_zero(const std::vector<Poly>& v) {
  for (const auto& q : v)
    if (!q.is_zero()) return false;
  return true;
}

}  // namespace

PresentationReport validate_presentation(const AlgebroidPresentation& p) {
  PresentationReport rep;
  int n = p.rank(), m = p.base_dim();
  // Jacobi: [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::vector<Poly> acc(n, Poly(m));
        const int tri[3][2] = {{i, j}, {j, k}, {k, i}};
        const int third[3] = {k, i, j};
        for (int t = 0; t < 3; ++t) {
          std::vector<Poly> inner = p.frame_bracket(tri[t][0], tri[t][1]);
          std::vector<Poly> outer = bracket_section_frame(p, inner, third[t]);
          for (int s = 0; s < n; ++s) acc[s] += outer[s];
        }
        if (!all_zero(acc)) {
          rep.ok = false;
          rep.jacobi.push_back({i, j, k, std::move(acc)});
        }
      }
  // Anchor morphism: rho([e_i,e_j]) = [rho(e_i), rho(e_j)] as vector fields.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<Poly> lhs(m, Poly(m));
      std::vector<Poly> cij = p.frame_bracket(i, j);
      for (int k = 0; k < n; ++k)
        for (int b = 0; b < m; ++b) lhs[b] += cij[k] * p.anchor(k, b);
      std::vector<Poly> rhs(m, Poly(m));
      for (int b = 0; b < m; ++b) {
        for (int a = 0; a < m; ++a) {
          rhs[b] += p.anchor(i, a) * p.anchor(j, b).derive(a);
          rhs[b] -= p.anchor(j, a) * p.anchor(i, b).derive(a);
        }
      }
      std::vector<Poly> res(m, Poly(m));
      bool nonzero = false;
      for (int b = 0; b < m; ++b) {
        res[b] = lhs[b] - rhs[b];
        nonzero = nonzero || !res[b].is_zero();
      }
      if (nonzero) {
        rep.ok = false;
        rep.anchor.push_back({i, j, std::move(res)});
      }
    }
  return rep;
}

}  // namespace lag
