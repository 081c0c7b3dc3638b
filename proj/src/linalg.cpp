#include "lag/linalg.hpp"

namespace lag {

std::vector<int> rref(RationalMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
    Rational p = m.at(r, c);
    for (int j = c; j < m.cols(); ++j) m.at(r, j) /= p;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Rational f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(const RationalMatrix& m) {
  RationalMatrix a = m;
  return int(rref(a).size());
}

Rational det(const RationalMatrix& m) {
  if (m.rows() != m.cols()) fail(Errc::size_mismatch, "determinant of non-square matrix");
  RationalMatrix a = m;
  int n = a.rows();
  Rational d(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!a.at(i, c).is_zero()) { piv = i; break; }
    if (piv < 0) return Rational(0);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(c, j));
      d = -d;
    }
    d *= a.at(c, c);
    Rational inv_p = Rational(1) / a.at(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (a.at(i, c).is_zero()) continue;
      Rational f = a.at(i, c) * inv_p;
      for (int j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
    }
  }
  return d;
}

RationalMatrix inverse(const RationalMatrix& m) {
  auto inv = inverse_with(m, [](const Rational& v) { return !v.is_zero(); });
  if (!inv) fail(Errc::singular, "matrix is singular");
  return *inv;
}

std::optional<std::vector<Rational>> solve_linear(const RationalMatrix& a,
                                                  const std::vector<Rational>& b) {
  if (int(b.size()) != a.rows()) fail(Errc::size_mismatch, "rhs length");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  std::vector<int> piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;  // 0 = 1 row
  std::vector<Rational> x(a.cols(), Rational(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(int(r), a.cols());
  return x;
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& a) {
  RationalMatrix m = a;
  std::vector<int> piv = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(a.cols(), Rational(0));
    v[free] = Rational(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m.at(int(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

RationalMatrix rows_to_matrix(const std::vector<std::vector<Rational>>& rows, int cols) {
  RationalMatrix m(int(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (int(rows[i].size()) != cols) fail(Errc::size_mismatch, "row length");
    for (int j = 0; j < cols; ++j) m.at(int(i), j) = rows[i][j];
  }
  return m;
}

}  // namespace

int quotient_dimension(const std::vector<std::vector<Rational>>& z_rows,
                       const std::vector<std::vector<Rational>>& b_rows) {
  if (z_rows.empty() && b_rows.empty()) return 0;
  int cols = int((z_rows.empty() ? b_rows : z_rows).front().size());
  RationalMatrix z = rows_to_matrix(z_rows, cols);
  std::vector<int> zpiv = rref(z);
  // Each B row must reduce to zero against the Z echelon basis.
  for (const auto& row : b_rows) {
    if (int(row.size()) != cols) fail(Errc::size_mismatch, "row length");
    std::vector<Rational> v = row;
    for (size_t r = 0; r < zpiv.size(); ++r) {
      const Rational& f = v[zpiv[r]];
      if (f.is_zero()) continue;
      Rational ff = f;
      for (int j = 0; j < cols; ++j) v[j] -= ff * z.at(int(r), j);
    }
    for (const auto& c : v)
      if (!c.is_zero()) fail(Errc::b_not_subspace, "B is not contained in Z");
  }
  RationalMatrix b = rows_to_matrix(b_rows, cols);
  return int(zpiv.size()) - rank(b);
}

}  // namespace lag
