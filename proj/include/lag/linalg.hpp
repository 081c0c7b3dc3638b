#pragma once

#include <optional>
#include <vector>

#include "lag/error.hpp"
#include "lag/rational.hpp"

namespace lag {

// Dense matrix over an exact scalar. S needs +,-,*,/, is_zero(), default == 0.
// Used with Rational everywhere and with DualRational in the jet-group module.
template <class S>
class MatrixT {
 public:
  MatrixT() : rows_(0), cols_(0) {}
  MatrixT(int rows, int cols) : rows_(rows), cols_(cols), d_(size_t(rows) * cols) {}

  static MatrixT identity(int n) {
    MatrixT m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = S(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& at(int i, int j) { return d_[size_t(i) * cols_ + j]; }
  const S& at(int i, int j) const { return d_[size_t(i) * cols_ + j]; }

  MatrixT operator-() const {
    MatrixT r(rows_, cols_);
    for (size_t k = 0; k < d_.size(); ++k) r.d_[k] = -d_[k];
    return r;
  }
  friend MatrixT operator+(const MatrixT& a, const MatrixT& b) {
    a.check_same_shape(b);
    MatrixT r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.d_.size(); ++k) r.d_[k] = a.d_[k] + b.d_[k];
    return r;
  }
  friend MatrixT operator-(const MatrixT& a, const MatrixT& b) {
    a.check_same_shape(b);
    MatrixT r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.d_.size(); ++k) r.d_[k] = a.d_[k] - b.d_[k];
    return r;
  }
  friend MatrixT operator*(const MatrixT& a, const MatrixT& b) {
    if (a.cols_ != b.rows_) fail(Errc::size_mismatch, "matrix product shape");
    MatrixT r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return r;
  }
  friend bool operator==(const MatrixT& a, const MatrixT& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
  }

  MatrixT transpose() const {
    MatrixT r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  bool is_zero() const {
    for (const auto& v : d_)
      if (!v.is_zero()) return false;
    return true;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    if (int(v.size()) != cols_) fail(Errc::size_mismatch, "matrix apply shape");
    std::vector<S> r(rows_, S(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
  }

 private:
  void check_same_shape(const MatrixT& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::size_mismatch, "matrix shape");
  }
  int rows_, cols_;
  std::vector<S> d_;
};

using RationalMatrix = MatrixT<Rational>;

// Exact Gauss-Jordan over a scalar with unit-testable pivots. Pivot selection is
// deterministic: first row (top to bottom) whose entry in the current column is a
// unit. `is_unit` is the invertibility predicate (!= 0 for Rational; nonzero real
// part for dual numbers).
template <class S, class IsUnit>
std::optional<MatrixT<S>> inverse_with(const MatrixT<S>& m, IsUnit is_unit) {
  if (m.rows() != m.cols()) fail(Errc::size_mismatch, "inverse of non-square matrix");
  int n = m.rows();
  MatrixT<S> a = m, inv = MatrixT<S>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (is_unit(a.at(r, col))) { piv = r; break; }
    if (piv < 0) return std::nullopt;
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    S p = a.at(col, col);
    for (int j = 0; j < n; ++j) {
      a.at(col, j) = a.at(col, j) / p;
      inv.at(col, j) = inv.at(col, j) / p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a.at(r, col).is_zero()) continue;
      S f = a.at(r, col);
      for (int j = 0; j < n; ++j) {
        a.at(r, j) -= f * a.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

// Reduced row echelon form in place; returns the pivot column of each pivot row.
std::vector<int> rref(RationalMatrix& m);
int rank(const RationalMatrix& m);
Rational det(const RationalMatrix& m);
RationalMatrix inverse(const RationalMatrix& m);  // throws Errc::singular

// First solution of A x = b: reduced echelon parametrization with all free
// variables set to zero. Empty optional when the system is inconsistent.
std::optional<std::vector<Rational>> solve_linear(const RationalMatrix& a,
                                                  const std::vector<Rational>& b);

// Deterministic kernel basis: one vector per free column, in column order.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& a);

// dim span(z_rows)/span(b_rows); throws Errc::b_not_subspace when span(B) is not
// contained in span(Z). Rows are spanning sets, not required independent.
int quotient_dimension(const std::vector<std::vector<Rational>>& z_rows,
                       const std::vector<std::vector<Rational>>& b_rows);

}  // namespace lag
