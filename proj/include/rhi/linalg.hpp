#pragma once

/**
 * @file linalg.hpp
 * @brief Exact dense linear algebra over ℚ and 𝔽ₚ on top of Eigen storage.
 *
 * Eigen's decompositions pivot on magnitude and compare against epsilons,
 * which is meaningless for exact fields; elimination here is written out
 * directly and only uses Eigen for storage and expression arithmetic.
 */

#include "rhi/scalar.hpp"

#include <Eigen/Core>

#include <cassert>
#include <span>
#include <vector>

namespace rhi {

template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <ExactScalar S>
bool is_zero(const Vector<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) return false;
  return true;
}

template <ExactScalar S>
bool is_zero(const Matrix<S>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <ExactScalar S>
bool equal(const Vector<S>& a, const Vector<S>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

template <ExactScalar S>
bool equal(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

/// Column indices of the nonzero entries of v.
template <ExactScalar S>
std::vector<int> support(const Vector<S>& v) {
  std::vector<int> s;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) s.push_back(static_cast<int>(i));
  return s;
}

/**
 * Incrementally built semi-echelon basis of a subspace of S^dim.
 *
 * Each stored row has pivot coefficient 1 and vanishes on the pivots of all
 * rows inserted before it, so reducing a vector through the rows in
 * insertion order clears every pivot column. The remainder is the canonical
 * representative of v modulo the span.
 */
template <ExactScalar S>
class Echelon {
 public:
  explicit Echelon(int dim = 0) : dim_(dim), pivot_row_(static_cast<std::size_t>(dim), -1) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool full() const { return rank() == dim_; }
  bool empty() const { return rows_.empty(); }

  const Vector<S>& row(int i) const { return rows_[static_cast<std::size_t>(i)].coeffs; }
  int pivot(int i) const { return rows_[static_cast<std::size_t>(i)].pivot; }
  /// Row index whose pivot is column c, or -1.
  int pivot_row(int c) const { return pivot_row_[static_cast<std::size_t>(c)]; }

  void reduce(Vector<S>& v) const {
    assert(v.size() == dim_);
    for (const Row& r : rows_) {
      if (is_zero(v[r.pivot])) continue;
      const S c = v[r.pivot];
      for (int idx : r.support) v[idx] -= c * r.coeffs[idx];
    }
  }

  bool contains(const Vector<S>& v) const {
    if (full()) return true;
    Vector<S> w = v;
    reduce(w);
    return is_zero(w);
  }

  /// Adds v to the span; returns false (and changes nothing) if v already lies in it.
  bool insert(const Vector<S>& v) {
    if (full()) return false;
    Vector<S> w = v;
    reduce(w);
    return insert_reduced(std::move(w));
  }

  /// Inserts a vector that has already been passed through reduce().
  bool insert_reduced(Vector<S> w) {
    int p = -1;
    for (Eigen::Index i = 0; i < w.size(); ++i)
      if (!is_zero(w[i])) {
        p = static_cast<int>(i);
        break;
      }
    if (p < 0) return false;
    const S inv = S(1) / w[p];
    for (Eigen::Index i = p; i < w.size(); ++i)
      if (!is_zero(w[i])) w[i] *= inv;
    Row r{std::move(w), {}, p};
    r.support = support<S>(r.coeffs);
    pivot_row_[static_cast<std::size_t>(p)] = rank();
    rows_.push_back(std::move(r));
    return true;
  }

  /// Stored rows stacked as the rows of a matrix.
  Matrix<S> basis_rows() const {
    Matrix<S> m = Matrix<S>::Zero(rank(), dim_);
    for (int i = 0; i < rank(); ++i) m.row(i) = row(i).transpose();
    return m;
  }

 private:
  struct Row {
    Vector<S> coeffs;
    std::vector<int> support;
    int pivot;
  };

  int dim_;
  std::vector<Row> rows_;
  std::vector<int> pivot_row_;
};

template <ExactScalar S>
struct RrefResult {
  Matrix<S> reduced;        // rows beyond pivots.size() are zero
  std::vector<int> pivots;  // pivot column of each nonzero row
};

/// Reduced row-echelon form; pivots are the first nonzero column of each row.
template <ExactScalar S>
RrefResult<S> rref(Matrix<S> m) {
  RrefResult<S> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index sel = -1;
    for (Eigen::Index i = row; i < m.rows(); ++i)
      if (!is_zero(m(i, col))) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row) m.row(sel).swap(m.row(row));
    const S inv = S(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j)
      if (!is_zero(m(row, j))) m(row, j) *= inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const S c = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(i, j) -= c * m(row, j);
    }
    out.pivots.push_back(static_cast<int>(col));
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <ExactScalar S>
int rank(const Matrix<S>& m) {
  return static_cast<int>(rref<S>(m).pivots.size());
}

/// Basis of {x : m x = 0}, one vector per free column, as the columns of the result.
template <ExactScalar S>
Matrix<S> nullspace(const Matrix<S>& m) {
  const auto r = rref<S>(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<S> basis = Matrix<S>::Zero(m.cols(), m.cols() - static_cast<Eigen::Index>(r.pivots.size()));
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = S(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
      const S& c = r.reduced(static_cast<Eigen::Index>(i), free);
      if (!is_zero(c)) basis(r.pivots[i], k) = -c;
    }
    ++k;
  }
  return basis;
}

/// Basis of span(rows of a) ∩ span(rows of b); inputs need not be independent.
template <ExactScalar S>
Echelon<S> intersect(const Echelon<S>& a, const Echelon<S>& b) {
  assert(a.dim() == b.dim());
  Echelon<S> out(a.dim());
  if (a.empty() || b.empty()) return out;
  // Solve sum_i x_i a_i = sum_j y_j b_j.
  Matrix<S> sys(a.dim(), a.rank() + b.rank());
  for (int i = 0; i < a.rank(); ++i) sys.col(i) = a.row(i);
  for (int j = 0; j < b.rank(); ++j) sys.col(a.rank() + j) = -b.row(j);
  const Matrix<S> kern = nullspace<S>(sys);
  for (Eigen::Index k = 0; k < kern.cols(); ++k) {
    Vector<S> v = Vector<S>::Zero(a.dim());
    for (int i = 0; i < a.rank(); ++i)
      if (!is_zero(kern(i, k))) v += kern(i, k) * a.row(i);
    out.insert(v);
  }
  return out;
}

}  // namespace rhi
