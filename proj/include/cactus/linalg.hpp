// Exact linear algebra over a field: sparse matrix helpers and an incremental
// echelon basis used for ranks, kernels, image membership and homology.
#pragma once

#include "cactus/field.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace cactus {

using Index = Eigen::Index;

template <ExactScalar S>
using SparseMatrix = Eigen::SparseMatrix<S>;

template <ExactScalar S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Sorted (index, value) pairs with no stored zeros.
template <ExactScalar S>
using SparseVec = std::vector<std::pair<Index, S>>;

template <ExactScalar S>
SparseMatrix<S> identity(Index n) {
  SparseMatrix<S> m(n, n);
  m.reserve(Eigen::VectorXi::Constant(n, 1));
  for (Index i = 0; i < n; ++i) m.insert(i, i) = S(1);
  m.makeCompressed();
  return m;
}

template <ExactScalar S>
SparseMatrix<S> zero_matrix(Index rows, Index cols) {
  return SparseMatrix<S>(rows, cols);
}

/// Exact zero test; explicitly stored zeros produced by cancellation count as zero.
template <ExactScalar S>
bool is_zero(const SparseMatrix<S>& m) {
  for (Index k = 0; k < m.outerSize(); ++k)
    for (typename SparseMatrix<S>::InnerIterator it(m, k); it; ++it)
      if (!is_zero(it.value())) return false;
  return true;
}

template <ExactScalar S>
bool equal(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  SparseMatrix<S> diff = a - b;
  return is_zero(diff);
}

template <ExactScalar S>
SparseMatrix<S> matrix_power(const SparseMatrix<S>& m, int k) {
  SparseMatrix<S> acc = identity<S>(m.rows());
  for (int i = 0; i < k; ++i) acc = SparseMatrix<S>(m * acc);
  return acc;
}

/// Drops explicitly stored zeros.
template <ExactScalar S>
SparseMatrix<S> compressed(const SparseMatrix<S>& m) {
  std::vector<Eigen::Triplet<S>> t;
  for (Index k = 0; k < m.outerSize(); ++k)
    for (typename SparseMatrix<S>::InnerIterator it(m, k); it; ++it)
      if (!is_zero(it.value())) t.emplace_back(it.row(), it.col(), it.value());
  SparseMatrix<S> r(m.rows(), m.cols());
  r.setFromTriplets(t.begin(), t.end());
  return r;
}

template <ExactScalar S>
SparseVec<S> column(const SparseMatrix<S>& m, Index j) {
  SparseVec<S> v;
  for (typename SparseMatrix<S>::InnerIterator it(m, j); it; ++it)
    if (!is_zero(it.value())) v.emplace_back(it.row(), it.value());
  return v;
}

template <ExactScalar S>
SparseVec<S> to_sparse(const Vector<S>& v) {
  SparseVec<S> r;
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) r.emplace_back(i, v[i]);
  return r;
}

template <ExactScalar S>
Vector<S> to_dense(const SparseVec<S>& v, Index n) {
  Vector<S> r = Vector<S>::Zero(n);
  for (const auto& [i, x] : v) r[i] = x;
  return r;
}

template <ExactScalar S>
SparseMatrix<S> from_columns(Index rows, const std::vector<SparseVec<S>>& cols) {
  std::vector<Eigen::Triplet<S>> t;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, x] : cols[j]) t.emplace_back(i, static_cast<Index>(j), x);
  SparseMatrix<S> m(rows, static_cast<Index>(cols.size()));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

/// Incrementally built basis of a subspace of S^dim in semi-echelon form:
/// every stored vector has a distinct leading index with coefficient 1.
///
/// With tracking enabled each stored vector remembers which combination of
/// the inserted vectors produced it, which is how kernels are extracted.
template <ExactScalar S>
class Echelon {
 public:
  explicit Echelon(Index dim, bool track = false) : dim_(dim), track_(track), pivot_of_(dim, -1) {}

  Index dim() const { return dim_; }
  Index rank() const { return static_cast<Index>(rows_.size()); }

  /// Returns true when v was independent of the stored span.
  bool insert(const SparseVec<S>& v) { return insert_impl(v, {}).has_value() == false; }

  /// Inserts v (the `label`-th input vector). When v is dependent, returns the
  /// relation expressing it in terms of earlier inputs (a kernel vector).
  std::optional<SparseVec<S>> insert_tracked(const SparseVec<S>& v, Index label) {
    return insert_impl(v, SparseVec<S>{{label, S(1)}});
  }

  SparseVec<S> reduce(const SparseVec<S>& v) const {
    std::map<Index, S> work(v.begin(), v.end());
    std::map<Index, S> none;
    eliminate(work, none);
    return SparseVec<S>(work.begin(), work.end());
  }

  bool contains(const SparseVec<S>& v) const { return reduce(v).empty(); }

 private:
  struct Row {
    SparseVec<S> entries;  // leading entry is 1
    SparseVec<S> combo;
  };

  void eliminate(std::map<Index, S>& work, std::map<Index, S>& combo) const {
    auto it = work.begin();
    while (it != work.end()) {
      const Index lead = it->first;
      const int r = pivot_of_[lead];
      if (r < 0 || is_zero(it->second)) {
        if (is_zero(it->second)) {
          it = work.erase(it);
        } else {
          ++it;
        }
        continue;
      }
      const S coef = it->second;
      const Row& row = rows_[r];
      for (const auto& [i, x] : row.entries) {
        auto [pos, fresh] = work.try_emplace(i, S(0));
        pos->second -= coef * x;
      }
      if (track_) {
        for (const auto& [i, x] : row.combo) {
          auto [pos, fresh] = combo.try_emplace(i, S(0));
          pos->second -= coef * x;
          if (is_zero(pos->second)) combo.erase(pos);
        }
      }
      it = work.find(lead);
      it = work.erase(it);
    }
  }

  std::optional<SparseVec<S>> insert_impl(const SparseVec<S>& v, SparseVec<S> label) {
    std::map<Index, S> work(v.begin(), v.end());
    std::map<Index, S> combo(label.begin(), label.end());
    eliminate(work, combo);
    if (work.empty()) {
      if (!track_) return SparseVec<S>{};
      return SparseVec<S>(combo.begin(), combo.end());
    }
    const S inv = S(1) / work.begin()->second;
    Row row;
    row.entries.reserve(work.size());
    for (auto& [i, x] : work) row.entries.emplace_back(i, x * inv);
    if (track_)
      for (auto& [i, x] : combo) row.combo.emplace_back(i, x * inv);
    pivot_of_[row.entries.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
    return std::nullopt;
  }

  Index dim_;
  bool track_;
  std::vector<int> pivot_of_;
  std::vector<Row> rows_;
};

/// Echelon basis of the column space of m. Sparse columns go in first.
template <ExactScalar S>
Echelon<S> column_space(const SparseMatrix<S>& m) {
  std::vector<Index> order(static_cast<std::size_t>(m.cols()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return m.col(a).nonZeros() < m.col(b).nonZeros();
  });
  Echelon<S> e(m.rows());
  for (Index j : order) e.insert(column(m, j));
  return e;
}

template <ExactScalar S>
Index rank(const SparseMatrix<S>& m) {
  return column_space(m).rank();
}

/// Rank of the block matrix [a | b].
template <ExactScalar S>
Index rank_of_concat(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  Echelon<S> e = column_space(a);
  for (Index j = 0; j < b.cols(); ++j) e.insert(column(b, j));
  return e.rank();
}

/// Kernel basis of m, ordered by the column that first became dependent.
template <ExactScalar S>
std::vector<SparseVec<S>> kernel(const SparseMatrix<S>& m) {
  Echelon<S> e(m.rows(), true);
  std::vector<SparseVec<S>> basis;
  for (Index j = 0; j < m.cols(); ++j)
    if (auto rel = e.insert_tracked(column(m, j), j)) basis.push_back(std::move(*rel));
  return basis;
}

/// Dense matrix-vector product for a sparse operator.
template <ExactScalar S>
Vector<S> apply(const SparseMatrix<S>& m, const Vector<S>& v) {
  Vector<S> r = Vector<S>::Zero(m.rows());
  for (Index k = 0; k < m.outerSize(); ++k) {
    if (is_zero(v[k])) continue;
    for (typename SparseMatrix<S>::InnerIterator it(m, k); it; ++it) r[it.row()] += it.value() * v[k];
  }
  return r;
}

template <ExactScalar S>
bool is_zero(const Vector<S>& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) return false;
  return true;
}

/// Kronecker product a (x) b with the row-major multi-index convention
/// (index of a is the more significant digit).
template <ExactScalar S>
SparseMatrix<S> kron(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  std::vector<Eigen::Triplet<S>> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Index ka = 0; ka < a.outerSize(); ++ka)
    for (typename SparseMatrix<S>::InnerIterator ia(a, ka); ia; ++ia)
      for (Index kb = 0; kb < b.outerSize(); ++kb)
        for (typename SparseMatrix<S>::InnerIterator ib(b, kb); ib; ++ib)
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
  SparseMatrix<S> m(a.rows() * b.rows(), a.cols() * b.cols());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace cactus
