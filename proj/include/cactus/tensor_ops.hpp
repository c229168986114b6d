// Linear maps between tensor powers A^{(x) m} in the monomial basis, with
// slot 0 the most significant digit of the flat index.
#pragma once

#include "cactus/frobenius.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace cactus {

inline Index tensor_dim(int d, int arity) {
  Index r = 1;
  for (int i = 0; i < arity; ++i) r *= d;
  return r;
}

/// id^{(x) before} (x) op (x) id^{(x) after}.
template <ExactScalar S>
SparseMatrix<S> slot_op(int d, int before, const SparseMatrix<S>& op, int after) {
  return kron<S>(kron<S>(identity<S>(tensor_dim(d, before)), op), identity<S>(tensor_dim(d, after)));
}

/// Slot permutation: input slot s lands in output slot perm[s].
template <ExactScalar S>
SparseMatrix<S> permute_slots(int d, const std::vector<int>& perm) {
  const int m = static_cast<int>(perm.size());
  const Index size = tensor_dim(d, m);
  std::vector<Index> weight(static_cast<std::size_t>(m));
  for (int s = 0; s < m; ++s) weight[s] = tensor_dim(d, m - 1 - perm[s]);
  std::vector<Eigen::Triplet<S>> t;
  t.reserve(static_cast<std::size_t>(size));
  std::vector<int> digits(static_cast<std::size_t>(m), 0);
  for (Index flat = 0; flat < size; ++flat) {
    Index target = 0;
    for (int s = 0; s < m; ++s) target += digits[s] * weight[s];
    t.emplace_back(target, flat, S(1));
    for (int s = m - 1; s >= 0; --s) {
      if (++digits[s] < d) break;
      digits[s] = 0;
    }
  }
  SparseMatrix<S> p(size, size);
  p.setFromTriplets(t.begin(), t.end());
  return p;
}

/// Unsigned cyclic operator a_0 (x) ... (x) a_n -> a_n (x) a_0 (x) ... (x) a_{n-1}.
template <ExactScalar S>
SparseMatrix<S> cyclic_shift(int d, int arity) {
  std::vector<int> perm(static_cast<std::size_t>(arity));
  for (int s = 0; s < arity; ++s) perm[s] = (s + 1) % arity;
  return permute_slots<S>(d, perm);
}

/// Iterated product A^{(x) m} -> A (m >= 1; m = 0 gives the unit).
template <ExactScalar S>
SparseMatrix<S> iterated_product(const FrobeniusAlgebra<S>& a, int m) {
  if (m == 0) return a.eta();
  SparseMatrix<S> acc = identity<S>(a.dim());
  for (int i = 1; i < m; ++i) acc = SparseMatrix<S>(a.mu() * kron<S>(acc, identity<S>(a.dim())));
  return acc;
}

/// Iterated coproduct A -> A^{(x) m}: (psi (x) id) o ... o psi.
template <ExactScalar S>
SparseMatrix<S> iterated_coproduct(const FrobeniusAlgebra<S>& a, int m) {
  SparseMatrix<S> acc = identity<S>(a.dim());
  for (int i = 1; i < m; ++i) acc = SparseMatrix<S>(kron<S>(acc, identity<S>(a.dim())) * a.psi());
  return acc;
}

class OverlappingBlocks : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Slot groups of a pinch, ordered by their first slot.
inline std::vector<std::vector<int>> pinch_groups(int arity, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> owner(static_cast<std::size_t>(arity), -1);
  std::vector<std::vector<int>> groups;
  for (const auto& block : blocks) {
    for (int p : block) {
      if (p < 0 || p >= arity) throw OverlappingBlocks("pinch position out of range");
      if (owner[p] >= 0) throw OverlappingBlocks("pinch blocks overlap at slot " + std::to_string(p));
      owner[p] = static_cast<int>(groups.size());
    }
    std::vector<int> g = block;
    std::sort(g.begin(), g.end());
    if (!g.empty()) groups.push_back(std::move(g));
  }
  for (int p = 0; p < arity; ++p)
    if (owner[p] < 0) groups.push_back({p});
  std::sort(groups.begin(), groups.end());
  return groups;
}

/// Multiplies together the copies of A in each block; the product occupies the
/// block's first slot, the other slots keep their relative order.
template <ExactScalar S>
SparseMatrix<S> pinch(const FrobeniusAlgebra<S>& a, int arity, const std::vector<std::vector<int>>& blocks) {
  const auto groups = pinch_groups(arity, blocks);
  std::vector<int> perm(static_cast<std::size_t>(arity));
  int next = 0;
  for (const auto& g : groups)
    for (int p : g) perm[p] = next++;
  SparseMatrix<S> op = identity<S>(1);
  for (const auto& g : groups) op = kron<S>(op, iterated_product(a, static_cast<int>(g.size())));
  return SparseMatrix<S>(op * permute_slots<S>(a.dim(), perm));
}

/// Splits the copy at `pos` into `parts` copies by the iterated coproduct.
template <ExactScalar S>
SparseMatrix<S> split(const FrobeniusAlgebra<S>& a, int arity, int pos, int parts) {
  return slot_op<S>(a.dim(), pos, iterated_coproduct(a, parts), arity - pos - 1);
}

}  // namespace cactus
