// Poincare algebras: commutative unital algebras whose augmentation pairing
// <a, b> = eps(ab) is nondegenerate, together with the coproduct and counit
// obtained from the multiplication and unit by that duality.
#pragma once

#include "cactus/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace cactus {

class AlgebraError : public std::runtime_error {
 public:
  enum class Kind { BadSpec, NotAssociative, NotCommutative, NoUnit, DegeneratePairing, GradedUnsupported };

  AlgebraError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(AlgebraError::Kind kind);

/// Element of A^{(x) m}: basis multi-index -> coefficient, without stored zeros.
template <ExactScalar S>
class Tensor {
 public:
  explicit Tensor(int arity = 1) : arity_(arity) {}

  int arity() const { return arity_; }
  const std::map<std::vector<int>, S>& terms() const { return terms_; }

  void add(const std::vector<int>& index, const S& coef) {
    if (static_cast<int>(index.size()) != arity_) throw std::invalid_argument("tensor index has wrong arity");
    if (is_zero(coef)) return;
    auto [it, fresh] = terms_.try_emplace(index, coef);
    if (fresh) return;
    it->second += coef;
    if (is_zero(it->second)) terms_.erase(it);
  }

  S coefficient(const std::vector<int>& index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? S(0) : it->second;
  }

  /// Coordinates in the monomial basis of A^{(x) m}, slot 0 most significant.
  Vector<S> to_vector(int dim) const {
    Index size = 1;
    for (int s = 0; s < arity_; ++s) size *= dim;
    Vector<S> v = Vector<S>::Zero(size);
    for (const auto& [index, coef] : terms_) {
      Index flat = 0;
      for (int i : index) flat = flat * dim + i;
      v[flat] = coef;
    }
    return v;
  }

  static Tensor from_vector(const Vector<S>& v, int dim, int arity) {
    Tensor t(arity);
    for (Index flat = 0; flat < v.size(); ++flat) {
      if (is_zero(v[flat])) continue;
      std::vector<int> index(static_cast<std::size_t>(arity));
      Index rest = flat;
      for (int s = arity - 1; s >= 0; --s) {
        index[s] = static_cast<int>(rest % dim);
        rest /= dim;
      }
      t.terms_.emplace(std::move(index), v[flat]);
    }
    return t;
  }

  friend bool operator==(const Tensor& a, const Tensor& b) { return a.arity_ == b.arity_ && a.terms_ == b.terms_; }

 private:
  int arity_;
  std::map<std::vector<int>, S> terms_;
};

/// Structure constant entry e_i e_j = ... + coef e_k.
template <ExactScalar S>
struct MulEntry {
  int i, j, k;
  S coef;
};

template <ExactScalar S>
class FrobeniusAlgebra {
 public:
  /// Validates commutativity, associativity, the unit law and nondegeneracy of
  /// the pairing; throws AlgebraError naming the first violation.
  FrobeniusAlgebra(Field<S> field, std::vector<std::string> basis, Vector<S> unit,
                   const std::vector<MulEntry<S>>& mul, Vector<S> aug);

  const Field<S>& field() const { return field_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& basis() const { return basis_; }
  const Vector<S>& unit() const { return unit_; }
  const Vector<S>& augmentation() const { return aug_; }

  /// Coefficient of e_k in e_i e_j.
  const S& structure_constant(int i, int j, int k) const { return c_[index3(i, j, k)]; }

  /// G[i][j] = eps(e_i e_j) and its inverse.
  const std::vector<std::vector<S>>& gram() const { return gram_; }
  const std::vector<std::vector<S>>& gram_inverse() const { return gram_inv_; }

  Vector<S> multiply(const Vector<S>& a, const Vector<S>& b) const;
  S pairing(const Vector<S>& a, const Vector<S>& b) const { return counit(multiply(a, b)); }
  S counit(const Vector<S>& a) const;

  /// psi(a) in A (x) A, as a dim^2 vector (first factor most significant).
  Vector<S> coproduct(const Vector<S>& a) const { return apply(psi_, a); }

  Tensor<S> multiply(const Tensor<S>& a, const Tensor<S>& b) const;
  Tensor<S> coproduct(const Tensor<S>& a) const;

  /// e^i = sum_j Ginv[j][i] e_j, the basis dual to {e_i} under the pairing.
  Vector<S> dual_basis_vector(int i) const;

  Vector<S> basis_vector(int i) const {
    Vector<S> v = Vector<S>::Zero(dim_);
    v[i] = S(1);
    return v;
  }

  /// mu: A (x) A -> A, psi: A -> A (x) A, eta: K -> A, eps: A -> K.
  const SparseMatrix<S>& mu() const { return mu_; }
  const SparseMatrix<S>& psi() const { return psi_; }
  const SparseMatrix<S>& eta() const { return eta_; }
  const SparseMatrix<S>& eps() const { return eps_; }

  friend bool operator==(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b) {
    return a.field_.characteristic() == b.field_.characteristic() && a.basis_ == b.basis_ && a.unit_ == b.unit_ &&
           a.aug_ == b.aug_ && a.c_ == b.c_;
  }

 private:
  std::size_t index3(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  Field<S> field_;
  int dim_;
  std::vector<std::string> basis_;
  Vector<S> unit_;
  Vector<S> aug_;
  std::vector<S> c_;
  std::vector<std::vector<S>> gram_;
  std::vector<std::vector<S>> gram_inv_;
  SparseMatrix<S> mu_, psi_, eta_, eps_;
};

/// Inverse of a square matrix by Gauss-Jordan elimination; empty when singular.
/// On failure `kernel_witness` (if given) receives a nonzero null vector.
template <ExactScalar S>
std::optional<std::vector<std::vector<S>>> invert(const std::vector<std::vector<S>>& m,
                                                  std::vector<S>* kernel_witness = nullptr) {
  const std::size_t n = m.size();
  std::vector<std::vector<S>> a = m;
  std::vector<std::vector<S>> inv(n, std::vector<S>(n, S(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = S(1);
  // column-operation tracking for the null vector witness
  std::vector<std::size_t> pivot_col(n, n);
  std::size_t row = 0;
  std::vector<std::size_t> free_cols;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = row;
    while (pivot < n && is_zero(a[pivot][col])) ++pivot;
    if (pivot == n) {
      free_cols.push_back(col);
      continue;
    }
    std::swap(a[pivot], a[row]);
    std::swap(inv[pivot], inv[row]);
    const S scale = S(1) / a[row][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[row][c] *= scale;
      inv[row][c] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || is_zero(a[r][col])) continue;
      const S f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[row][c];
        inv[r][c] -= f * inv[row][c];
      }
    }
    pivot_col[row] = col;
    ++row;
  }
  if (free_cols.empty()) return inv;
  if (kernel_witness) {
    const std::size_t f = free_cols.front();
    std::vector<S> v(n, S(0));
    v[f] = S(1);
    for (std::size_t r = 0; r < row; ++r) v[pivot_col[r]] = -a[r][f];
    *kernel_witness = std::move(v);
  }
  return std::nullopt;
}

template <ExactScalar S>
FrobeniusAlgebra<S>::FrobeniusAlgebra(Field<S> field, std::vector<std::string> basis, Vector<S> unit,
                                      const std::vector<MulEntry<S>>& mul, Vector<S> aug)
    : field_(std::move(field)),
      dim_(static_cast<int>(basis.size())),
      basis_(std::move(basis)),
      unit_(std::move(unit)),
      aug_(std::move(aug)) {
  using K = AlgebraError::Kind;
  const int d = dim_;
  if (d == 0) throw AlgebraError(K::BadSpec, "algebra has an empty basis");
  if (unit_.size() != d || aug_.size() != d)
    throw AlgebraError(K::BadSpec, "unit and augmentation need one coordinate per basis element");
  c_.assign(static_cast<std::size_t>(d) * d * d, field_.from_int(0));
  for (const auto& e : mul) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= d || e.j >= d || e.k >= d)
      throw AlgebraError(K::BadSpec, "structure constant index out of range");
    c_[index3(e.i, e.j, e.k)] += e.coef;
  }
  for (auto& x : c_) x += field_.from_int(0);  // adopt the field's modulus
  for (Index i = 0; i < d; ++i) {
    unit_[i] += field_.from_int(0);
    aug_[i] += field_.from_int(0);
  }
  auto name = [&](int i) { return basis_[static_cast<std::size_t>(i)]; };

  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (c_[index3(i, j, k)] != c_[index3(j, i, k)])
          throw AlgebraError(K::NotCommutative, "NotCommutative: " + name(i) + "*" + name(j) + " != " + name(j) +
                                                    "*" + name(i));

  std::vector<Eigen::Triplet<S>> t;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (!is_zero(c_[index3(i, j, k)])) t.emplace_back(k, i * d + j, c_[index3(i, j, k)]);
  mu_ = SparseMatrix<S>(d, d * d);
  mu_.setFromTriplets(t.begin(), t.end());

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const Vector<S> left = multiply(multiply(basis_vector(i), basis_vector(j)), basis_vector(k));
        const Vector<S> right = multiply(basis_vector(i), multiply(basis_vector(j), basis_vector(k)));
        if (left != right)
          throw AlgebraError(K::NotAssociative, "NotAssociative: (" + name(i) + "*" + name(j) + ")*" + name(k) +
                                                    " != " + name(i) + "*(" + name(j) + "*" + name(k) + ")");
      }

  for (int j = 0; j < d; ++j)
    if (multiply(unit_, basis_vector(j)) != basis_vector(j))
      throw AlgebraError(K::NoUnit, "NoUnit: unit*" + name(j) + " != " + name(j));

  gram_.assign(d, std::vector<S>(d, field_.from_int(0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram_[i][j] = pairing(basis_vector(i), basis_vector(j));
  std::vector<S> witness;
  auto inv = invert(gram_, &witness);
  if (!inv) {
    std::string w;
    for (int i = 0; i < d; ++i)
      if (!is_zero(witness[i])) w += (w.empty() ? "" : " + ") + to_string(witness[i]) + "*" + name(i);
    throw AlgebraError(K::DegeneratePairing, "DegeneratePairing: <" + w + ", -> vanishes identically");
  }
  gram_inv_ = std::move(*inv);

  // psi(e_a) = sum_i (e_a e_i) (x) e^i
  t.clear();
  for (int a = 0; a < d; ++a)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        S coef = field_.from_int(0);
        for (int i = 0; i < d; ++i) coef += c_[index3(a, i, k)] * gram_inv_[j][i];
        if (!is_zero(coef)) t.emplace_back(k * d + j, a, coef);
      }
  psi_ = SparseMatrix<S>(d * d, d);
  psi_.setFromTriplets(t.begin(), t.end());

  t.clear();
  for (int i = 0; i < d; ++i)
    if (!is_zero(unit_[i])) t.emplace_back(i, 0, unit_[i]);
  eta_ = SparseMatrix<S>(d, 1);
  eta_.setFromTriplets(t.begin(), t.end());

  t.clear();
  for (int i = 0; i < d; ++i)
    if (!is_zero(aug_[i])) t.emplace_back(0, i, aug_[i]);
  eps_ = SparseMatrix<S>(1, d);
  eps_.setFromTriplets(t.begin(), t.end());
}

template <ExactScalar S>
Vector<S> FrobeniusAlgebra<S>::multiply(const Vector<S>& a, const Vector<S>& b) const {
  Vector<S> r = Vector<S>::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (is_zero(a[i])) continue;
    for (int j = 0; j < dim_; ++j) {
      if (is_zero(b[j])) continue;
      const S ab = a[i] * b[j];
      for (int k = 0; k < dim_; ++k) {
        const S& c = c_[index3(i, j, k)];
        if (!is_zero(c)) r[k] += ab * c;
      }
    }
  }
  return r;
}

template <ExactScalar S>
S FrobeniusAlgebra<S>::counit(const Vector<S>& a) const {
  S r = field_.from_int(0);
  for (int i = 0; i < dim_; ++i) r += aug_[i] * a[i];
  return r;
}

template <ExactScalar S>
Tensor<S> FrobeniusAlgebra<S>::multiply(const Tensor<S>& a, const Tensor<S>& b) const {
  return Tensor<S>::from_vector(multiply(a.to_vector(dim_), b.to_vector(dim_)), dim_, 1);
}

template <ExactScalar S>
Tensor<S> FrobeniusAlgebra<S>::coproduct(const Tensor<S>& a) const {
  return Tensor<S>::from_vector(coproduct(a.to_vector(dim_)), dim_, 2);
}

template <ExactScalar S>
Vector<S> FrobeniusAlgebra<S>::dual_basis_vector(int i) const {
  Vector<S> v(dim_);
  for (int j = 0; j < dim_; ++j) v[j] = gram_inv_[j][i];
  return v;
}

/// k[x]/(x^m + r_{m-1} x^{m-1} + ... + r_0) with basis 1, x, ..., x^{m-1}.
/// `relation` lists r_0 .. r_{m-1}.
template <ExactScalar S>
FrobeniusAlgebra<S> truncated_polynomial(const Field<S>& field, const std::vector<long long>& relation,
                                         const std::vector<long long>& aug, const std::string& var = "x") {
  const int m = static_cast<int>(relation.size());
  std::vector<std::string> basis;
  for (int i = 0; i < m; ++i) basis.push_back(i == 0 ? "1" : i == 1 ? var : var + "^" + std::to_string(i));
  // x^e reduced, for e < 2m-1
  std::vector<std::vector<S>> power(2 * m - 1, std::vector<S>(m, field.from_int(0)));
  for (int e = 0; e < 2 * m - 1; ++e) {
    if (e < m) {
      power[e][e] = field.from_int(1);
      continue;
    }
    // x^e = x * x^{e-1}; x * x^{m-1} = -sum r_i x^i
    const auto& prev = power[e - 1];
    std::vector<S> next(m, field.from_int(0));
    for (int i = 0; i + 1 < m; ++i) next[i + 1] += prev[i];
    for (int i = 0; i < m; ++i) next[i] -= prev[m - 1] * field.from_int(relation[i]);
    power[e] = std::move(next);
  }
  std::vector<MulEntry<S>> mul;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (!is_zero(power[i + j][k])) mul.push_back({i, j, k, power[i + j][k]});
  Vector<S> unit = Vector<S>::Zero(m);
  unit[0] = field.from_int(1);
  Vector<S> eps(m);
  for (int i = 0; i < m; ++i) eps[i] = field.from_int(i < static_cast<int>(aug.size()) ? aug[i] : 0);
  return FrobeniusAlgebra<S>(field, std::move(basis), std::move(unit), mul, std::move(eps));
}

}  // namespace cactus
