// The cyclic bar construction of a Poincare algebra, the pinch/split maps
// attached to spiny cacti, and the dual cochain side: cup product, the
// transposed Connes operator and the induced bracket.
#pragma once

#include "cactus/cacti.hpp"
#include "cactus/cyclic.hpp"
#include "cactus/tensor_ops.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cactus {

class DegreeOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class NotACocycle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// B_cyclic(A) through degree `top`: A^{(x) n+1} in degree n, faces multiply
/// adjacent copies (d_n multiplies the last copy into the first), degeneracies
/// insert the unit after slot i.
template <ExactScalar S>
CyclicModule<S> cyclic_bar(const FrobeniusAlgebra<S>& a, int top) {
  const int d = a.dim();
  CyclicModule<S> m;
  m.faces.resize(static_cast<std::size_t>(top) + 1);
  m.degeneracies.resize(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) {
    m.dims.push_back(tensor_dim(d, n + 1));
    m.rotation.push_back(cyclic_shift<S>(d, n + 1));
  }
  for (int n = 1; n <= top; ++n) {
    for (int i = 0; i < n; ++i) m.faces[n].push_back(slot_op<S>(d, i, a.mu(), n - 1 - i));
    m.faces[n].push_back(SparseMatrix<S>(m.faces[n][0] * m.rotation[n]));
  }
  for (int n = 0; n < top; ++n)
    for (int i = 0; i <= n; ++i) m.degeneracies[n].push_back(slot_op<S>(d, i + 1, a.eta(), n - i));
  return m;
}

/// The map B^{N-1} -> B^{j_1-1} (x) ... (x) B^{j_n-1} of a spiny cactus with N
/// marked points: pinch every intersection point, split it again into one copy
/// per incident lobe, then read each lobe from its basepoint.
template <ExactScalar S>
SparseMatrix<S> spiny_structure_map(const FrobeniusAlgebra<S>& a, const SpinyCactus& sc) {
  const int arity = sc.total_points();
  std::vector<std::vector<int>> blocks;
  for (const auto& node : sc.nodes()) blocks.push_back(node.positions);
  const auto groups = pinch_groups(arity, blocks);

  SparseMatrix<S> splitter = identity<S>(1);
  std::vector<int> slots;  // position carried by each slot after splitting
  for (const auto& g : groups) {
    splitter = kron<S>(splitter, iterated_coproduct(a, static_cast<int>(g.size())));
    slots.insert(slots.end(), g.begin(), g.end());
  }
  std::vector<int> out_slot(static_cast<std::size_t>(arity));
  int next = 0;
  for (int k = 1; k <= sc.lobes(); ++k)
    for (int p : sc.occurrences(k)) out_slot[p] = next++;
  std::vector<int> perm(static_cast<std::size_t>(arity));
  for (int s = 0; s < arity; ++s) perm[s] = out_slot[slots[s]];
  return compressed(SparseMatrix<S>(permute_slots<S>(a.dim(), perm) * splitter * pinch(a, arity, blocks)));
}

/// An operator on the `lobe`-th tensor factor of B^{j_1-1} (x) ... (x) B^{j_n-1}.
template <ExactScalar S>
SparseMatrix<S> on_lobe(int d, const std::vector<int>& counts, int lobe, const SparseMatrix<S>& op) {
  int before = 0;
  int after = 0;
  for (int k = 1; k <= static_cast<int>(counts.size()); ++k) {
    if (k < lobe) before += counts[k - 1];
    if (k > lobe) after += counts[k - 1];
  }
  return slot_op<S>(d, before, op, after);
}

template <ExactScalar S>
struct DiagramCheck {
  std::string name;
  std::string witness;  // spiny cactus and indices
  bool ok = false;
  SparseMatrix<S> lhs, rhs;
};

/// Degeneracy square at (k, i):  (s_i on lobe k) o Phi_sc = Phi_{sc'} o s_{f(k,i)}.
template <ExactScalar S>
DiagramCheck<S> check_degeneracy_square(const FrobeniusAlgebra<S>& a, const SpinyCactus& sc, int lobe, int slot) {
  const int d = a.dim();
  const int n = sc.total_points() - 1;
  const auto bar = cyclic_bar(a, n + 1);
  const auto lobe_bar = cyclic_bar(a, sc.count(lobe));
  DiagramCheck<S> c;
  c.name = "degeneracy";
  c.witness = to_string(sc) + " k=" + std::to_string(lobe) + " i=" + std::to_string(slot);
  c.lhs = on_lobe<S>(d, sc.counts(), lobe, lobe_bar.s(sc.count(lobe) - 1, slot)) * spiny_structure_map(a, sc);
  c.rhs = spiny_structure_map(a, spiny_degeneracy(sc, lobe, slot)) * bar.s(n, sc.global_index(lobe, slot));
  c.ok = equal<S>(c.lhs, c.rhs);
  return c;
}

/// Face square at (k, i):  (d_i on lobe k) o Phi_sc = Phi_{sc'} o d_{f(k,i)}.
template <ExactScalar S>
DiagramCheck<S> check_face_square(const FrobeniusAlgebra<S>& a, const SpinyCactus& sc, int lobe, int slot) {
  const int d = a.dim();
  const int n = sc.total_points() - 1;
  const int j = sc.count(lobe);
  const auto bar = cyclic_bar(a, n);
  const auto lobe_bar = cyclic_bar(a, j - 1);
  DiagramCheck<S> c;
  c.name = "face";
  c.witness = to_string(sc) + " k=" + std::to_string(lobe) + " i=" + std::to_string(slot);
  c.lhs = on_lobe<S>(d, sc.counts(), lobe, lobe_bar.d(j - 1, slot)) * spiny_structure_map(a, sc);
  c.rhs = spiny_structure_map(a, spiny_face(sc, lobe, slot)) * bar.d(n, sc.global_index(lobe, slot));
  c.ok = equal<S>(c.lhs, c.rhs);
  return c;
}

/// Composition triangle: Phi_{spiny_compose(sc; r)} = ((x)_k Phi_{r_k}) o Phi_sc.
template <ExactScalar S>
DiagramCheck<S> check_composition_triangle(const FrobeniusAlgebra<S>& a, const SpinyCactus& sc,
                                           const std::vector<SpinyCactus>& refinements) {
  DiagramCheck<S> c;
  c.name = "composition";
  c.witness = to_string(sc);
  for (const auto& r : refinements) c.witness += " <- " + to_string(r);
  SparseMatrix<S> inner = identity<S>(1);
  for (const auto& r : refinements) inner = kron<S>(inner, spiny_structure_map(a, r));
  c.lhs = spiny_structure_map(a, spiny_compose(sc, refinements));
  c.rhs = inner * spiny_structure_map(a, sc);
  c.ok = equal<S>(c.lhs, c.rhs);
  return c;
}

/// Every degeneracy and face square of the cactus object (all k, all i; faces where the lobe has >= 2 points).
template <ExactScalar S>
std::vector<DiagramCheck<S>> check_cactus_diagrams(const FrobeniusAlgebra<S>& a, const SpinyCactus& sc) {
  std::vector<DiagramCheck<S>> out;
  for (int k = 1; k <= sc.lobes(); ++k)
    for (int i = 0; i < sc.count(k); ++i) {
      out.push_back(check_degeneracy_square(a, sc, k, i));
      if (sc.count(k) >= 2) out.push_back(check_face_square(a, sc, k, i));
    }
  return out;
}

/// Figure-eight spiny cactus with p points on lobe 1 and q on lobe 2, glued at
/// both basepoints (positions 0 and p).
inline SpinyCactus figure_eight(int p, int q) {
  std::vector<int> w(static_cast<std::size_t>(p), 1);
  w.insert(w.end(), static_cast<std::size_t>(q), 2);
  return SpinyCactus(std::move(w), {0, p});
}

/// The four composites of the two-lobe pinch, assembled from mu, psi and eta
/// directly. The pinch identifies slot 0 (top) with slot p (bottom) of
/// B^{p+q-1}; the outputs are B^{p-1} (x) B^{q-1}, the bottom copy opening lobe 2.
template <ExactScalar S>
struct DisplayedComposites {
  SparseMatrix<S> pinch_then_degeneracy, degeneracy_then_pinch;
  SparseMatrix<S> face_then_pinch, pinch_then_face;
};

/// Pinch of slot 0 with slot p in A^{(x) p+q}, followed by the split, landing
/// in A^{(x) p} (x) A^{(x) q} with the split copies at slots 0 and p.
template <ExactScalar S>
SparseMatrix<S> explicit_two_lobe_pinch(const FrobeniusAlgebra<S>& a, int p, int q) {
  const int d = a.dim();
  const int arity = p + q;
  // bring slot p next to slot 0
  std::vector<int> perm(static_cast<std::size_t>(arity));
  for (int s = 0; s < arity; ++s) perm[s] = s == 0 ? 0 : s < p ? s + 1 : s == p ? 1 : s;
  const SparseMatrix<S> gather = permute_slots<S>(d, perm);
  const SparseMatrix<S> multiply = slot_op<S>(d, 0, a.mu(), arity - 2);
  const SparseMatrix<S> coproduct = slot_op<S>(d, 0, a.psi(), arity - 2);
  // move the second split copy back to slot p
  std::vector<int> back(static_cast<std::size_t>(arity));
  for (int s = 0; s < arity; ++s) back[s] = s == 0 ? 0 : s == 1 ? p : s <= p ? s - 1 : s;
  return SparseMatrix<S>(permute_slots<S>(d, back) * coproduct * multiply * gather);
}

template <ExactScalar S>
DisplayedComposites<S> displayed_composites(const FrobeniusAlgebra<S>& a, int p, int q) {
  const int d = a.dim();
  DisplayedComposites<S> out;
  // Degeneracy: a new copy of A after the bottom copy, on the right circle.
  const SparseMatrix<S> eta_right = slot_op<S>(d, p + 1, a.eta(), q - 1);
  out.pinch_then_degeneracy = eta_right * explicit_two_lobe_pinch(a, p, q);
  const SparseMatrix<S> eta_total = slot_op<S>(d, p + 1, a.eta(), q - 1);
  out.degeneracy_then_pinch = explicit_two_lobe_pinch(a, p, q + 1) * eta_total;
  // Face: multiply the bottom copy with the next copy of the right circle.
  const SparseMatrix<S> mu_total = slot_op<S>(d, p, a.mu(), q - 1);
  out.face_then_pinch = explicit_two_lobe_pinch(a, p, q) * SparseMatrix<S>(mu_total);
  const SparseMatrix<S> mu_right = slot_op<S>(d, p, a.mu(), q - 1);
  out.pinch_then_face = mu_right * explicit_two_lobe_pinch(a, p, q + 1);
  return out;
}

// ------------------------------------------------------------ cochain side

template <ExactScalar S>
struct CochainComplex {
  std::vector<Index> dims;
  std::vector<SparseMatrix<S>> coboundary;  // coboundary[n]: C^n -> C^{n+1}

  int top() const { return static_cast<int>(dims.size()) - 1; }
};

/// Termwise dual of a chain complex: the coboundary out of degree n is the
/// transposed boundary into degree n.
template <ExactScalar S>
CochainComplex<S> dual_complex(const ChainComplex<S>& c) {
  CochainComplex<S> x;
  x.dims = c.dims;
  for (int n = 0; n < c.top(); ++n) x.coboundary.push_back(SparseMatrix<S>(c.boundary[n + 1].transpose()));
  return x;
}

template <ExactScalar S>
CochainComplex<S> dual_complex(const FrobeniusAlgebra<S>& a, int top) {
  return dual_complex(to_complex(cyclic_bar(a, top)));
}

/// Cohomology of a cochain complex in degrees lo..hi (needs coboundaries out of hi).
template <ExactScalar S>
HomologyReport<S> cohomology(const CochainComplex<S>& c, int lo, int hi, bool with_representatives = false) {
  if (hi >= static_cast<int>(c.coboundary.size()))
    throw RangeExceedsComputedDegrees("cohomology through degree " + std::to_string(hi) +
                                      " needs the complex through degree " + std::to_string(hi + 1));
  HomologyReport<S> r;
  for (int n = lo; n <= hi; ++n) {
    const SparseMatrix<S> incoming = n == 0 ? zero_matrix<S>(c.dims[0], 0) : c.coboundary[n - 1];
    r.groups.push_back(homology_at<S>(n, c.dims[n], c.coboundary[n], incoming, with_representatives));
  }
  return r;
}

/// The cyclic cobar construction of A as a coalgebra: cofaces apply psi at a
/// slot (the last one splits the first copy around the circle), codegeneracies
/// apply the counit. Only the coboundary is returned.
template <ExactScalar S>
CochainComplex<S> cobar_complex(const FrobeniusAlgebra<S>& a, int top) {
  const int d = a.dim();
  CochainComplex<S> x;
  for (int n = 0; n <= top; ++n) x.dims.push_back(tensor_dim(d, n + 1));
  for (int n = 0; n < top; ++n) {
    // cofaces C^n -> C^{n+1}, n+2 of them
    SparseMatrix<S> delta(tensor_dim(d, n + 2), tensor_dim(d, n + 1));
    for (int i = 0; i <= n + 1; ++i) {
      SparseMatrix<S> coface;
      if (i <= n) {
        coface = slot_op<S>(d, i, a.psi(), n - i);
      } else {
        coface = SparseMatrix<S>(cyclic_shift<S>(d, n + 2).transpose() * slot_op<S>(d, 0, a.psi(), n));
      }
      if (i % 2 == 0) {
        delta += coface;
      } else {
        delta -= coface;
      }
    }
    x.coboundary.push_back(compressed(delta));
  }
  return x;
}

/// Codegeneracy C^{n+1} -> C^n: the counit applied at slot j+1.
template <ExactScalar S>
SparseMatrix<S> cobar_codegeneracy(const FrobeniusAlgebra<S>& a, int n, int j) {
  return slot_op<S>(a.dim(), j + 1, a.eps(), n - j);
}

/// G^{(x) m}: the isomorphism A^{(x) m} -> (A^vee)^{(x) m} induced by the pairing.
template <ExactScalar S>
SparseMatrix<S> pairing_power(const FrobeniusAlgebra<S>& a, int m) {
  std::vector<Eigen::Triplet<S>> t;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (!is_zero(a.gram()[i][j])) t.emplace_back(i, j, a.gram()[i][j]);
  SparseMatrix<S> g(a.dim(), a.dim());
  g.setFromTriplets(t.begin(), t.end());
  SparseMatrix<S> acc = identity<S>(1);
  for (int s = 0; s < m; ++s) acc = kron<S>(acc, g);
  return acc;
}

/// C^p (x) C^q -> C^{p+q}:  (alpha . beta)(a_0 (x) ...) =
/// sum alpha(a_0' (x) a_1 .. a_p) beta(a_0'' (x) a_{p+1} .. a_{p+q}).
template <ExactScalar S>
SparseMatrix<S> cup_product_matrix(const FrobeniusAlgebra<S>& a, int p, int q) {
  const int d = a.dim();
  const int arity = p + q + 2;
  // psi(a_0) (x) a_1 ... ; then move a_0'' behind a_p
  std::vector<int> perm(static_cast<std::size_t>(arity));
  for (int s = 0; s < arity; ++s) perm[s] = s == 0 ? 0 : s == 1 ? p + 1 : s <= p + 1 ? s - 1 : s;
  const SparseMatrix<S> f = permute_slots<S>(d, perm) * slot_op<S>(d, 0, a.psi(), p + q);
  return SparseMatrix<S>(f.transpose());
}

/// The same product through the figure-eight cactus: the transpose of
/// Phi_{figure_eight(p+1, q+1)} o s_p.
template <ExactScalar S>
SparseMatrix<S> cup_product_via_cactus(const FrobeniusAlgebra<S>& a, int p, int q) {
  const auto bar = cyclic_bar(a, p + q + 1);
  const SparseMatrix<S> f = spiny_structure_map(a, figure_eight(p + 1, q + 1)) * bar.s(p + q, p);
  return SparseMatrix<S>(f.transpose());
}

/// The cochain side of a Poincare algebra through a fixed degree, with
/// products, Delta and the bracket on cochains given as vectors.
template <ExactScalar S>
class CochainAlgebra {
 public:
  CochainAlgebra(const FrobeniusAlgebra<S>& a, int max_degree)
      : algebra_(a), max_degree_(max_degree), bar_(cyclic_bar(a, max_degree + 1)) {
    complex_ = dual_complex(to_complex(bar_));
  }

  const FrobeniusAlgebra<S>& algebra() const { return algebra_; }
  int max_degree() const { return max_degree_; }
  const CochainComplex<S>& complex() const { return complex_; }
  Index dim(int n) const { return complex_.dims[n]; }

  Vector<S> coboundary(const Vector<S>& x, int n) const {
    require(n, "coboundary");
    return apply(complex_.coboundary[n], x);
  }

  Vector<S> cup(const Vector<S>& x, int p, const Vector<S>& y, int q) const {
    require(p + q, "cup product");
    return apply(cup_matrix(p, q), kron_vector(x, y));
  }

  /// Delta: C^n -> C^{n-1}, the transposed Connes operator.
  Vector<S> delta(const Vector<S>& x, int n) const {
    if (n == 0) return Vector<S>::Zero(0);
    require(n, "delta");
    return apply(delta_matrix(n), x);
  }

  /// {x, y} = (-1)^p (Delta(xy) - Delta(x) y - (-1)^p x Delta(y)).
  Vector<S> bracket(const Vector<S>& x, int p, const Vector<S>& y, int q) const {
    if (p + q == 0) return Vector<S>::Zero(0);
    const int sp = p % 2 == 0 ? 1 : -1;
    Vector<S> r = delta(cup(x, p, y, q), p + q);
    if (p >= 1) r -= cup(delta(x, p), p - 1, y, q);
    if (q >= 1) {
      const Vector<S> t = cup(x, p, delta(y, q), q - 1);
      if (sp > 0) {
        r -= t;
      } else {
        r += t;
      }
    }
    if (sp < 0) r = -r;
    return r;
  }

  /// Counit cochain eps-hat in C^0.
  Vector<S> unit() const { return algebra_.augmentation(); }

  bool is_cocycle(const Vector<S>& x, int n) const { return is_zero(coboundary(x, n)); }

  /// Exact test for x in the image of the coboundary into degree n.
  bool is_coboundary(const Vector<S>& x, int n) const {
    require(n, "coboundary test");
    if (n == 0) return is_zero(x);
    return image(n).contains(to_sparse(x));
  }

  /// Cocycle representatives of H^n, chosen deterministically.
  std::vector<Vector<S>> representatives(int n) const {
    require(n, "cohomology");
    const auto group = cohomology(complex_, n, n, true).groups.front();
    std::vector<Vector<S>> reps;
    for (const auto& z : group.representatives) reps.push_back(to_dense(z, dim(n)));
    return reps;
  }

 private:
  void require(int n, const char* what) const {
    if (n < 0 || n > max_degree_)
      throw DegreeOutOfRange(std::string(what) + " needs degree " + std::to_string(n) +
                             " beyond the computed range " + std::to_string(max_degree_));
  }

  Vector<S> kron_vector(const Vector<S>& x, const Vector<S>& y) const {
    Vector<S> r = Vector<S>::Zero(x.size() * y.size());
    for (Index i = 0; i < x.size(); ++i) {
      if (is_zero(x[i])) continue;
      for (Index j = 0; j < y.size(); ++j)
        if (!is_zero(y[j])) r[i * y.size() + j] = x[i] * y[j];
    }
    return r;
  }

  const SparseMatrix<S>& cup_matrix(int p, int q) const {
    auto key = std::make_pair(p, q);
    auto it = cup_cache_.find(key);
    if (it == cup_cache_.end()) it = cup_cache_.emplace(key, cup_product_matrix(algebra_, p, q)).first;
    return it->second;
  }

  const SparseMatrix<S>& delta_matrix(int n) const {
    auto it = delta_cache_.find(n);
    if (it == delta_cache_.end())
      it = delta_cache_.emplace(n, SparseMatrix<S>(connes_B(bar_, n - 1).transpose())).first;
    return it->second;
  }

  const Echelon<S>& image(int n) const {
    auto it = image_cache_.find(n);
    if (it == image_cache_.end()) it = image_cache_.emplace(n, column_space(complex_.coboundary[n - 1])).first;
    return it->second;
  }

  FrobeniusAlgebra<S> algebra_;
  int max_degree_;
  CyclicModule<S> bar_;
  CochainComplex<S> complex_;
  mutable std::map<std::pair<int, int>, SparseMatrix<S>> cup_cache_;
  mutable std::map<int, SparseMatrix<S>> delta_cache_;
  mutable std::map<int, Echelon<S>> image_cache_;
};

}  // namespace cactus
