// Cyclic modules over an exact field: faces, degeneracies and the cyclic
// operator, the identities they satisfy, the associated chain complex, the
// Connes operator and exact (co)homology.
//
// Conventions (enforced by the test suite rather than assumed):
//   boundary      b = sum_i (-1)^i d_i
//   rotation      t_n = (-1)^n tau_n, tau_n the unsigned cyclic operator
//   extra degen.  s_{n+1} = s_0 tau_n, so that d_0 s_{n+1} = tau_n
//   Connes B      B = (1 - t_{n+1}) s N,  s = tau_{n+1} s_n,  N = sum_i t_n^i
#pragma once

#include "cactus/linalg.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cactus {

class IdentityViolation : public std::runtime_error {
 public:
  IdentityViolation(std::string relation, int degree)
      : std::runtime_error("cyclic identity " + relation + " fails in degree " + std::to_string(degree)),
        relation_(std::move(relation)),
        degree_(degree) {}
  const std::string& relation() const { return relation_; }
  int degree() const { return degree_; }

 private:
  std::string relation_;
  int degree_;
};

class RangeExceedsComputedDegrees : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A cyclic module truncated at `top` degree. Faces exist for 1 <= n <= top,
/// degeneracies and their extra companion for n < top.
template <ExactScalar S>
struct CyclicModule {
  std::vector<Index> dims;
  std::vector<std::vector<SparseMatrix<S>>> faces;          // faces[n][i]: n -> n-1
  std::vector<std::vector<SparseMatrix<S>>> degeneracies;   // degeneracies[n][i]: n -> n+1
  std::vector<SparseMatrix<S>> rotation;                    // tau_n: n -> n

  int top() const { return static_cast<int>(dims.size()) - 1; }
  Index dim(int n) const { return dims.at(static_cast<std::size_t>(n)); }

  const SparseMatrix<S>& d(int n, int i) const { return faces.at(n).at(i); }
  const SparseMatrix<S>& s(int n, int i) const { return degeneracies.at(n).at(i); }
  const SparseMatrix<S>& tau(int n) const { return rotation.at(n); }

  SparseMatrix<S> extra_degeneracy(int n) const { return SparseMatrix<S>(s(n, 0) * tau(n)); }

  SparseMatrix<S> t(int n) const {
    SparseMatrix<S> r = tau(n);
    if (n % 2 != 0) r = -r;
    return r;
  }
};

/// K in every degree, every structure map the identity.
template <ExactScalar S>
CyclicModule<S> constant_module(int top) {
  CyclicModule<S> m;
  for (int n = 0; n <= top; ++n) {
    m.dims.push_back(1);
    m.faces.emplace_back();
    m.degeneracies.emplace_back();
    if (n >= 1)
      for (int i = 0; i <= n; ++i) m.faces.back().push_back(identity<S>(1));
    if (n < top)
      for (int i = 0; i <= n; ++i) m.degeneracies.back().push_back(identity<S>(1));
    m.rotation.push_back(identity<S>(1));
  }
  return m;
}

/// The zero cyclic module.
template <ExactScalar S>
CyclicModule<S> zero_module(int top) {
  CyclicModule<S> m;
  for (int n = 0; n <= top; ++n) {
    m.dims.push_back(0);
    m.faces.emplace_back();
    m.degeneracies.emplace_back();
    if (n >= 1)
      for (int i = 0; i <= n; ++i) m.faces.back().push_back(zero_matrix<S>(0, 0));
    if (n < top)
      for (int i = 0; i <= n; ++i) m.degeneracies.back().push_back(zero_matrix<S>(0, 0));
    m.rotation.push_back(zero_matrix<S>(0, 0));
  }
  return m;
}

struct RelationCheck {
  std::string relation;
  int degree;
  bool ok;
};

struct IdentityReport {
  std::vector<RelationCheck> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  const RelationCheck* first_violation() const {
    for (const auto& c : checks)
      if (!c.ok) return &c;
    return nullptr;
  }
  std::size_t count() const { return checks.size(); }
};

/// Exhaustive matrix verification of the simplicial identities, Connes'
/// relations between faces/degeneracies and the cyclic operator, and
/// (d_0 s_{n+1})^{n+1} = Id, t_n^{n+1} = Id, on every source degree <= max_degree.
template <ExactScalar S>
IdentityReport check_cyclic_identities(const CyclicModule<S>& m, int max_degree) {
  if (max_degree + 1 > m.top())
    throw RangeExceedsComputedDegrees("cyclic identities up to degree " + std::to_string(max_degree) +
                                      " need the module through degree " + std::to_string(max_degree + 1));
  IdentityReport report;
  auto record = [&](std::string rel, int n, bool ok) { report.checks.push_back({std::move(rel), n, ok}); };
  auto name = [](const char* fmt, int a, int b) {
    std::ostringstream os;
    os << fmt << "[" << a << "," << b << "]";
    return os.str();
  };

  for (int n = 0; n <= max_degree; ++n) {
    const Index dn = m.dim(n);
    const auto id = identity<S>(dn);

    // d_i d_j = d_{j-1} d_i for i < j, source degree n
    if (n >= 2)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          record(name("d_i d_j = d_{j-1} d_i", i, j), n,
                 equal<S>(m.d(n - 1, i) * m.d(n, j), m.d(n - 1, j - 1) * m.d(n, i)));

    // face/degeneracy identities, s_j: n -> n+1
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= n + 1; ++i) {
        SparseMatrix<S> lhs = m.d(n + 1, i) * m.s(n, j);
        bool ok;
        if (i < j) {
          ok = equal<S>(lhs, m.s(n - 1, j - 1) * m.d(n, i));
        } else if (i == j || i == j + 1) {
          ok = equal<S>(lhs, id);
        } else {
          ok = equal<S>(lhs, m.s(n - 1, j) * m.d(n, i - 1));
        }
        record(name("d_i s_j", i, j), n, ok);
      }
    }

    // s_i s_j = s_{j+1} s_i for i <= j
    if (n + 2 <= m.top())
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i)
          record(name("s_i s_j = s_{j+1} s_i", i, j), n,
                 equal<S>(m.s(n + 1, i) * m.s(n, j), m.s(n + 1, j + 1) * m.s(n, i)));

    // Connes' relations with the unsigned cyclic operator
    if (n >= 1) {
      record("d_0 tau = d_n", n, equal<S>(m.d(n, 0) * m.tau(n), m.d(n, n)));
      for (int i = 1; i <= n; ++i)
        record(name("d_i tau = tau d_{i-1}", i, 0), n,
               equal<S>(m.d(n, i) * m.tau(n), m.tau(n - 1) * m.d(n, i - 1)));
    }
    record("s_0 tau = tau^2 s_n", n,
           equal<S>(m.s(n, 0) * m.tau(n), m.tau(n + 1) * m.tau(n + 1) * m.s(n, n)));
    for (int i = 1; i <= n; ++i)
      record(name("s_i tau = tau s_{i-1}", i, 0), n,
             equal<S>(m.s(n, i) * m.tau(n), m.tau(n + 1) * m.s(n, i - 1)));

    record("tau^{n+1} = Id", n, equal<S>(matrix_power<S>(m.tau(n), n + 1), id));
    record("t^{n+1} = Id", n, equal<S>(matrix_power<S>(m.t(n), n + 1), id));
    const SparseMatrix<S> cyc = m.d(n + 1, 0) * m.extra_degeneracy(n);
    record("(d_0 s_{n+1})^{n+1} = Id", n, equal<S>(matrix_power<S>(cyc, n + 1), id));
  }
  return report;
}

template <ExactScalar S>
void require_cyclic_identities(const CyclicModule<S>& m, int max_degree) {
  const auto report = check_cyclic_identities(m, max_degree);
  if (const auto* bad = report.first_violation()) throw IdentityViolation(bad->relation, bad->degree);
}

/// Degreewise dual through the self-duality of the cyclic category: faces of
/// the dual are transposed degeneracies (the last one twisted by the inverse
/// rotation), degeneracies are transposed faces d_1..d_{n+1}, and the cyclic
/// operator is the transposed inverse rotation.
template <ExactScalar S>
CyclicModule<S> dualize(const CyclicModule<S>& m) {
  CyclicModule<S> x;
  const int top = m.top();
  for (int n = 0; n <= top; ++n) {
    x.dims.push_back(m.dim(n));
    x.rotation.push_back(SparseMatrix<S>(matrix_power<S>(m.tau(n), n).transpose()));
  }
  x.faces.resize(static_cast<std::size_t>(top) + 1);
  x.degeneracies.resize(static_cast<std::size_t>(top) + 1);
  for (int n = 1; n <= top; ++n) {
    for (int i = 0; i < n; ++i) x.faces[n].push_back(SparseMatrix<S>(m.s(n - 1, i).transpose()));
    x.faces[n].push_back(SparseMatrix<S>(x.faces[n][0] * x.rotation[n]));
  }
  for (int n = 0; n < top; ++n)
    for (int j = 0; j <= n; ++j) x.degeneracies[n].push_back(SparseMatrix<S>(m.d(n + 1, j + 1).transpose()));
  return x;
}

template <ExactScalar S>
struct ChainComplex {
  std::vector<Index> dims;
  std::vector<SparseMatrix<S>> boundary;  // boundary[n]: n -> n-1; boundary[0] has zero rows

  int top() const { return static_cast<int>(dims.size()) - 1; }
};

template <ExactScalar S>
ChainComplex<S> to_complex(const CyclicModule<S>& m) {
  ChainComplex<S> c;
  c.dims = m.dims;
  c.boundary.push_back(zero_matrix<S>(0, m.dim(0)));
  for (int n = 1; n <= m.top(); ++n) {
    SparseMatrix<S> b(m.dim(n - 1), m.dim(n));
    for (int i = 0; i <= n; ++i) {
      if (i % 2 == 0) {
        b += m.d(n, i);
      } else {
        b -= m.d(n, i);
      }
    }
    c.boundary.push_back(compressed(b));
  }
  return c;
}

/// Connes operator B: degree n -> n+1 on the unnormalized complex.
template <ExactScalar S>
SparseMatrix<S> connes_B(const CyclicModule<S>& m, int n) {
  if (n + 1 > m.top())
    throw RangeExceedsComputedDegrees("Connes B from degree " + std::to_string(n) + " needs degree " +
                                      std::to_string(n + 1));
  const SparseMatrix<S> tn = m.t(n);
  SparseMatrix<S> norm = identity<S>(m.dim(n));
  SparseMatrix<S> power = identity<S>(m.dim(n));
  for (int i = 1; i <= n; ++i) {
    power = SparseMatrix<S>(tn * power);
    norm += power;
  }
  const SparseMatrix<S> extra = m.tau(n + 1) * m.s(n, n);
  const SparseMatrix<S> one_minus_t = identity<S>(m.dim(n + 1)) - m.t(n + 1);
  return compressed(SparseMatrix<S>(one_minus_t * extra * norm));
}

/// Span of all ordinary degeneracies landing in degree n.
template <ExactScalar S>
SparseMatrix<S> degenerate_subspace(const CyclicModule<S>& m, int n) {
  std::vector<SparseVec<S>> cols;
  if (n >= 1)
    for (int i = 0; i < n; ++i)
      for (Index j = 0; j < m.dim(n - 1); ++j) {
        auto c = column(m.s(n - 1, i), j);
        if (!c.empty()) cols.push_back(std::move(c));
      }
  return from_columns<S>(m.dim(n), cols);
}

template <ExactScalar S>
struct HomologyGroup {
  int degree = 0;
  Index dim = 0;
  Index cycles = 0;      // dim ker of the outgoing map
  Index boundaries = 0;  // dim im of the incoming map
  std::vector<SparseVec<S>> representatives;
};

template <ExactScalar S>
struct HomologyReport {
  std::vector<HomologyGroup<S>> groups;

  std::vector<Index> dims() const {
    std::vector<Index> d;
    for (const auto& g : groups) d.push_back(g.dim);
    return d;
  }
};

/// Homology of  incoming -> V -> outgoing  at V. Representatives are chosen
/// by scanning a kernel basis in pivot order and keeping those independent of
/// the image and of earlier picks.
template <ExactScalar S>
HomologyGroup<S> homology_at(int degree, Index space_dim, const SparseMatrix<S>& outgoing,
                             const SparseMatrix<S>& incoming, bool with_representatives) {
  HomologyGroup<S> g;
  g.degree = degree;
  Echelon<S> image = column_space(incoming);
  g.boundaries = image.rank();
  if (with_representatives) {
    const auto ker = kernel(outgoing);
    g.cycles = static_cast<Index>(ker.size());
    for (const auto& z : ker)
      if (image.insert(z)) g.representatives.push_back(z);
  } else {
    g.cycles = space_dim - rank(outgoing);
  }
  g.dim = g.cycles - g.boundaries;
  return g;
}

template <ExactScalar S>
HomologyReport<S> homology(const ChainComplex<S>& c, int lo, int hi, bool with_representatives = false) {
  if (hi + 1 > c.top())
    throw RangeExceedsComputedDegrees("homology through degree " + std::to_string(hi) +
                                      " needs the complex through degree " + std::to_string(hi + 1));
  HomologyReport<S> r;
  for (int n = lo; n <= hi; ++n)
    r.groups.push_back(homology_at<S>(n, c.dims[n], c.boundary[n], c.boundary[n + 1], with_representatives));
  return r;
}

/// Homology dimensions of the quotient by the degenerate subcomplex, computed
/// from ranks only: dim H_n = dim C_n - rk[b_n | D_{n-1}] + rk D_{n-1} - rk[b_{n+1} | D_n].
template <ExactScalar S>
std::vector<Index> normalized_homology_dims(const CyclicModule<S>& m, int lo, int hi) {
  if (hi + 1 > m.top())
    throw RangeExceedsComputedDegrees("normalized homology through degree " + std::to_string(hi) +
                                      " needs the module through degree " + std::to_string(hi + 1));
  const auto c = to_complex(m);
  std::vector<Index> dims;
  for (int n = lo; n <= hi; ++n) {
    const auto dn = degenerate_subspace(m, n);
    Index in_lower = 0;
    Index rank_lower = 0;
    if (n >= 1) {
      const auto dlower = degenerate_subspace(m, n - 1);
      in_lower = rank_of_concat<S>(c.boundary[n], dlower);
      rank_lower = rank(dlower);
    }
    const Index in_upper = rank_of_concat<S>(c.boundary[n + 1], dn);
    dims.push_back(m.dim(n) - in_lower + rank_lower - in_upper);
  }
  return dims;
}

}  // namespace cactus
