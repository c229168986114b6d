#include "cactus/hochschild.hpp"

#include <doctest.h>

using namespace cactus;

namespace {

const Field<Rational> Q;

FrobeniusAlgebra<Rational> kx2() { return truncated_polynomial(Q, {0, 0}, {0, 1}); }
FrobeniusAlgebra<Rational> kx3() { return truncated_polynomial(Q, {0, 0, 0}, {0, 0, 1}); }

Vector<Rational> basis_tensor(int d, const std::vector<int>& index) {
  Tensor<Rational> t(static_cast<int>(index.size()));
  t.add(index, Rational(1));
  return t.to_vector(d);
}

}  // namespace

TEST_CASE("cyclic bar construction dimensions and faces") {
  const auto a = kx2();
  const auto m = cyclic_bar(a, 3);
  CHECK(m.dims == std::vector<Index>{2, 4, 8, 16});
  // d_1(1 (x) x (x) x) = 1 (x) x^2 = 0
  CHECK(is_zero(apply(m.d(2, 1), basis_tensor(2, {0, 1, 1}))));
  // d_2(x (x) 1 (x) x) = x^2 (x) 1 = 0, d_0 = x (x) x
  CHECK(apply(m.d(2, 0), basis_tensor(2, {1, 0, 1})) == basis_tensor(2, {1, 1}));
  CHECK(is_zero(apply(m.d(2, 2), basis_tensor(2, {1, 0, 1}))));
  // s_0(x (x) x) = x (x) 1 (x) x
  CHECK(apply(m.s(1, 0), basis_tensor(2, {1, 1})) == basis_tensor(2, {1, 0, 1}));
}

TEST_CASE("signed cyclic operator") {
  const auto m = cyclic_bar(kx3(), 3);
  // t_2(a (x) b (x) c) = c (x) a (x) b
  CHECK(apply(m.t(2), basis_tensor(3, {0, 1, 2})) == basis_tensor(3, {2, 0, 1}));
  // t_1(a (x) b) = -(b (x) a)
  CHECK(apply(m.t(1), basis_tensor(3, {0, 1})) == Vector<Rational>(-basis_tensor(3, {1, 0})));
  CHECK(equal<Rational>(matrix_power(m.tau(3), 4), identity<Rational>(81)));
  // t_2(1 (x) x (x) 1) = 1 (x) 1 (x) x
  CHECK(apply(m.t(2), basis_tensor(3, {0, 1, 0})) == basis_tensor(3, {0, 0, 1}));
}

TEST_CASE("pinch and split") {
  const auto a = kx3();
  CHECK(equal<Rational>(pinch(a, 2, {{0, 1}}), a.mu()));
  CHECK(equal<Rational>(split(a, 1, 0, 2), a.psi()));
  CHECK(equal<Rational>(pinch(a, 3, {}), identity<Rational>(27)));
  // x (x) 1 (x) x with slots 0 and 2 pinched: x^2 (x) 1
  CHECK(apply(pinch(a, 3, {{0, 2}}), basis_tensor(3, {1, 0, 1})) == basis_tensor(3, {2, 0}));
  CHECK_THROWS_AS(pinch(a, 3, {{0, 1}, {1, 2}}), OverlappingBlocks);

  const auto b = kx2();
  // 1 (x) 1 (x) x with slots 0 and 2 pinched: x (x) 1
  CHECK(apply(pinch(b, 3, {{0, 2}}), basis_tensor(2, {0, 0, 1})) == basis_tensor(2, {1, 0}));
  CHECK(is_zero(apply(pinch(b, 3, {{0, 1, 2}}), basis_tensor(2, {0, 1, 1}))));
  // psi(1) = 1 (x) x + x (x) 1, (psi (x) id) psi(x) = x (x) x (x) x
  CHECK(apply(split(b, 2, 0, 2), basis_tensor(2, {0, 1})) ==
        Vector<Rational>(basis_tensor(2, {0, 1, 1}) + basis_tensor(2, {1, 0, 1})));
  CHECK(apply(split(b, 1, 0, 3), basis_tensor(2, {1})) == basis_tensor(2, {1, 1, 1}));
}

TEST_CASE("structure map of the figure-eight") {
  const auto a = kx2();
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q)
      CHECK(equal<Rational>(spiny_structure_map(a, figure_eight(p, q)), explicit_two_lobe_pinch(a, p, q)));
  // with one point per lobe the map is psi o mu
  CHECK(equal<Rational>(spiny_structure_map(a, figure_eight(1, 1)), SparseMatrix<Rational>(a.psi() * a.mu())));
  const auto fig8 = spiny_structure_map(a, figure_eight(1, 1));
  CHECK(apply(fig8, basis_tensor(2, {0, 0})) == Vector<Rational>(basis_tensor(2, {0, 1}) + basis_tensor(2, {1, 0})));
  CHECK(apply(fig8, basis_tensor(2, {1, 0})) == basis_tensor(2, {1, 1}));
  // a single lobe with basepoint at global 0 is the identity
  CHECK(equal<Rational>(spiny_structure_map(a, SpinyCactus::circle(3)), identity<Rational>(8)));
}

TEST_CASE("definition diagrams commute on small spiny cacti") {
  const auto a = kx2();
  for (const auto& sc : enumerate_spiny(2, 4))
    for (const auto& check : check_cactus_diagrams(a, sc)) CHECK_MESSAGE(check.ok, check.witness);
}

TEST_CASE("cup product through the cactus") {
  for (const auto& a : {kx2(), kx3()})
    for (int p = 0; p <= 2; ++p)
      for (int q = 0; p + q <= 3; ++q)
        CHECK(equal<Rational>(cup_product_matrix(a, p, q), cup_product_via_cactus(a, p, q)));
}

TEST_CASE("the pairing intertwines the cobar and dual complexes") {
  for (const auto& a : {kx2(), kx3()}) {
    const auto dual = dual_complex(a, 4);
    const auto cobar = cobar_complex(a, 4);
    for (int n = 0; n < 4; ++n)
      CHECK(equal<Rational>(dual.coboundary[n] * pairing_power(a, n + 1),
                            pairing_power(a, n + 2) * cobar.coboundary[n]));
  }
}

TEST_CASE("cobar complex is a complex with the expected cohomology") {
  const auto cobar = cobar_complex(kx2(), 5);
  for (int n = 0; n + 1 < 5; ++n) CHECK(is_zero(SparseMatrix<Rational>(cobar.coboundary[n + 1] * cobar.coboundary[n])));
  CHECK(cohomology(cobar, 0, 4).dims() == std::vector<Index>{2, 1, 1, 1, 1});
  CHECK_THROWS_AS(cohomology(cobar, 0, 5), RangeExceedsComputedDegrees);
}

TEST_CASE("cochain algebra basics") {
  const auto a = kx2();
  const CochainAlgebra<Rational> ca(a, 3);
  const auto one = ca.unit();
  CHECK(ca.is_cocycle(one, 0));
  CHECK_FALSE(ca.is_coboundary(one, 0));
  for (int n = 0; n <= 3; ++n)
    for (const auto& x : ca.representatives(n)) {
      CHECK(ca.is_cocycle(x, n));
      CHECK(ca.cup(one, 0, x, n) == x);
      CHECK(ca.cup(x, n, one, 0) == x);
      if (n >= 1) CHECK(ca.is_cocycle(ca.delta(x, n), n - 1));
    }
  CHECK(ca.representatives(1).size() == 1);
  CHECK_THROWS_AS(ca.representatives(4), DegreeOutOfRange);
  CHECK(ca.delta(one, 0).size() == 0);
}
