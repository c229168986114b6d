#include "cactus/cyclic.hpp"
#include "cactus/frobenius.hpp"
#include "cactus/hochschild.hpp"

#include <doctest.h>

using namespace cactus;

namespace {

// Dense Gaussian elimination, kept separate from the sparse echelon engine.
Index dense_rank(const SparseMatrix<Rational>& m) {
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(m.rows()),
                                       std::vector<Rational>(static_cast<std::size_t>(m.cols())));
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix<Rational>::InnerIterator it(m, k); it; ++it) a[it.row()][it.col()] = it.value();
  Index r = 0;
  for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Index p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (Index j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

FrobeniusAlgebra<Rational> kx2() { return truncated_polynomial(Field<Rational>{}, {0, 0}, {0, 1}); }

}  // namespace

TEST_CASE("constant module satisfies the cyclic identities") {
  const auto m = constant_module<Rational>(5);
  const auto report = check_cyclic_identities(m, 4);
  CHECK(report.ok());
  CHECK(report.count() > 0);
  CHECK_NOTHROW(require_cyclic_identities(m, 4));
}

TEST_CASE("corrupted face is reported") {
  auto m = cyclic_bar(kx2(), 4);
  m.faces[2][0] = SparseMatrix<Rational>(m.faces[2][0] * Rational(2));
  const auto report = check_cyclic_identities(m, 3);
  CHECK_FALSE(report.ok());
  REQUIRE(report.first_violation() != nullptr);
  CHECK(report.first_violation()->degree <= 3);
  CHECK_THROWS_AS(require_cyclic_identities(m, 3), IdentityViolation);
}

TEST_CASE("constant module homology is K in degree zero") {
  const auto m = constant_module<Rational>(6);
  const auto dims = homology(to_complex(m), 0, 5).dims();
  CHECK(dims == std::vector<Index>{1, 0, 0, 0, 0, 0});
}

TEST_CASE("zero module") {
  const auto m = zero_module<Rational>(3);
  CHECK(check_cyclic_identities(m, 2).ok());
  const auto b = connes_B(m, 1);
  CHECK(b.rows() == 0);
  CHECK(b.cols() == 0);
  CHECK(homology(to_complex(m), 0, 2).dims() == std::vector<Index>{0, 0, 0});
}

TEST_CASE("dual of the cyclic bar construction is cyclic") {
  const auto m = cyclic_bar(kx2(), 5);
  const auto x = dualize(m);
  CHECK(check_cyclic_identities(x, 4).ok());
  CHECK(check_cyclic_identities(dualize(x), 4).ok());
}

TEST_CASE("Connes operator relations on k[x]/x^2") {
  const auto m = cyclic_bar(kx2(), 6);
  const auto c = to_complex(m);
  for (int n = 0; n + 2 <= 6; ++n) {
    const auto b0 = connes_B(m, n);
    const auto b1 = connes_B(m, n + 1);
    CHECK(is_zero(SparseMatrix<Rational>(b1 * b0)));
  }
  for (int n = 1; n + 1 <= 6; ++n) {
    const SparseMatrix<Rational> anti = c.boundary[n + 1] * connes_B(m, n) + connes_B(m, n - 1) * c.boundary[n];
    CHECK(is_zero(anti));
  }
  CHECK_THROWS_AS(connes_B(m, 6), RangeExceedsComputedDegrees);
}

TEST_CASE("homology agrees with a dense rank computation") {
  const auto m = cyclic_bar(kx2(), 6);
  const auto c = to_complex(m);
  const auto dims = homology(c, 0, 5).dims();
  for (int n = 0; n <= 5; ++n) {
    const Index expected = c.dims[n] - dense_rank(c.boundary[n]) - dense_rank(c.boundary[n + 1]);
    CHECK(dims[n] == expected);
  }
  CHECK(normalized_homology_dims(m, 0, 5) == dims);
}

TEST_CASE("homology range is checked") {
  const auto c = to_complex(constant_module<Rational>(3));
  CHECK_THROWS_AS(homology(c, 0, 3), RangeExceedsComputedDegrees);
}
