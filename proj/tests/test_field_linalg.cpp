#include "cactus/field.hpp"
#include "cactus/linalg.hpp"

#include <doctest.h>

using namespace cactus;

TEST_CASE("rational parsing is exact") {
  Field<Rational> q;
  CHECK(q.parse("1/3") + q.parse("2/3") == Rational(1));
  CHECK(q.parse("-4/6") == Rational(-2, 3));
  CHECK(q.parse("7") == Rational(7));
  CHECK_THROWS_AS(q.parse("x"), FieldError);
  CHECK_THROWS_AS(q.parse("1/0"), FieldError);
}

TEST_CASE("prime field arithmetic") {
  Field<Fp> f(7);
  const Fp three = f.from_int(3);
  CHECK((three * three.inverse()).value() == 1);
  CHECK(f.from_int(-1).value() == 6);
  CHECK(f.parse("1/2").value() == 4);
  CHECK((f.from_int(5) + f.from_int(4)).value() == 2);
  CHECK_THROWS_AS(f.from_int(0).inverse(), FieldError);
  CHECK_THROWS_AS(Field<Fp>(8), FieldError);
}

TEST_CASE("field specs") {
  CHECK(FieldSpec::parse("q").rational());
  CHECK(FieldSpec::parse("p:7").prime == 7);
  CHECK(FieldSpec::parse("p:7").name() == "F7");
  CHECK_THROWS_AS(FieldSpec::parse("p:9"), FieldError);
  CHECK_THROWS_AS(FieldSpec::parse("r"), FieldError);
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2147483647));
}

TEST_CASE("echelon rank and relations") {
  Echelon<Rational> e(3, true);
  CHECK_FALSE(e.insert_tracked({{0, Rational(1)}, {1, Rational(1)}}, 0));
  CHECK_FALSE(e.insert_tracked({{1, Rational(1)}, {2, Rational(1)}}, 1));
  // (1,0,-1) = v0 - v1
  const auto rel = e.insert_tracked({{0, Rational(1)}, {2, Rational(-1)}}, 2);
  REQUIRE(rel);
  SparseVec<Rational> expected{{0, Rational(-1)}, {1, Rational(1)}, {2, Rational(1)}};
  CHECK(*rel == expected);
  CHECK(e.rank() == 2);
  CHECK(e.contains({{0, Rational(2)}, {2, Rational(-2)}}));
  CHECK_FALSE(e.contains({{0, Rational(1)}}));
}

TEST_CASE("kernel and rank of a rank-one map") {
  SparseMatrix<Rational> m(2, 3);
  m.insert(0, 0) = 1;
  m.insert(0, 1) = 2;
  m.insert(1, 0) = 2;
  m.insert(1, 1) = 4;
  CHECK(rank(m) == 1);
  const auto k = kernel(m);
  CHECK(k.size() == 2);
  for (const auto& v : k) CHECK(is_zero(apply(m, to_dense(v, 3))));
}

TEST_CASE("kron matches slot ordering") {
  SparseMatrix<Rational> a(2, 2), b(2, 2);
  a.insert(0, 1) = 1;
  b.insert(1, 0) = 3;
  const auto k = kron(a, b);
  CHECK(k.rows() == 4);
  CHECK(k.coeff(0 * 2 + 1, 1 * 2 + 0) == Rational(3));
  CHECK(k.nonZeros() == 1);
}
