#include "cactus/algebra_io.hpp"
#include "cactus/frobenius.hpp"
#include "cactus/tensor_ops.hpp"

#include <doctest.h>

using namespace cactus;
using Kind = AlgebraError::Kind;

namespace {

const Field<Rational> Q;

FrobeniusAlgebra<Rational> load(const std::string& name) {
  return load_algebra(read_algebra_spec(std::string(CACTUS_DATA_DIR) + "/" + name), Q);
}

Kind error_of(const std::string& text) {
  try {
    load_algebra(parse_algebra_spec(text), Q);
  } catch (const AlgebraError& e) {
    return e.kind();
  }
  FAIL("expected an AlgebraError");
  return Kind::BadSpec;
}

Tensor<Rational> tensor(std::initializer_list<std::pair<std::vector<int>, long>> terms, int arity) {
  Tensor<Rational> t(arity);
  for (const auto& [index, c] : terms) t.add(index, Rational(c));
  return t;
}

}  // namespace

TEST_CASE("pairing matrices of the fixtures") {
  using G = std::vector<std::vector<Rational>>;
  CHECK(load("kx2.json").gram() == G{{0, 1}, {1, 0}});
  CHECK(load("kz2.json").gram() == G{{0, 1}, {1, 0}});
  CHECK(load("kx3.json").gram() == G{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
}

TEST_CASE("fixtures match truncated polynomial constructions") {
  CHECK(load("kx2.json") == truncated_polynomial(Q, {0, 0}, {0, 1}));
  CHECK(load("kx3.json") == truncated_polynomial(Q, {0, 0, 0}, {0, 0, 1}));
  CHECK(load("kz2.json") == truncated_polynomial(Q, {-1, 0}, {0, 1}, "t"));
}

TEST_CASE("coproduct examples") {
  const auto kx2 = load("kx2.json");
  // psi(1) = 1(x)x + x(x)1, psi(x) = x(x)x
  CHECK(kx2.coproduct(tensor({{{0}, 1}}, 1)) == tensor({{{0, 1}, 1}, {{1, 0}, 1}}, 2));
  CHECK(kx2.coproduct(tensor({{{1}, 1}}, 1)) == tensor({{{1, 1}, 1}}, 2));

  const auto kz2 = load("kz2.json");
  // psi(1) = 1(x)t + t(x)1, psi(t) = 1(x)1 + t(x)t
  CHECK(kz2.coproduct(tensor({{{0}, 1}}, 1)) == tensor({{{0, 1}, 1}, {{1, 0}, 1}}, 2));
  CHECK(kz2.coproduct(tensor({{{1}, 1}}, 1)) == tensor({{{0, 0}, 1}, {{1, 1}, 1}}, 2));
}

TEST_CASE("coproduct is coassociative, cocommutative, counital and a bimodule map") {
  for (const char* name : {"kx2.json", "kz2.json", "kx3.json"}) {
    const auto a = load(name);
    const int d = a.dim();
    const SparseMatrix<Rational> id = identity<Rational>(d);
    CHECK(equal<Rational>(kron(a.psi(), id) * a.psi(), kron(id, a.psi()) * a.psi()));
    CHECK(equal<Rational>(permute_slots<Rational>(d, {1, 0}) * a.psi(), a.psi()));
    CHECK(equal<Rational>(kron(a.eps(), id) * a.psi(), id));
    // psi o mu = (mu (x) id) o (id (x) psi)
    CHECK(equal<Rational>(a.psi() * a.mu(), kron(a.mu(), id) * kron(id, a.psi())));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        CHECK(a.pairing(a.dual_basis_vector(i), a.basis_vector(j)) == Rational(i == j ? 1 : 0));
  }
}

TEST_CASE("prime field loading") {
  CHECK_NOTHROW(load_algebra(read_algebra_spec(std::string(CACTUS_DATA_DIR) + "/kz2.json"), Field<Fp>(2)));
  const auto spec = parse_algebra_spec(
      R"({"field": "Q", "basis": ["1", "x"], "unit": [1, 0], "mul": [[0,0,0,1],[0,1,1,1],[1,0,1,1]], "aug": [0, 2]})");
  CHECK_NOTHROW(load_algebra(spec, Field<Fp>(7)));
  try {
    load_algebra(spec, Field<Fp>(2));
    FAIL("the pairing vanishes in characteristic 2");
  } catch (const AlgebraError& e) {
    CHECK(e.kind() == Kind::DegeneratePairing);
  }
}

TEST_CASE("invalid algebras are rejected") {
  const std::string base = R"("field": "Q", "basis": ["1", "x"], "unit": [1, 0],)";
  CHECK(error_of("{" + base + R"("mul": [[0,0,0,1],[0,1,1,1],[1,0,1,1]], "aug": [1, 0]})") ==
        Kind::DegeneratePairing);
  CHECK(error_of("{" + base + R"("mul": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1]], "aug": [0, 1], "degrees": [0, 2]})") ==
        Kind::GradedUnsupported);
  CHECK(error_of("{" + base + R"("mul": [[0,0,0,1],[0,1,1,1],[1,0,1,2]], "aug": [0, 1]})") ==
        Kind::NotCommutative);
  CHECK(error_of(R"({"field": "Q", "basis": ["1", "x"], "unit": [0, 1],
    "mul": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1]], "aug": [0, 1]})") ==
        Kind::NoUnit);
  CHECK(error_of(R"({"field": "Q", "basis": ["1"]})") == Kind::BadSpec);
  CHECK(error_of("not json") == Kind::BadSpec);

  // xx = y, xy = x, yy = x: (xy)y = x but x(yy) = y.
  const std::string bad = R"({"field": "Q", "basis": ["1", "x", "y"], "unit": [1, 0, 0],
    "mul": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[0,2,2,1],[2,0,2,1],[1,1,2,1],[1,2,1,1],[2,1,1,1],[2,2,1,1]],
    "aug": [0, 0, 1]})";
  CHECK(error_of(bad) == Kind::NotAssociative);
}

TEST_CASE("spec serialization roundtrips") {
  for (const char* name : {"kx2.json", "kz2.json", "kx3.json"}) {
    const auto a = load(name);
    const auto again = load_algebra(parse_algebra_spec(dump_algebra_spec(to_spec(a))), Q);
    CHECK(again == a);
  }
}
