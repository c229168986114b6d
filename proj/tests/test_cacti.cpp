#include "cactus/cacti.hpp"

#include <doctest.h>

#include <functional>
#include <numeric>
#include <set>

using namespace cactus;
using Kind = CactusError::Kind;

namespace {

Kind error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const CactusError& e) {
    return e.kind();
  }
  FAIL("expected a CactusError");
  return Kind::BadMetric;
}

// Brute force: some i != j appear cyclically as i..j..i..j.
bool interleaves(const std::vector<int>& w) {
  const int n = static_cast<int>(w.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d)
          if (w[a] == w[c] && w[b] == w[d] && w[a] != w[b]) return true;
  return false;
}

// Lobe/node incidence graph is a tree.
bool incidence_is_tree(const SpinyCactus& sc) {
  const auto nodes = sc.nodes();
  const int vertices = sc.lobes() + static_cast<int>(nodes.size());
  std::vector<int> parent(static_cast<std::size_t>(vertices));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int edges = 0;
  for (std::size_t v = 0; v < nodes.size(); ++v)
    for (int lobe : std::set<int>(nodes[v].lobes.begin(), nodes[v].lobes.end())) {
      ++edges;
      const int a = find(lobe - 1);
      const int b = find(sc.lobes() + static_cast<int>(v));
      if (a == b) return false;
      parent[a] = b;
    }
  return edges == vertices - 1;
}

void for_each_word(int length, int labels, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> w(static_cast<std::size_t>(length), 1);
  while (true) {
    f(w);
    int i = length - 1;
    while (i >= 0 && w[i] == labels) w[i--] = 1;
    if (i < 0) return;
    ++w[i];
  }
}

}  // namespace

TEST_CASE("validate_cactus examples") {
  const Cactus one = validate_cactus({1});
  CHECK(one.lobes() == 1);
  CHECK(one.nodes().empty());

  const Cactus c = validate_cactus({1, 2, 1, 3});
  CHECK(c.lobes() == 3);
  const auto nodes = c.nodes();
  REQUIRE(nodes.size() == 2);
  for (const auto& n : nodes) CHECK(n.multiplicity() == 2);
  CHECK(std::set<int>(nodes[0].lobes.begin(), nodes[0].lobes.end()) != std::set<int>(nodes[1].lobes.begin(), nodes[1].lobes.end()));

  CHECK(error_of([] { validate_cactus({1, 2, 1, 2}); }) == Kind::InterleavedLobes);
  CHECK(error_of([] { validate_cactus({1, 3}); }) == Kind::MissingLobe);
  CHECK(error_of([] { validate_cactus({}); }) == Kind::MissingLobe);
  CHECK(error_of([] { validate_cactus({0, 1}); }) == Kind::BadParametrization);
  CHECK(error_of([] { validate_cactus({1, 2}, {1, 1}); }) == Kind::BadParametrization);
}

TEST_CASE("noncrossing is equivalent to an acyclic incidence graph") {
  int checked = 0;
  for (int length = 1; length <= 6; ++length)
    for_each_word(length, 3, [&](const std::vector<int>& w) {
      const std::set<int> labels(w.begin(), w.end());
      if (*labels.rbegin() != static_cast<int>(labels.size())) return;
      CHECK(is_noncrossing(w) == !interleaves(w));
      if (!interleaves(w)) CHECK(incidence_is_tree(SpinyCactus(w)));
      ++checked;
    });
  CHECK(checked > 0);
}

TEST_CASE("compose examples") {
  const Cactus id = Cactus::identity();
  const Cactus c = validate_cactus({1, 2, 1, 3});
  CHECK(compose(id, 1, c) == c);
  for (int i = 1; i <= 3; ++i) CHECK(compose(c, i, id) == c);

  const Cactus fig8 = validate_cactus({1, 2});
  const Cactus chain = compose(fig8, 1, fig8);
  CHECK(chain.word() == std::vector<int>{1, 2, 3});
  CHECK(chain.basepoints() == std::vector<int>{0, 1, 2});
  REQUIRE(chain.nodes().size() == 1);
  CHECK(chain.nodes()[0].multiplicity() == 3);

  CHECK(error_of([&] { compose(fig8, 3, fig8); }) == Kind::IndexOutOfRange);
  CHECK(error_of([&] { compose(fig8, 0, fig8); }) == Kind::IndexOutOfRange);
}

TEST_CASE("full_compose examples") {
  const Cactus id = Cactus::identity();
  const Cactus fig8 = validate_cactus({1, 2});
  const Cactus c = validate_cactus({1, 2, 1, 3});
  CHECK(full_compose(id, {c}) == c);
  CHECK(full_compose(fig8, {id, id}) == fig8);
  CHECK(full_compose(fig8, {fig8, id}) == compose(fig8, 1, fig8));
  CHECK(error_of([&] { full_compose(fig8, {id}); }) == Kind::ArityMismatch);
}

TEST_CASE("spiny degeneracies") {
  const SpinyCactus one = SpinyCactus::circle(1);
  CHECK(spiny_degeneracy(one, 1, 0).counts() == std::vector<int>{2});

  const SpinyCactus fig8({1, 2});
  const SpinyCactus s = spiny_degeneracy(fig8, 2, 0);
  CHECK(s.counts() == std::vector<int>{1, 2});
  CHECK(Cactus(s) == Cactus(fig8));
  CHECK(error_of([&] { spiny_degeneracy(fig8, 2, 1); }) == Kind::SlotOutOfRange);
  CHECK(error_of([&] { spiny_degeneracy(fig8, 3, 0); }) == Kind::SlotOutOfRange);
}

TEST_CASE("spiny faces") {
  const SpinyCactus fig8({1, 1, 2}, {0, 2});
  const SpinyCactus f = spiny_face(fig8, 1, 0);
  CHECK(f.counts() == std::vector<int>{1, 1});
  CHECK(Cactus(f) == validate_cactus({1, 2}));

  CHECK(spiny_face(SpinyCactus::circle(3), 1, 1).counts() == std::vector<int>{2});

  const SpinyCactus c({1, 2, 1, 3});
  const SpinyCactus pinched = spiny_face(c, 1, 0);
  CHECK(Cactus(pinched) != Cactus(c));
  int largest = 0;
  for (const auto& n : pinched.nodes()) largest = std::max(largest, n.multiplicity());
  CHECK(largest == 3);

  CHECK(error_of([] { spiny_face(SpinyCactus::circle(1), 1, 0); }) == Kind::IllegalPinch);
  CHECK(error_of([&] { spiny_face(fig8, 1, 2); }) == Kind::SlotOutOfRange);
}

TEST_CASE("degeneracy followed by the adjacent face is the identity") {
  for (const auto& c : enumerate_cacti(3)) {
    const SpinyCactus& sc = c.spiny();
    for (int k = 1; k <= sc.lobes(); ++k)
      for (int i = 0; i < sc.count(k); ++i) {
        const SpinyCactus s = spiny_degeneracy(sc, k, i);
        CHECK(spiny_face(s, k, i) == sc);
        if (i + 1 < s.count(k)) CHECK(spiny_face(s, k, i + 1) == sc);
      }
  }
}

TEST_CASE("global index") {
  const SpinyCactus fig8({1, 1, 2, 2}, {0, 2});
  CHECK(fig8.global_index(1, 0) == 0);
  CHECK(fig8.global_index(1, 1) == 1);
  CHECK(fig8.global_index(2, 0) == 2);
  CHECK(fig8.global_index(2, 1) == 3);
  CHECK(error_of([&] { fig8.global_index(2, 2); }) == Kind::SlotOutOfRange);

  const SpinyCactus circle = SpinyCactus::circle(4);
  for (int i = 0; i < 4; ++i) CHECK(circle.global_index(1, i) == i);

  for (const auto& sc : enumerate_spiny(2, 5)) {
    std::set<int> seen;
    for (int k = 1; k <= sc.lobes(); ++k)
      for (int i = 0; i < sc.count(k); ++i) seen.insert(sc.global_index(k, i));
    CHECK(static_cast<int>(seen.size()) == sc.total_points());
    if (sc.basepoints()[0] == 0) CHECK(sc.global_index(1, 0) == 0);
  }
}

TEST_CASE("spiny composition") {
  const SpinyCactus fig8 = SpinyCactus({1, 1, 2}, {0, 2});
  CHECK(spiny_compose(fig8, {SpinyCactus::circle(2), SpinyCactus::circle(1)}) == fig8);

  const SpinyCactus r = spiny_compose(fig8, {SpinyCactus({1, 2}), SpinyCactus::circle(1)});
  CHECK(r.lobes() == 3);
  CHECK(Cactus(r) == compose(Cactus(fig8), 1, validate_cactus({1, 2})));

  CHECK(error_of([&] { spiny_compose(fig8, {SpinyCactus::circle(3), SpinyCactus::circle(1)}); }) ==
        Kind::CountMismatch);
  CHECK(error_of([&] { spiny_compose(fig8, {SpinyCactus::circle(2)}); }) == Kind::ArityMismatch);
}

TEST_CASE("generator decomposition") {
  const auto one = decompose_generators(Cactus::identity());
  CHECK(one.steps.empty());
  CHECK(recompose(one) == Cactus::identity());

  const Cactus fig8 = validate_cactus({1, 2});
  const auto two = decompose_generators(fig8);
  CHECK(two.steps.size() == 1);
  CHECK(recompose(two) == fig8);

  for (const auto& c : enumerate_cacti(3)) {
    const auto dec = decompose_generators(c);
    CHECK(dec.steps.size() == 2);
    CHECK(recompose(dec) == c);
  }
}

TEST_CASE("enumerations agree") {
  for (int n = 1; n <= 3; ++n) {
    auto a = enumerate_cacti(n);
    auto b = enumerate_cacti_bruteforce(n);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
  CHECK(enumerate_cacti(2).size() == 24);
}

TEST_CASE("realize examples") {
  const MetricCactus circle(Cactus::identity(), {Rational(1)});
  const auto p = realize(circle, {{Rational(1, 2), Rational(1, 2)}});
  CHECK(p == std::vector<Rational>{0, Rational(1, 2), Rational(1, 2)});

  const MetricCactus fig8(validate_cactus({1, 2}), {Rational(1, 2), Rational(1, 2)});
  const auto q = realize(fig8, {{Rational(1)}, {Rational(1)}});
  CHECK(q == std::vector<Rational>{0, 0, Rational(1, 2), 0, Rational(1, 2)});

  CHECK(error_of([&] { realize(circle, {{Rational(1, 2), Rational(1, 3)}}); }) == Kind::BadBarycentric);
  CHECK(error_of([&] { realize(circle, {{Rational(2), Rational(-1)}}); }) == Kind::BadBarycentric);
  CHECK(error_of([&] { realize(fig8, {{Rational(1)}}); }) == Kind::BadBarycentric);
  CHECK(error_of([] { MetricCactus(Cactus::identity(), {Rational(1, 2)}); }) == Kind::BadMetric);
}

TEST_CASE("metric composition keeps the total length") {
  const MetricCactus fig8(validate_cactus({1, 2}), {Rational(1, 3), Rational(2, 3)});
  const MetricCactus r = compose(fig8, 2, fig8);
  CHECK(r.cactus() == compose(fig8.cactus(), 2, fig8.cactus()));
  Rational total = 0;
  for (const auto& x : r.lengths()) total += x;
  CHECK(total == 1);
  const auto radii = r.radii();
  CHECK(radii[0] == Rational(1, 3));
  CHECK(radii[1] == Rational(2, 9));
  CHECK(radii[2] == Rational(4, 9));
}
