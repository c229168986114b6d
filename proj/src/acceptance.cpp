#include "cactus/acceptance.hpp"

#include "cactus/algebra_io.hpp"
#include "cactus/cacti.hpp"
#include "cactus/hochschild.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <sstream>

namespace cactus {

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& witness) {
  if (!ok) throw Failure(witness);
}

std::string join(const std::vector<Index>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

const std::vector<std::string> kFixtures = {"kx2", "kz2", "kx3"};

template <ExactScalar S>
FrobeniusAlgebra<S> fixture(const SuiteOptions& o, const std::string& name, const Field<S>& field) {
  return load_algebra(read_algebra_spec(o.data_dir + "/" + name + ".json"), field);
}

// Runs `body(field)` over the requested field.
template <typename Body>
std::string with_field(const FieldSpec& spec, Body&& body) {
  if (spec.rational()) return body(Field<Rational>{});
  return body(Field<Fp>(spec.prime));
}

// ------------------------------------------------------------- criteria

std::string cyclic_identities(const SuiteOptions& o) {
  return with_field(o.field, [&](const auto& field) {
    std::size_t relations = 0;
    for (const auto& name : kFixtures) {
      const auto a = fixture(o, name, field);
      const auto report = check_cyclic_identities(cyclic_bar(a, 6), 5);
      if (const auto* bad = report.first_violation())
        throw Failure(name + ": " + bad->relation + " in degree " + std::to_string(bad->degree));
      relations += report.count();
    }
    return std::to_string(relations) + " relations, 3 algebras, degrees 0..5";
  });
}

template <ExactScalar S>
std::size_t complex_sanity_over(const SuiteOptions& o, const Field<S>& field) {
  std::size_t checks = 0;
  for (const auto& name : kFixtures) {
    const auto a = fixture(o, name, field);
    const auto bar = cyclic_bar(a, 8);
    const auto c = to_complex(bar);
    std::vector<SparseMatrix<S>> b;
    for (int n = 0; n <= 7; ++n) b.push_back(connes_B(bar, n));
    const std::string where = name + " over " + field.name();
    for (int n = 0; n <= 6; ++n) {
      if (n >= 2) expect(is_zero<S>(SparseMatrix<S>(c.boundary[n - 1] * c.boundary[n])), where + ": bb != 0 in degree " + std::to_string(n));
      expect(is_zero<S>(SparseMatrix<S>(b[n + 1] * b[n])), where + ": BB != 0 in degree " + std::to_string(n));
      SparseMatrix<S> anti = c.boundary[n + 1] * b[n];
      if (n >= 1) anti += SparseMatrix<S>(b[n - 1] * c.boundary[n]);
      expect(is_zero<S>(anti), where + ": bB + Bb != 0 in degree " + std::to_string(n));
      checks += 3;
    }
  }
  return checks;
}

std::string complex_sanity(const SuiteOptions& o) {
  std::size_t checks = complex_sanity_over(o, Field<Rational>{});
  checks += complex_sanity_over(o, Field<Fp>(7));
  if (!o.field.rational() && o.field.prime != 7) checks += complex_sanity_over(o, Field<Fp>(o.field.prime));
  return std::to_string(checks) + " matrix identities, degrees 0..6";
}

std::string operad_axioms(const SuiteOptions&) {
  std::vector<Cactus> small, big;
  for (int n = 1; n <= 3; ++n)
    for (const auto& c : enumerate_cacti(n)) {
      big.push_back(c);
      if (n <= 2) small.push_back(c);
    }
  const Cactus id = Cactus::identity();
  std::size_t checks = 0;
  for (const auto& c : big) {
    expect(compose(id, 1, c) == c, "left unit fails on " + to_string(c.spiny()));
    std::vector<Cactus> ids(static_cast<std::size_t>(c.lobes()), id);
    expect(full_compose(c, ids) == c, "gamma(c; id..id) != c for " + to_string(c.spiny()));
    for (int i = 1; i <= c.lobes(); ++i) expect(compose(c, i, id) == c, "right unit fails on " + to_string(c.spiny()));
    checks += 2 + c.lobes();
  }
  for (const auto& a : big)
    for (int i = 1; i <= a.lobes(); ++i)
      for (const auto& b : small) {
        const Cactus ab = compose(a, i, b);
        for (const auto& c : small) {
          for (int j = 1; j <= b.lobes(); ++j) {
            const bool ok = compose(ab, i + j - 1, c) == compose(a, i, compose(b, j, c));
            expect(ok, "sequential associativity: " + to_string(a.spiny()) + " o_" + std::to_string(i) + " " +
                           to_string(b.spiny()) + " o_" + std::to_string(j) + " " + to_string(c.spiny()));
            ++checks;
          }
          for (int k = i + 1; k <= a.lobes(); ++k) {
            const bool ok = compose(compose(a, k, c), i, b) == compose(ab, k + b.lobes() - 1, c);
            expect(ok, "parallel associativity: " + to_string(a.spiny()) + " lobes " + std::to_string(i) + "," +
                           std::to_string(k));
            ++checks;
          }
        }
      }
  return std::to_string(checks) + " identities over " + std::to_string(big.size()) + " cacti";
}

std::string generator_roundtrip(const SuiteOptions&) {
  std::size_t total = 0;
  std::string counts;
  for (int n = 1; n <= 4; ++n) {
    const auto cacti = enumerate_cacti(n);
    const auto direct = enumerate_cacti_bruteforce(n);
    expect(cacti == direct, "enumerators disagree at " + std::to_string(n) + " lobes: " +
                                std::to_string(cacti.size()) + " vs " + std::to_string(direct.size()));
    for (const auto& c : cacti) {
      const auto dec = decompose_generators(c);
      expect(static_cast<int>(dec.steps.size()) == n - 1, "wrong pinch count for " + to_string(c.spiny()));
      expect(recompose(dec) == c, "roundtrip fails for " + to_string(c.spiny()));
    }
    total += cacti.size();
    counts += (n > 1 ? "," : "") + std::to_string(cacti.size());
  }
  return std::to_string(total) + " cacti (" + counts + " by lobe count)";
}

std::string cactus_diagrams(const SuiteOptions& o) {
  return with_field(o.field, [&](const auto& field) {
    const auto spiny = enumerate_spiny(2, 5);
    std::size_t squares = 0, triangles = 0;
    for (const std::string name : {"kx2", "kz2"}) {
      const auto a = fixture(o, name, field);
      for (const auto& sc : spiny)
        for (const auto& check : check_cactus_diagrams(a, sc)) {
          expect(check.ok, name + ": " + check.name + " square fails at " + check.witness);
          ++squares;
        }
      // figure-eight refined by figure-eights (and circles), at most 4 points
      const auto small = enumerate_spiny(2, 4);
      for (const auto& sc : small) {
        std::vector<std::vector<SpinyCactus>> options(2);
        for (int k = 1; k <= 2; ++k) {
          const int j = sc.count(k);
          for (int b = 0; b < j; ++b) options[k - 1].push_back(SpinyCactus::circle(j, b));
          for (const auto& r : small)
            if (r.total_points() == j) options[k - 1].push_back(r);
        }
        for (const auto& r1 : options[0])
          for (const auto& r2 : options[1]) {
            if (r1.lobes() == 1 && r2.lobes() == 1) continue;
            const auto check = check_composition_triangle(a, sc, {r1, r2});
            expect(check.ok, name + ": composition triangle fails at " + check.witness);
            ++triangles;
          }
      }
    }
    return std::to_string(squares) + " squares over " + std::to_string(spiny.size()) + " spiny cacti, " +
           std::to_string(triangles) + " triangles";
  });
}

std::string displayed_computations(const SuiteOptions& o) {
  return with_field(o.field, [&](const auto& field) {
    using S = typename std::decay_t<decltype(field.from_int(0))>;
    std::size_t checks = 0;
    for (const auto& name : kFixtures) {
      const auto a = fixture(o, name, field);
      for (int p = 1; p <= 4; ++p)
        for (int q = 1; p + q <= 5; ++q) {
          const std::string where = name + " p=" + std::to_string(p) + " q=" + std::to_string(q);
          const auto c = displayed_composites(a, p, q);
          expect(equal<S>(explicit_two_lobe_pinch(a, p, q), spiny_structure_map(a, figure_eight(p, q))),
                 where + ": pinch differs from the spiny structure map");
          if (p + q - 1 <= 4) {
            expect(equal<S>(c.pinch_then_degeneracy, c.degeneracy_then_pinch), where + ": degeneracy composites differ");
            expect(equal<S>(c.degeneracy_then_pinch, check_degeneracy_square(a, figure_eight(p, q), 2, 0).rhs),
                   where + ": degeneracy composite differs from the cactus object square");
            checks += 2;
          }
          if (p + q <= 4) {
            expect(equal<S>(c.face_then_pinch, c.pinch_then_face), where + ": face composites differ");
            expect(equal<S>(c.pinch_then_face, check_face_square(a, figure_eight(p, q + 1), 2, 0).lhs),
                   where + ": face composite differs from the cactus object square");
            checks += 2;
          }
          ++checks;
        }
    }
    return std::to_string(checks) + " matrix equalities";
  });
}

std::string homology_oracle(const SuiteOptions& o) {
  const std::vector<std::pair<std::string, std::vector<Index>>> expected = {{"kx2", {2, 1, 1, 1, 1, 1}},
                                                                            {"kz2", {2, 0, 0, 0, 0, 0}}};
  std::string detail;
  for (const auto& [name, dims] : expected) {
    const auto bar = cyclic_bar(fixture(o, name, Field<Rational>{}), 6);
    const auto full = homology(to_complex(bar), 0, 5).dims();
    const auto normalized = normalized_homology_dims(bar, 0, 5);
    expect(full == dims, name + ": unnormalized dims " + join(full) + ", expected " + join(dims));
    expect(normalized == dims, name + ": normalized dims " + join(normalized) + ", expected " + join(dims));
    detail += (detail.empty() ? "" : ", ") + name + " " + join(full);
  }
  if (o.field.rational()) return detail;
  // the expected values are over Q; over F_p the two complexes must still agree
  const Field<Fp> fp(o.field.prime);
  for (const auto& [name, dims] : expected) {
    const auto bar = cyclic_bar(fixture(o, name, fp), 6);
    const auto full = homology(to_complex(bar), 0, 5).dims();
    expect(normalized_homology_dims(bar, 0, 5) == full, name + " over " + fp.name() + ": normalized dims disagree");
    detail += ", " + name + " over " + fp.name() + " " + join(full);
  }
  return detail;
}

std::string cobar_identification(const SuiteOptions& o) {
  return with_field(o.field, [&](const auto& field) {
    std::string detail;
    for (const auto& name : kFixtures) {
      const auto a = fixture(o, name, field);
      const auto dual = cohomology(dual_complex(a, 6), 0, 5).dims();
      const auto cobar = cohomology(cobar_complex(a, 6), 0, 5).dims();
      expect(dual == cobar, name + ": dual " + join(dual) + " vs cobar " + join(cobar));
      detail += (detail.empty() ? "" : ", ") + name + " " + join(dual);
    }
    return detail;
  });
}

template <ExactScalar S>
std::string bv_suite_for(const FrobeniusAlgebra<S>& a, const std::string& name, std::uint64_t seed,
                         int kClassDegree = 3) {
  const int kCochainDegree = 2 * kClassDegree;
  const CochainAlgebra<S> ca(a, kCochainDegree);
  struct Class {
    Vector<S> v;
    int deg;
    std::string label;
  };
  std::vector<Class> classes;
  std::mt19937_64 rng(seed);
  for (int n = 0; n <= kClassDegree; ++n) {
    const auto reps = ca.representatives(n);
    for (std::size_t r = 0; r < reps.size(); ++r)
      classes.push_back({reps[r], n, "H^" + std::to_string(n) + "[" + std::to_string(r) + "]"});
    if (reps.size() >= 2) {
      Vector<S> mix = Vector<S>::Zero(ca.dim(n));
      for (const auto& r : reps) mix += r * a.field().from_int(static_cast<long long>(rng() % 5) - 2);
      if (!is_zero(mix)) classes.push_back({mix, n, "H^" + std::to_string(n) + "[mix]"});
    }
  }
  std::size_t checks = 0;
  auto up_to_coboundary = [&](const Vector<S>& x, int n, const std::string& what) {
    expect(ca.is_coboundary(x, n), name + ": " + what);
    ++checks;
  };
  auto sign = [](int e) { return e % 2 == 0 ? 1 : -1; };
  auto scaled = [&](const Vector<S>& x, int s) -> Vector<S> { return s > 0 ? x : Vector<S>(-x); };

  const Vector<S> unit = ca.unit();
  expect(ca.is_cocycle(unit, 0), name + ": unit cochain is not a cocycle");
  for (const auto& c : classes) {
    expect(ca.is_cocycle(c.v, c.deg), name + ": " + c.label + " is not a cocycle");
    expect(ca.cup(unit, 0, c.v, c.deg) == c.v, name + ": unit . " + c.label + " != " + c.label);
    expect(ca.cup(c.v, c.deg, unit, 0) == c.v, name + ": " + c.label + " . unit != " + c.label);
    checks += 3;
    if (c.deg >= 1) {
      const Vector<S> d1 = ca.delta(c.v, c.deg);
      expect(ca.is_cocycle(d1, c.deg - 1), name + ": Delta " + c.label + " is not a cocycle");
      if (c.deg >= 2) up_to_coboundary(ca.delta(d1, c.deg - 1), c.deg - 2, "Delta^2 " + c.label + " is not exact");
      ++checks;
    }
    if (c.deg >= 0) {
      const Vector<S> br = ca.bracket(unit, 0, c.v, c.deg);
      if (c.deg >= 1) up_to_coboundary(br, c.deg - 1, "{unit, " + c.label + "} is not exact");
    }
  }
  for (const auto& x : classes)
    for (const auto& y : classes) {
      const int p = x.deg, q = y.deg;
      const std::string pair = x.label + ", " + y.label;
      const Vector<S> comm = ca.cup(x.v, p, y.v, q) - scaled(ca.cup(y.v, q, x.v, p), sign(p * q));
      up_to_coboundary(comm, p + q, "graded commutativity fails for " + pair);
      if (p + q >= 1) {
        const Vector<S> anti = ca.bracket(x.v, p, y.v, q) + scaled(ca.bracket(y.v, q, x.v, p), sign((p - 1) * (q - 1)));
        up_to_coboundary(anti, p + q - 1, "bracket antisymmetry fails for " + pair);
      }
      for (const auto& z : classes) {
        const int r = z.deg;
        if (p + q + r > kCochainDegree) continue;
        const std::string triple = pair + ", " + z.label;
        const Vector<S> assoc = ca.cup(ca.cup(x.v, p, y.v, q), p + q, z.v, r) - ca.cup(x.v, p, ca.cup(y.v, q, z.v, r), q + r);
        up_to_coboundary(assoc, p + q + r, "associativity fails for " + triple);
        if (p + q + r >= 1) {
          Vector<S> leib = ca.bracket(x.v, p, ca.cup(y.v, q, z.v, r), q + r);
          if (p + q >= 1) leib -= ca.cup(ca.bracket(x.v, p, y.v, q), p + q - 1, z.v, r);
          if (p + r >= 1) leib -= scaled(ca.cup(y.v, q, ca.bracket(x.v, p, z.v, r), p + r - 1), sign((p - 1) * q));
          up_to_coboundary(leib, p + q + r - 1, "Leibniz rule fails for " + triple);
        }
      }
    }
  return name + " " + std::to_string(classes.size()) + " classes/" + std::to_string(checks) + " checks";
}

std::string bv_suite(const SuiteOptions& o) {
  return with_field(o.field, [&](const auto& field) {
    std::string detail;
    for (const std::string name : {"kx2", "kx3"}) {
      detail += (detail.empty() ? "" : ", ") + bv_suite_for(fixture(o, name, field), name, o.seed);
    }
    return detail;
  });
}

// Cut points of the traversal circle read off a realize output.
std::vector<Rational> cut_points(const std::vector<Rational>& coords) {
  std::vector<Rational> cuts;
  Rational acc = 0;
  for (const auto& t : coords) {
    cuts.push_back(acc);
    acc += t;
  }
  return cuts;
}

// Traversal parameter of the point at offset u from 0_lobe.
Rational lobe_parameter(const MetricCactus& mc, int lobe, Rational u) {
  const auto occ = mc.cactus().spiny().occurrences(lobe);
  const auto off = mc.offsets(lobe);
  const Rational r = mc.radii()[static_cast<std::size_t>(lobe - 1)];
  while (u >= r) u -= r;
  for (std::size_t t = occ.size(); t-- > 0;)
    if (off[t] <= u) return mc.start(occ[t]) + (u - off[t]);
  return mc.start(occ.front());
}

MetricCactus sample_metric(const Cactus& c, int salt) {
  std::vector<Rational> lengths;
  Rational total = 0;
  for (int p = 0; p < c.spiny().total_points(); ++p) {
    lengths.emplace_back(1 + (p * 3 + salt) % 4);
    total += lengths.back();
  }
  for (auto& l : lengths) l /= total;
  return MetricCactus(c, lengths);
}

std::string realization(const SuiteOptions&) {
  // worked example: one lobe, two dividing points, global 0 at 0_1
  {
    const MetricCactus circle(Cactus(), {Rational(1)});
    const auto out = realize(circle, {{Rational(1, 2), Rational(1, 2)}});
    expect(out == std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1, 2)},
           "single-lobe example does not give (0, 1/2, 1/2)");
  }
  std::vector<Cactus> cacti;
  for (int n = 1; n <= 3; ++n)
    for (const auto& c : enumerate_cacti(n)) cacti.push_back(c);
  std::size_t instances = 0;
  for (std::size_t idx = 0; instances < 100; idx += 7) {
    const Cactus& c = cacti[idx % cacti.size()];
    const MetricCactus mc = sample_metric(c, static_cast<int>(idx));
    std::vector<std::vector<Rational>> bary;
    int total_j = 0;
    for (int k = 1; k <= c.lobes(); ++k) {
      const int j = 1 + static_cast<int>((idx + k) % 3);
      total_j += j;
      std::vector<Rational> point;
      Rational sum = 0;
      for (int t = 0; t < j; ++t) {
        point.emplace_back((t + k + static_cast<int>(idx)) % 3);
        sum += point.back();
      }
      if (sum == 0) {
        point[0] = 1;
        sum = 1;
      }
      for (auto& x : point) x /= sum;
      bary.push_back(std::move(point));
    }
    const auto out = realize(mc, bary);
    const int m = 1 + c.spiny().total_multiplicity();
    Rational sum = 0;
    for (const auto& x : out) {
      expect(x >= 0, "negative coordinate realizing " + to_string(c.spiny()));
      sum += x;
    }
    expect(sum == 1, "coordinates do not sum to 1 realizing " + to_string(c.spiny()));
    expect(static_cast<int>(out.size()) == total_j + m,
           "wrong simplex dimension realizing " + to_string(c.spiny()));
    ++instances;
  }

  // composition: special points of c o_i d are those of c and of d (carried
  // onto lobe i), with 0_i possibly dropped
  std::vector<Cactus> small;
  for (int n = 1; n <= 2; ++n)
    for (const auto& c : enumerate_cacti(n)) small.push_back(c);
  std::size_t compositions = 0;
  std::size_t agreements = 0;
  for (std::size_t s = 0; compositions < 10; ++s) {
    const Cactus& cc = small[(s * 5 + 3) % small.size()];
    const Cactus& dc = small[(s * 11 + 1) % small.size()];
    const int i = 1 + static_cast<int>(s % static_cast<std::size_t>(cc.lobes()));
    const MetricCactus c = sample_metric(cc, static_cast<int>(s));
    const MetricCactus d = sample_metric(dc, static_cast<int>(s) + 1);
    const MetricCactus e = compose(c, i, d);
    const std::string where = to_string(cc.spiny()) + " o_" + std::to_string(i) + " " + to_string(dc.spiny());
    expect(e.cactus().lobes() == cc.lobes() + dc.lobes() - 1, "wrong lobe count in " + where);
    const Rational r = c.radii()[static_cast<std::size_t>(i - 1)];
    const auto er = e.radii();
    for (int k = 1; k <= cc.lobes(); ++k) {
      if (k == i) continue;
      const int shifted = k < i ? k : k + dc.lobes() - 1;
      expect(er[shifted - 1] == c.radii()[k - 1], "radius of an outer lobe changed in " + where);
    }
    for (int k = 1; k <= dc.lobes(); ++k)
      expect(er[i + k - 2] == r * d.radii()[k - 1], "inner radius not scaled by r_i in " + where);
    // the combinatorial composite carries lobe i's special points into the
    // final arc of d, which is the metric picture when they land there
    const auto offsets = c.offsets(i);
    const Rational final_arc = r * d.start(dc.spiny().total_points() - 1);
    const bool in_final_arc =
        std::all_of(offsets.begin() + 1, offsets.end(), [&](const Rational& x) { return x > final_arc; });
    if (in_final_arc) {
      expect(e.cactus() == compose(cc, i, dc), "metric and combinatorial composition disagree for " + where);
      ++agreements;
    }
    auto ones = [](const Cactus& x) {
      return std::vector<std::vector<Rational>>(static_cast<std::size_t>(x.lobes()), {Rational(1)});
    };
    const auto composed = cut_points(realize(e, ones(e.cactus())));
    std::set<Rational> predicted;
    for (const auto& x : cut_points(realize(c, ones(cc)))) predicted.insert(x);
    for (const auto& x : cut_points(realize(d, ones(dc)))) predicted.insert(lobe_parameter(c, i, r * x));
    const Rational dropped = basepoint_parameter(c, i);
    const std::set<Rational> actual(composed.begin(), composed.end());
    for (const auto& x : actual) expect(predicted.count(x) == 1, "unexpected cut point in " + where);
    for (const auto& x : predicted)
      expect(actual.count(x) == 1 || x == dropped, "missing cut point " + x.str() + " in " + where);
    ++compositions;
  }
  expect(agreements > 0, "no sampled composition matched the combinatorial composite");
  return std::to_string(instances) + " realizations, " + std::to_string(compositions) + " compositions (" +
         std::to_string(agreements) + " combinatorially matched)";
}

}  // namespace

std::string bv_check(const AlgebraSpec& spec, const FieldSpec& field, int class_degree, std::uint64_t seed) {
  return with_field(field, [&](const auto& f) {
    try {
      return bv_suite_for(load_algebra(spec, f), "algebra", seed, class_degree);
    } catch (const Failure& e) {
      throw std::runtime_error(e.what());
    }
  });
}

std::string criterion_name(int id) {
  static const char* names[] = {"cyclic identities",        "complex sanity",       "operad axioms",
                                "generator roundtrip",      "cactus diagrams",      "pinch composites",
                                "homology oracle",          "cobar identification", "BV suite",
                                "realization map"};
  return id >= 1 && id <= kCriteria ? names[id - 1] : "unknown";
}

CriterionResult run_criterion(int id, const SuiteOptions& options) {
  using Runner = std::string (*)(const SuiteOptions&);
  static const Runner runners[] = {cyclic_identities,    complex_sanity, operad_axioms,  generator_roundtrip,
                                   cactus_diagrams, displayed_computations, homology_oracle,
                                   cobar_identification, bv_suite,       realization};
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (id < 1 || id > kCriteria) throw Failure("no such criterion");
    r.detail = runners[id - 1](options);
    r.pass = true;
  } catch (const std::exception& e) {
    r.detail = e.what();
    r.pass = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options,
                                       const std::function<void(const CriterionResult&)>& progress) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriteria; ++id) {
    results.push_back(run_criterion(id, options));
    if (progress) progress(results.back());
  }
  return results;
}

}  // namespace cactus
