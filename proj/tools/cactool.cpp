// cactool: command-line front end for algebras, cacti, Hochschild (co)homology
// and the acceptance suite.
//
// Exit status: 0 when every requested check passes, 1 when a check fails,
// 2 on invalid input.
#include "cactus/acceptance.hpp"
#include "cactus/algebra_io.hpp"
#include "cactus/cacti.hpp"
#include "cactus/hochschild.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace cactus;

constexpr const char* kSignConvention = "b=sum(-1)^i d_i; t_n=(-1)^n tau; B=(1-t)s N; Delta=B^T";

struct Options {
  std::string emit = "table";
  std::string field;
  std::uint64_t seed = 0;
};

/// Rows with fixed columns, printed aligned or as one JSON object per line.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<json> row) { rows_.push_back(std::move(row)); }

  void print(const Options& o, const std::string& command) const {
    if (o.emit == "json") {
      for (const auto& row : rows_) {
        json record = {{"command", command}};
        for (std::size_t c = 0; c < columns_.size(); ++c) record[columns_[c]] = row[c];
        std::cout << record.dump() << '\n';
      }
      return;
    }
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width;
    for (const auto& c : columns_) width.push_back(c.size());
    for (const auto& row : rows_) {
      std::vector<std::string> line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        line.push_back(row[c].is_string() ? row[c].get<std::string>() : row[c].dump());
        width[c] = std::max(width[c], line.back().size());
      }
      cells.push_back(std::move(line));
    }
    auto print_line = [&](const std::vector<std::string>& line) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        std::cout << line[c];
        if (c + 1 < line.size()) std::cout << std::string(width[c] - line[c].size() + 2, ' ');
      }
      std::cout << '\n';
    };
    print_line(columns_);
    for (const auto& line : cells) print_line(line);
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<json>> rows_;
};

Table key_values(const std::vector<std::pair<std::string, json>>& entries) {
  std::vector<std::string> columns;
  std::vector<json> row;
  for (const auto& [k, v] : entries) {
    columns.push_back(k);
    row.push_back(v);
  }
  Table t(columns);
  t.add(row);
  return t;
}

struct InputError : std::runtime_error {
  InputError(std::string kind, const std::string& what) : std::runtime_error(what), kind(std::move(kind)) {}
  std::string kind;
};

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InputError("BadInput", "expected an exact scalar, got " + v.dump());
}

Rational parse_rational(const json& v) {
  try {
    return Field<Rational>{}.parse(scalar_text(v));
  } catch (const FieldError& e) {
    throw InputError("BadInput", e.what());
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("BadInput", std::string("malformed JSON: ") + e.what());
  }
}

/// A cactus argument: a word like [1,2,1,3] or {"word": [...], "basepoints": [...] | {"1": p, ...}}.
SpinyCactus parse_spiny(const json& doc) {
  std::vector<int> word;
  std::vector<int> basepoints;
  const json& w = doc.is_object() ? doc.value("word", json()) : doc;
  if (!w.is_array()) throw InputError("BadInput", "a cactus needs a \"word\" array");
  for (const auto& x : w) {
    if (!x.is_number_integer()) throw InputError("BadInput", "lobe labels must be integers");
    word.push_back(x.get<int>());
  }
  if (doc.is_object() && doc.contains("basepoints")) {
    const json& b = doc["basepoints"];
    if (b.is_array()) {
      for (const auto& x : b) basepoints.push_back(x.get<int>());
    } else if (b.is_object()) {
      basepoints.assign(b.size(), -1);
      for (const auto& [k, v] : b.items()) {
        const int lobe = std::stoi(k);
        if (lobe < 1 || lobe > static_cast<int>(b.size())) throw InputError("BadInput", "basepoint for unknown lobe " + k);
        basepoints[lobe - 1] = v.get<int>();
      }
    } else {
      throw InputError("BadInput", "\"basepoints\" must be an array or an object");
    }
  }
  return SpinyCactus(std::move(word), std::move(basepoints));
}

json cactus_json(const SpinyCactus& sc) { return {{"word", sc.word()}, {"basepoints", sc.basepoints()}}; }

json nodes_json(const SpinyCactus& sc) {
  json nodes = json::array();
  for (const auto& n : sc.nodes())
    nodes.push_back({{"positions", n.positions}, {"lobes", n.lobes}, {"multiplicity", n.multiplicity()}});
  return nodes;
}

FieldSpec resolve_field(const Options& o, const AlgebraSpec& spec) {
  if (o.field.empty()) return spec.field;
  try {
    return FieldSpec::parse(o.field);
  } catch (const FieldError& e) {
    throw InputError("BadField", e.what());
  }
}

template <typename Body>
int with_field(const FieldSpec& spec, Body&& body) {
  if (spec.rational()) return body(Field<Rational>{});
  return body(Field<Fp>(spec.prime));
}

template <ExactScalar S>
json vector_terms(const FrobeniusAlgebra<S>& a, const Vector<S>& v, int arity) {
  json terms = json::array();
  const auto t = Tensor<S>::from_vector(v, a.dim(), arity);
  for (const auto& [index, coef] : t.terms()) {
    std::string name;
    for (std::size_t s = 0; s < index.size(); ++s) name += (s ? "(x)" : "") + a.basis()[index[s]];
    terms.push_back({{"basis", name}, {"coef", to_string(coef)}});
  }
  return terms;
}

// ------------------------------------------------------------ commands

int algebra_validate(const Options& o, const std::string& file) {
  const auto spec = read_algebra_spec(file);
  const FieldSpec field = resolve_field(o, spec);
  return with_field(field, [&](const auto& f) {
    const auto a = load_algebra(spec, f);
    key_values({{"status", "ok"}, {"field", f.name()}, {"dim", a.dim()}, {"basis", a.basis()}})
        .print(o, "algebra validate");
    return 0;
  });
}

int algebra_info(const Options& o, const std::string& file) {
  const auto spec = read_algebra_spec(file);
  const FieldSpec field = resolve_field(o, spec);
  return with_field(field, [&](const auto& f) {
    const auto a = load_algebra(spec, f);
    Table t({"basis", "unit", "aug", "gram_row", "coproduct"});
    for (int i = 0; i < a.dim(); ++i) {
      json row = json::array();
      for (int j = 0; j < a.dim(); ++j) row.push_back(to_string(a.gram()[i][j]));
      t.add({a.basis()[i], to_string(a.unit()[i]), to_string(a.augmentation()[i]), row,
             vector_terms(a, a.coproduct(a.basis_vector(i)), 2)});
    }
    t.print(o, "algebra info");
    return 0;
  });
}

int cactus_validate(const Options& o, const std::string& arg) {
  const SpinyCactus sc = parse_spiny(parse_json(arg));
  const Cactus c(sc);
  key_values({{"status", "ok"},
              {"lobes", c.lobes()},
              {"cactus", cactus_json(c.spiny())},
              {"nodes", nodes_json(c.spiny())}})
      .print(o, "cactus validate");
  return 0;
}

int cactus_compose(const Options& o, const std::string& left, int lobe, const std::string& right) {
  const Cactus c(parse_spiny(parse_json(left)));
  const Cactus d(parse_spiny(parse_json(right)));
  const Cactus r = compose(c, lobe, d);
  key_values({{"status", "ok"}, {"result", cactus_json(r.spiny())}, {"nodes", nodes_json(r.spiny())}})
      .print(o, "cactus compose");
  return 0;
}

int cactus_decompose(const Options& o, const std::string& arg) {
  const Cactus c(parse_spiny(parse_json(arg)));
  const auto dec = decompose_generators(c);
  Table t({"step", "kind", "lobe", "piece", "relabeling"});
  t.add({0, "circle", 1, cactus_json(dec.circle), json::array({1})});
  for (std::size_t s = 0; s < dec.steps.size(); ++s)
    t.add({static_cast<int>(s + 1), "pinch", dec.steps[s].lobe, cactus_json(dec.steps[s].piece),
           dec.steps[s].relabeling});
  t.print(o, "cactus decompose");
  return recompose(dec) == c ? 0 : 1;
}

int cactus_realize(const Options& o, const std::string& arg, const std::string& points_arg) {
  const json doc = parse_json(arg);
  const SpinyCactus sc = parse_spiny(doc);
  std::vector<Rational> lengths;
  if (doc.is_object() && doc.contains("lengths")) {
    for (const auto& x : doc["lengths"]) lengths.push_back(parse_rational(x));
  } else {
    for (int p = 0; p < sc.total_points(); ++p) lengths.emplace_back(1, sc.total_points());
  }
  const MetricCactus mc = MetricCactus::from_spiny(sc, lengths);
  std::vector<std::vector<Rational>> bary;
  if (points_arg.empty()) {
    bary.assign(static_cast<std::size_t>(sc.lobes()), {Rational(1)});
  } else {
    for (const auto& pt : parse_json(points_arg)) {
      std::vector<Rational> v;
      for (const auto& x : pt) v.push_back(parse_rational(x));
      bary.push_back(std::move(v));
    }
  }
  const auto out = realize(mc, bary);
  json coords = json::array();
  for (const auto& x : out) coords.push_back(x.str());
  key_values({{"status", "ok"}, {"simplex_dim", static_cast<int>(out.size()) - 1}, {"point", coords}})
      .print(o, "cactus realize");
  return 0;
}

int hh(const Options& o, const std::string& file, int max_degree) {
  const auto spec = read_algebra_spec(file);
  return with_field(resolve_field(o, spec), [&](const auto& f) {
    const auto a = load_algebra(spec, f);
    const auto bar = cyclic_bar(a, max_degree + 1);
    const auto report = homology(to_complex(bar), 0, max_degree);
    const auto normalized = normalized_homology_dims(bar, 0, max_degree);
    Table t({"degree", "dim", "cycles", "boundaries", "normalized_dim"});
    bool agree = true;
    for (const auto& g : report.groups) {
      t.add({g.degree, g.dim, g.cycles, g.boundaries, normalized[g.degree]});
      agree = agree && normalized[g.degree] == g.dim;
    }
    t.print(o, "hh");
    return agree ? 0 : 1;
  });
}

template <ExactScalar S>
std::optional<std::vector<S>> class_coordinates(const CochainAlgebra<S>& ca, const std::vector<Vector<S>>& reps,
                                                const Vector<S>& x, int n) {
  Echelon<S> e(ca.dim(n), true);
  const Index r = static_cast<Index>(reps.size());
  for (Index i = 0; i < r; ++i) e.insert_tracked(to_sparse(reps[i]), i);
  if (n > 0) {
    const auto& cob = ca.complex().coboundary[n - 1];
    for (Index j = 0; j < cob.cols(); ++j) e.insert_tracked(column(cob, j), r + j);
  }
  const Index label = std::numeric_limits<Index>::max();
  const auto rel = e.insert_tracked(to_sparse(x), label);
  if (!rel) return std::nullopt;
  std::vector<S> coords(reps.size(), S(0));
  for (const auto& [i, c] : *rel)
    if (i < r) coords[i] = -c;
  return coords;
}

int product_table(const Options& o, const std::string& file, int max_degree) {
  const auto spec = read_algebra_spec(file);
  return with_field(resolve_field(o, spec), [&](const auto& f) {
    using S = std::decay_t<decltype(f.from_int(0))>;
    const auto a = load_algebra(spec, f);
    const CochainAlgebra<S> ca(a, max_degree);
    std::vector<std::vector<Vector<S>>> reps;
    for (int n = 0; n <= max_degree; ++n) reps.push_back(ca.representatives(n));
    Table t({"left", "right", "degree", "product"});
    int status = 0;
    for (int p = 0; p <= max_degree; ++p)
      for (int q = 0; p + q <= max_degree; ++q)
        for (std::size_t i = 0; i < reps[p].size(); ++i)
          for (std::size_t j = 0; j < reps[q].size(); ++j) {
            const auto coords = class_coordinates(ca, reps[p + q], ca.cup(reps[p][i], p, reps[q][j], q), p + q);
            json product;
            if (!coords) {
              product = "not a cocycle";
              status = 1;
            } else {
              product = json::array();
              for (const auto& c : *coords) product.push_back(to_string(c));
            }
            t.add({"H^" + std::to_string(p) + "[" + std::to_string(i) + "]",
                   "H^" + std::to_string(q) + "[" + std::to_string(j) + "]", p + q, product});
          }
    t.print(o, "product-table");
    return status;
  });
}

int bv_check_command(const Options& o, const std::string& file, int max_degree) {
  const auto spec = read_algebra_spec(file);
  const FieldSpec field = resolve_field(o, spec);
  try {
    const std::string summary = bv_check(spec, field, max_degree, o.seed);
    key_values({{"status", "pass"}, {"field", field.name()}, {"seed", o.seed}, {"summary", summary}})
        .print(o, "bv-check");
    return 0;
  } catch (const std::runtime_error& e) {
    key_values({{"status", "fail"}, {"field", field.name()}, {"seed", o.seed}, {"witness", e.what()}})
        .print(o, "bv-check");
    return 1;
  }
}

int diagram_check(const Options& o, const std::string& file, int lobes, int max_points) {
  const auto spec = read_algebra_spec(file);
  return with_field(resolve_field(o, spec), [&](const auto& f) {
    const auto a = load_algebra(spec, f);
    const auto spiny = enumerate_spiny(lobes, max_points);
    Table t({"diagram", "checked", "failed", "first_failure"});
    std::map<std::string, std::pair<int, int>> counts;
    std::map<std::string, std::string> first;
    for (const auto& sc : spiny)
      for (const auto& check : check_cactus_diagrams(a, sc)) {
        auto& [checked, failed] = counts[check.name];
        ++checked;
        if (!check.ok && failed++ == 0) first[check.name] = check.witness;
      }
    int status = 0;
    for (const auto& [name, c] : counts) {
      t.add({name, c.first, c.second, first.count(name) ? first[name] : ""});
      if (c.second > 0) status = 1;
    }
    t.print(o, "diagram-check");
    return status;
  });
}

int suite(const Options& o) {
  SuiteOptions options;
  options.seed = o.seed;
  if (!o.field.empty()) {
    try {
      options.field = FieldSpec::parse(o.field);
    } catch (const FieldError& e) {
      throw InputError("BadField", e.what());
    }
  }
  Table t({"criterion", "name", "status", "seconds", "detail"});
  int failures = 0;
  for (const auto& r : run_suite(options)) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
    t.add({r.id, r.name, r.pass ? "PASS" : "FAIL", o.emit == "json" ? json(r.seconds) : json(secs), r.detail});
    if (!r.pass) ++failures;
  }
  t.print(o, "suite");
  if (o.emit != "json")
    std::cout << (kCriteria - failures) << "/" << kCriteria << " criteria passed (field "
              << options.field.name() << ", conventions " << kSignConvention << ")\n";
  return failures == 0 ? 0 : 1;
}

void report_error(const Options& o, const std::string& kind, const std::string& message) {
  if (o.emit == "json") {
    std::cout << json{{"status", "error"}, {"error", kind}, {"message", message}}.dump() << '\n';
  } else {
    std::cerr << "error: " << message << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cactus operad combinatorics and Hochschild structures of Poincare algebras"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--emit", o.emit, "Output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--field", o.field, "Field override: q or p:<prime>");
  app.add_option("--seed", o.seed, "Seed for sampled BV classes");
  app.fallthrough();

  std::function<int()> action;
  std::string file, arg, arg2, points;
  int lobe = 1, max_degree = 5, lobes = 2, max_points = 5;

  auto* algebra = app.add_subcommand("algebra", "Load and inspect algebra spec files");
  algebra->require_subcommand(1);
  auto* av = algebra->add_subcommand("validate", "Validate an algebra spec");
  av->add_option("file", file)->required();
  av->callback([&] { action = [&] { return algebra_validate(o, file); }; });
  auto* ai = algebra->add_subcommand("info", "Print pairing and coproduct");
  ai->add_option("file", file)->required();
  ai->callback([&] { action = [&] { return algebra_info(o, file); }; });

  auto* cactus = app.add_subcommand("cactus", "Cactus combinatorics");
  cactus->require_subcommand(1);
  auto* cv = cactus->add_subcommand("validate", "Validate a traversal word");
  cv->add_option("cactus", arg)->required();
  cv->callback([&] { action = [&] { return cactus_validate(o, arg); }; });
  auto* cc = cactus->add_subcommand("compose", "Operadic composition c o_i d");
  cc->add_option("c", arg)->required();
  cc->add_option("i", lobe)->required();
  cc->add_option("d", arg2)->required();
  cc->callback([&] { action = [&] { return cactus_compose(o, arg, lobe, arg2); }; });
  auto* cd = cactus->add_subcommand("decompose", "Decompose into a circle and pinches");
  cd->add_option("cactus", arg)->required();
  cd->callback([&] { action = [&] { return cactus_decompose(o, arg); }; });
  auto* cr = cactus->add_subcommand("realize", "Evaluate the simplex map of a metric cactus");
  cr->add_option("cactus", arg, "Cactus with exact \"lengths\" per traversal segment")->required();
  cr->add_option("--points", points, "Barycentric point per lobe, e.g. [[\"1/2\",\"1/2\"],[1]]");
  cr->callback([&] { action = [&] { return cactus_realize(o, arg, points); }; });

  auto* hh_cmd = app.add_subcommand("hh", "Hochschild homology dimensions");
  hh_cmd->add_option("--algebra", file)->required();
  hh_cmd->add_option("--max-degree", max_degree)->check(CLI::NonNegativeNumber);
  hh_cmd->callback([&] { action = [&] { return hh(o, file, max_degree); }; });

  auto* pt = app.add_subcommand("product-table", "Cup products of cohomology classes");
  pt->add_option("--algebra", file)->required();
  pt->add_option("--max-degree", max_degree)->check(CLI::NonNegativeNumber);
  pt->callback([&] { action = [&] { return product_table(o, file, max_degree); }; });

  auto* bv = app.add_subcommand("bv-check", "BV identities on cohomology");
  bv->add_option("--algebra", file)->required();
  bv->add_option("--max-degree", max_degree, "Largest class degree")->check(CLI::NonNegativeNumber);
  bv->callback([&] { action = [&] { return bv_check_command(o, file, max_degree); }; });

  auto* dc = app.add_subcommand("diagram-check", "Cactus object squares for spiny cacti");
  dc->add_option("--algebra", file)->required();
  dc->add_option("--lobes", lobes)->check(CLI::PositiveNumber);
  dc->add_option("--max-points", max_points)->check(CLI::PositiveNumber);
  dc->callback([&] { action = [&] { return diagram_check(o, file, lobes, max_points); }; });

  auto* st = app.add_subcommand("suite", "Run the acceptance suite");
  st->callback([&] { action = [&] { return suite(o); }; });

  CLI11_PARSE(app, argc, argv);
  try {
    return action();
  } catch (const CactusError& e) {
    report_error(o, to_string(e.kind()), e.what());
  } catch (const AlgebraError& e) {
    report_error(o, to_string(e.kind()), e.what());
  } catch (const InputError& e) {
    report_error(o, e.kind, e.what());
  } catch (const FieldError& e) {
    report_error(o, "BadField", e.what());
  } catch (const std::exception& e) {
    report_error(o, "Error", e.what());
  }
  return 2;
}
