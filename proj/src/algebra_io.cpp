#include "cactus/algebra_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace cactus {

const char* to_string(AlgebraError::Kind kind) {
  using K = AlgebraError::Kind;
  switch (kind) {
    case K::BadSpec: return "BadSpec";
    case K::NotAssociative: return "NotAssociative";
    case K::NotCommutative: return "NotCommutative";
    case K::NoUnit: return "NoUnit";
    case K::DegeneratePairing: return "DegeneratePairing";
    case K::GradedUnsupported: return "GradedUnsupported";
  }
  return "AlgebraError";
}

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw AlgebraError(AlgebraError::Kind::BadSpec, "BadSpec: " + what); }

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  bad("scalars must be integers or \"p/q\" strings, got " + v.dump());
}

std::vector<std::string> scalar_list(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) bad(std::string("missing array \"") + key + "\"");
  std::vector<std::string> out;
  for (const auto& v : doc[key]) out.push_back(scalar_text(v));
  return out;
}

// Accepts [i,j,k,c] entries at any nesting depth.
void collect_entries(const json& node, std::vector<AlgebraSpec::Entry>& out) {
  if (!node.is_array()) bad("\"mul\" entries must be arrays");
  if (node.size() == 4 && node[0].is_number_integer()) {
    out.push_back({node[0].get<int>(), node[1].get<int>(), node[2].get<int>(), scalar_text(node[3])});
    return;
  }
  for (const auto& child : node) collect_entries(child, out);
}

}  // namespace

AlgebraSpec parse_algebra_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");
  AlgebraSpec spec;
  if (doc.contains("field")) {
    const json& f = doc["field"];
    if (f.is_string()) {
      const auto name = f.get<std::string>();
      if (name != "Q" && name != "q") bad("unknown field \"" + name + "\"");
    } else if (f.is_object() && f.contains("prime") && f["prime"].is_number_integer()) {
      const auto p = f["prime"].get<long long>();
      if (p < 2 || p >= (1LL << 31) || !is_prime(static_cast<std::uint64_t>(p)))
        bad("field prime " + std::to_string(p) + " is not a prime below 2^31");
      spec.field.prime = static_cast<std::uint32_t>(p);
    } else {
      bad("\"field\" must be \"Q\" or {\"prime\": p}");
    }
  }
  if (doc.contains("degrees")) {
    for (const auto& d : doc["degrees"])
      if (!d.is_number_integer() || d.get<long long>() != 0)
        throw AlgebraError(AlgebraError::Kind::GradedUnsupported,
                           "GradedUnsupported: only ungraded algebras are supported");
  }
  if (!doc.contains("basis") || !doc["basis"].is_array()) bad("missing array \"basis\"");
  for (const auto& b : doc["basis"]) {
    if (!b.is_string()) bad("basis names must be strings");
    spec.basis.push_back(b.get<std::string>());
  }
  spec.unit = scalar_list(doc, "unit");
  spec.aug = scalar_list(doc, "aug");
  if (!doc.contains("mul")) bad("missing array \"mul\"");
  collect_entries(doc["mul"], spec.mul);
  return spec;
}

AlgebraSpec read_algebra_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_algebra_spec(ss.str());
}

std::string dump_algebra_spec(const AlgebraSpec& spec) {
  json doc;
  if (spec.field.rational()) {
    doc["field"] = "Q";
  } else {
    doc["field"] = {{"prime", spec.field.prime}};
  }
  doc["basis"] = spec.basis;
  doc["unit"] = spec.unit;
  doc["aug"] = spec.aug;
  json mul = json::array();
  for (const auto& e : spec.mul) mul.push_back({e.i, e.j, e.k, e.coef});
  doc["mul"] = mul;
  return doc.dump();
}

}  // namespace cactus
