// Algebra spec files: field-independent text form of a Poincare algebra.
//
//   {"field": "Q" | {"prime": p}, "basis": ["1","x"], "unit": [1,0],
//    "mul": [[i,j,k,"c"], ...], "aug": ["0","1"]}
//
// Scalars are integers or "p/q" strings; indices are 0-based.
#pragma once

#include "cactus/frobenius.hpp"

#include <string>
#include <vector>

namespace cactus {

struct AlgebraSpec {
  struct Entry {
    int i, j, k;
    std::string coef;
  };

  FieldSpec field;
  std::vector<std::string> basis;
  std::vector<std::string> unit;
  std::vector<Entry> mul;
  std::vector<std::string> aug;
};

/// Parses spec text; throws AlgebraError(BadSpec) on malformed input and
/// GradedUnsupported when nonzero degrees are declared.
AlgebraSpec parse_algebra_spec(const std::string& text);
AlgebraSpec read_algebra_spec(const std::string& path);
std::string dump_algebra_spec(const AlgebraSpec& spec);

template <ExactScalar S>
FrobeniusAlgebra<S> load_algebra(const AlgebraSpec& spec, const Field<S>& field) {
  auto parse = [&](const std::string& text) {
    try {
      return field.parse(text);
    } catch (const FieldError& e) {
      throw AlgebraError(AlgebraError::Kind::BadSpec, e.what());
    }
  };
  Vector<S> unit(static_cast<Index>(spec.unit.size()));
  for (std::size_t i = 0; i < spec.unit.size(); ++i) unit[static_cast<Index>(i)] = parse(spec.unit[i]);
  Vector<S> aug(static_cast<Index>(spec.aug.size()));
  for (std::size_t i = 0; i < spec.aug.size(); ++i) aug[static_cast<Index>(i)] = parse(spec.aug[i]);
  std::vector<MulEntry<S>> mul;
  for (const auto& e : spec.mul) mul.push_back({e.i, e.j, e.k, parse(e.coef)});
  return FrobeniusAlgebra<S>(field, spec.basis, std::move(unit), mul, std::move(aug));
}

template <ExactScalar S>
AlgebraSpec to_spec(const FrobeniusAlgebra<S>& a) {
  AlgebraSpec spec;
  spec.field.prime = a.field().characteristic();
  spec.basis = a.basis();
  for (int i = 0; i < a.dim(); ++i) spec.unit.push_back(to_string(a.unit()[i]));
  for (int i = 0; i < a.dim(); ++i) spec.aug.push_back(to_string(a.augmentation()[i]));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        if (!is_zero(a.structure_constant(i, j, k)))
          spec.mul.push_back({i, j, k, to_string(a.structure_constant(i, j, k))});
  return spec;
}

}  // namespace cactus
