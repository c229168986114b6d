// The acceptance suite: every criterion as a self-contained exact check.
#pragma once

#include "cactus/algebra_io.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cactus {

struct SuiteOptions {
  /// Field for the algebra-based criteria; Q unless overridden. Criterion 2
  /// always runs over both Q and F_7.
  FieldSpec field;
  std::uint64_t seed = 0;
  std::string data_dir = CACTUS_DATA_DIR;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // counts on success, the first witness on failure
  double seconds = 0;
};

constexpr int kCriteria = 10;

std::string criterion_name(int id);
CriterionResult run_criterion(int id, const SuiteOptions& options);

/// Runs every criterion in order; `progress` (if set) sees each result as it completes.
std::vector<CriterionResult> run_suite(const SuiteOptions& options,
                                       const std::function<void(const CriterionResult&)>& progress = {});

/// BV properties on cohomology classes of degree <= class_degree; throws
/// std::runtime_error naming the first failure, returns a summary otherwise.
std::string bv_check(const AlgebraSpec& spec, const FieldSpec& field, int class_degree, std::uint64_t seed);

}  // namespace cactus
