#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace eqbox {

struct SuiteResult {
  std::string name;
  /// Acceptance criterion number (1-9).
  int criterion = 0;
  bool pass = true;
  std::size_t cases = 0;
  std::size_t violations = 0;
  /// Deterministic detail lines.
  std::vector<std::string> details;
};

/// coupling, metric, lemma, cross, nondegeneracy, pinned, quotient, properness, lens.
const std::vector<std::string>& suite_names();

/// Throws InvalidArgument for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

/// `name` is a suite name or "all".
std::vector<SuiteResult> run_suites(const std::string& name, std::uint64_t seed);

/// Plain-text report, byte-identical for equal inputs.
std::string render(const std::vector<SuiteResult>& results);

}  // namespace eqbox
