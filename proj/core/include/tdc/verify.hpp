#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tdc/code.hpp"

// The verification suite behind `verify-paper`: a fast tier of desk-scale
// checks and a long-running full tier that reproduces the published census
// and classification counts.

namespace tdc::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Options {
  int threads = 1;
  std::ostream* progress = nullptr;  // progress lines for long runs
};

/// Criteria 1-7: appendix fidelity, orbit-equation spot check, oracle
/// equivalence, desk-scale construction, divisibility/range, the 1-design
/// property, and equivalence soundness. Minutes.
std::vector<CriterionResult> run_fast(const Options& opts = {});

/// Criteria 8-13: extremality of the quadratic-residue code, the full
/// census/classification reproduction, and automorphism checks. Hours.
std::vector<CriterionResult> run_full(const Options& opts = {});

bool all_pass(const std::vector<CriterionResult>& results);

/// Full weight distribution (A_0..A_n) by plain 3^k message enumeration.
/// Independent oracle for the enumeration engine; k must be small.
std::vector<long long> brute_force_distribution(const code::TernaryCode& c);

}  // namespace tdc::verify
