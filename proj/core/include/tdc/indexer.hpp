#pragma once

#include <functional>
#include <unordered_set>
#include <vector>

#include "tdc/design.hpp"
#include "tdc/orbit_matrix.hpp"

// Expansion of a valid orbit matrix into full incidence matrices invariant
// under the canonical cyclic action, with intersection pruning and
// rotation-symmetry cuts, plus isomorph rejection of the emitted designs.

namespace tdc::indexer {

struct ExpansionResult {
  design::IncidenceStructure incidence;
  std::vector<int> choice;  // chosen stabilizer-cell indices, flattened in search order
};

struct ExpandOptions {
  long long limit = -1;  // emission cap; negative = exhaustive
  long long skip = 0;    // skip this many leading results (deterministic resume)
  // Keep only rotation-canonical choice vectors. Cut matrices are rotation
  // images of kept ones, so isomorph-reduced results are unaffected.
  bool symmetry_cut = true;
  int threads = 1;  // exhaustive runs explore top-level branches in parallel
};

/// Emits every design consistent with the orbit matrix in deterministic
/// depth-first order: block orbits in row order, point orbits left to right,
/// cell subsets lexicographically. The callback returns false to stop early.
/// Returns the number of emitted results.
long long expand(const om::OrbitMatrix& m, const ExpandOptions& opts,
                 const std::function<bool(ExpansionResult)>& emit);

std::vector<ExpansionResult> expand_collect(const om::OrbitMatrix& m, const ExpandOptions& opts = {});

/// The canonical action an expansion of this orbit matrix is invariant under.
design::CyclicAction expansion_action(const om::OrbitMatrix& m);

/// Recount orbit sums of a design laid out like an expansion of `shape`.
om::OrbitMatrix collapse(const design::IncidenceStructure& d, const om::OrbitMatrix& shape);

/// Streaming dedup keyed by canonical design forms.
class IsomorphRejector {
 public:
  /// True when the design's isomorphism class has not been seen before.
  bool insert(const design::IncidenceStructure& d);
  std::size_t classes() const { return seen_.size(); }

 private:
  std::unordered_set<std::string> seen_;
};

/// One representative per isomorphism class, keeping first occurrences in
/// stream order.
std::vector<ExpansionResult> isomorph_reject(std::vector<ExpansionResult> results);

}  // namespace tdc::indexer
