#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdc/code.hpp"
#include "tdc/design.hpp"
#include "tdc/weight.hpp"

// Classification machinery: design isomorphism via canonical labeling of the
// bipartite incidence graph, monomial-invariant code fingerprints, and a
// complete monomial-equivalence decision with explicit transporters.

namespace tdc::equiv {

// ---- generic colored-graph canonical labeling -------------------------------

/// Undirected graph with an initial coloring. Cells of the initial partition
/// are the color classes in ascending color order.
struct ColoredGraph {
  int n = 0;
  std::vector<std::vector<std::uint64_t>> adj;  // n bitset rows
  std::vector<int> color;                       // 0-based, need not be contiguous

  void add_edge(int a, int b) {
    adj[a][b >> 6] |= std::uint64_t{1} << (b & 63);
    adj[b][a >> 6] |= std::uint64_t{1} << (a & 63);
  }
  static ColoredGraph empty(int n) {
    ColoredGraph g;
    g.n = n;
    g.adj.assign(n, std::vector<std::uint64_t>((n + 63) / 64, 0));
    g.color.assign(n, 0);
    return g;
  }
};

struct CanonicalLabeling {
  std::vector<int> position;  // position[v] = canonical index of vertex v
  long long aut_order = 1;
  std::string certificate;  // canonical adjacency bytes; equal iff isomorphic
};

/// Individualization-refinement canonical labeling. Color-preserving
/// automorphisms only. Exact automorphism group order as a by-product.
CanonicalLabeling canonical_labeling(const ColoredGraph& g);

// ---- design isomorphism ------------------------------------------------------

struct CanonicalForm {
  design::IncidenceStructure canonical;
  long long aut_order = 1;
  std::vector<int> point_perm;  // input -> canonical
  std::vector<int> block_perm;
};

/// Canonical form of a design under point/block relabeling. Two designs are
/// isomorphic iff their canonical matrices are byte-identical. Points and
/// blocks are pre-colored by their triple-intersection profiles, which keeps
/// the search tree flat for structures with small automorphism groups.
CanonicalForm canonical_design(const design::IncidenceStructure& d);

/// Deterministic dedup key of the canonical form.
std::string design_key(const design::IncidenceStructure& canonical);

// ---- code fingerprints and monomial equivalence ------------------------------

/// Monomial-invariant summary of a code built from its minimum-weight words.
struct CodeFingerprint {
  int n = 0, k = 0, d = 0;
  long long a_d = 0;
  std::map<int, long long> intersection_distribution;  // |supp(u) n supp(v)| -> pair count
  std::vector<long long> degree_sequence;              // sorted per-coordinate support counts

  std::string key() const;
  friend bool operator==(const CodeFingerprint&, const CodeFingerprint&) = default;
};

CodeFingerprint fingerprint(const code::TernaryCode& c, const weight::EnumOptions& opts = {});

/// Cached minimum-weight support structure for repeated equivalence tests.
struct CodeSupports {
  int d = 0;
  std::vector<std::uint64_t> supports;  // sorted, with multiplicity
  std::vector<int> deg;                 // per-coordinate support count
  std::vector<std::vector<int>> pairs;  // pairs[a][b] = supports containing both
};

CodeSupports code_supports(const code::TernaryCode& c, int d, const weight::EnumOptions& opts = {});
CodeFingerprint fingerprint_from(const code::TernaryCode& c, const CodeSupports& s);

/// Explicit witness of a monomial equivalence: target[perm[j]] = signs[perm[j]] * source[j].
struct MonomialMap {
  std::vector<int> perm;
  std::vector<std::uint8_t> signs;  // values in {1,2}, indexed by target coordinate
};

MonomialMap inverse(const MonomialMap& m);
MonomialMap compose(const MonomialMap& outer, const MonomialMap& inner);

/// Complete decision of monomial equivalence. Searches coordinate bijections
/// consistent with the minimum-weight support structure, then solves for the
/// sign vector linearly against the dual code; every returned transporter is
/// verified by re-encoding before return.
std::optional<MonomialMap> monomially_equivalent(const code::TernaryCode& c1,
                                                 const code::TernaryCode& c2,
                                                 const weight::EnumOptions& opts = {});

/// Same decision with precomputed support structures (both at the same d).
std::optional<MonomialMap> monomially_equivalent(const code::TernaryCode& c1, const CodeSupports& s1,
                                                 const code::TernaryCode& c2, const CodeSupports& s2);

}  // namespace tdc::equiv
