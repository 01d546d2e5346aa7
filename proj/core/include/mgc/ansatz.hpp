#ifndef MGC_ANSATZ_HPP
#define MGC_ANSATZ_HPP

#include <mgc/graph.hpp>

#include <array>
#include <cstddef>
#include <vector>

namespace mgc {

/// Shape of a micro-graph ansatz.
///
/// Graphs have `aerial` rho*eps vertices of out-degree dim, `sinks` sinks and
/// aerial*(dim-2) Casimir terminals; every label 1..dim-2 occurs `aerial` times.
/// No aerial vertex sends two edges to the same target. Tadpoles are counted per
/// graph and capped by `max_tadpoles` (0 or 1).
struct AnsatzSpec {
  int dim = 3;
  int aerial = 3;
  int sinks = 1;
  int sink_indegree = 1;
  int min_terminal_indegree = 0;
  int max_tadpoles = 1;

  void validate() const;
};

struct AnsatzStats {
  /// Isomorphism classes of the underlying digraphs (sinks and terminals not yet
  /// distinguished), split by tadpole count.
  std::array<std::size_t, 2> unlabeled{};
  /// Labelled graphs before merging isomorphic ones: one per orbit of sink choices
  /// times every permutation of the Casimir label multiset.
  std::size_t labeled = 0;
  /// Distinct micro-graphs after canonical merging, split by tadpole count.
  std::array<std::size_t, 2> distinct{};

  std::size_t unlabeled_total() const { return unlabeled[0] + unlabeled[1]; }
  std::size_t distinct_total() const { return distinct[0] + distinct[1]; }
};

struct Ansatz {
  /// Canonical micro-graphs, sorted; graphs with a sign-reversing automorphism are kept.
  std::vector<Graph> graphs;
  AnsatzStats stats;
};

/// Enumerates the ansatz up to isomorphism.
///
/// Aerial arc patterns, an optional tadpole and the multiset of in-neighbourhoods
/// of the out-degree-0 vertices are generated and reduced under relabelling of the
/// aerial vertices; sinks are then chosen up to automorphism, Casimir labels are
/// assigned in every way, and the results are merged by canonical form.
Ansatz generate(const AnsatzSpec& spec, int jobs = 1);

/// Reference enumeration for tiny specs: every target tuple for every aerial
/// vertex, filtered by the spec and merged by canonical form.
std::vector<Graph> generate_brute_force(const AnsatzSpec& spec);

/// Keeps the graphs whose evaluation is not identically zero.
std::vector<Graph> vanish_filter(const std::vector<Graph>& graphs, int jobs = 1);

}  // namespace mgc

#endif  // MGC_ANSATZ_HPP
