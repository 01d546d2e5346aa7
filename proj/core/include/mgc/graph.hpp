#ifndef MGC_GRAPH_HPP
#define MGC_GRAPH_HPP

#include <mgc/rational.hpp>

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace mgc {

enum class GraphKind : std::uint8_t {
  kontsevich,  ///< aerial vertices of out-degree 2 carrying bi-vectors
  leibniz,     ///< wedges plus exactly one trident carrying the Jacobiator
  micro,       ///< aerial vertices of out-degree d carrying rho*eps, plus Casimir terminals
};

std::string_view to_string(GraphKind kind);

enum class VertexRole : std::uint8_t { sink, aerial, terminal };

/// Directed graph with ordered out-edges.
///
/// Vertex layout is fixed: sinks are 0..m-1, aerial vertices m..m+n-1 (one ordered
/// target tuple each), terminals follow with one Casimir label each. Tadpoles are
/// plain self-targets. Graphs are immutable values once constructed.
class Graph {
 public:
  Graph() = default;
  /// Validates the kind-specific degree invariants; throws std::invalid_argument.
  Graph(GraphKind kind, int dim, int num_sinks, std::vector<std::vector<int>> targets,
        std::vector<int> terminal_labels = {});

  static Graph kontsevich(int num_sinks, std::vector<std::vector<int>> targets) {
    return Graph(GraphKind::kontsevich, 0, num_sinks, std::move(targets));
  }
  static Graph leibniz(int num_sinks, std::vector<std::vector<int>> targets) {
    return Graph(GraphKind::leibniz, 0, num_sinks, std::move(targets));
  }
  static Graph micro(int dim, int num_sinks, std::vector<std::vector<int>> targets,
                     std::vector<int> terminal_labels) {
    return Graph(GraphKind::micro, dim, num_sinks, std::move(targets), std::move(terminal_labels));
  }

  GraphKind kind() const { return kind_; }
  /// Ambient dimension for micro-graphs, 0 for dimension-free Kontsevich/Leibniz graphs.
  int dim() const { return dim_; }
  int num_sinks() const { return num_sinks_; }
  int num_aerial() const { return static_cast<int>(targets_.size()); }
  int num_terminals() const { return static_cast<int>(terminal_labels_.size()); }
  int num_vertices() const { return num_sinks_ + num_aerial() + num_terminals(); }
  int num_edges() const;

  int aerial_id(int k) const { return num_sinks_ + k; }
  int terminal_id(int t) const { return num_sinks_ + num_aerial() + t; }
  VertexRole role(int v) const;

  const std::vector<std::vector<int>>& targets() const { return targets_; }
  const std::vector<int>& terminal_labels() const { return terminal_labels_; }
  /// Casimir label of vertex v, which must be a terminal.
  int label_of(int v) const { return terminal_labels_.at(v - num_sinks_ - num_aerial()); }

  std::vector<int> in_degrees() const;
  int tadpole_count() const;
  /// True if some aerial vertex sends two of its edges to the same target.
  bool has_parallel_edges() const;

  friend auto operator<=>(const Graph&, const Graph&) = default;
  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  GraphKind kind_ = GraphKind::kontsevich;
  int dim_ = 0;
  int num_sinks_ = 0;
  std::vector<std::vector<int>> targets_;
  std::vector<int> terminal_labels_;
};

/// Result of canonical labelling.
///
/// `graph` is the lexicographically least relabelling over all role-preserving
/// vertex permutations (sinks fixed, aerial vertices permuted within equal
/// out-degree, terminals within equal label), with every target tuple sorted.
/// As evaluated objects, input = sign * graph. `zero` is set when the graph admits
/// an automorphism acting by an odd permutation on the ordered edges.
struct CanonicalForm {
  Graph graph;
  int sign = 1;
  bool zero = false;
};

CanonicalForm canonical_form(const Graph& g);
bool is_zero(const Graph& g);

struct GraphTerm {
  Rational coefficient;
  Graph graph;
};

/// Parses one graph in listing format, optionally prefixed by "coefficient *".
///
/// Kontsevich/Leibniz: "(0,1;2,4;2,5;2,3)" with `num_sinks` sinks numbered first.
/// Micro: "[(0,4), (0,5), ...] (sink 2)" plus "(a2 i,j,k)" groups for d >= 4;
/// vertices are relabelled into the standard layout. `dim` is only needed for a
/// micro-graph without aerial vertices.
GraphTerm parse_term(std::string_view text, GraphKind kind, int num_sinks = 0, int dim = 0);
Graph parse_graph(std::string_view text, GraphKind kind, int num_sinks = 0, int dim = 0);

/// Listing format of `g` as stored (callers canonicalize first when they need keys).
std::string to_string(const Graph& g);
std::string to_string(const GraphTerm& t);

/// JSON object {"kind","dim","num_sinks","targets","terminal_labels"}.
std::string to_json(const Graph& g);
Graph graph_from_json(std::string_view json);

}  // namespace mgc

#endif  // MGC_GRAPH_HPP
