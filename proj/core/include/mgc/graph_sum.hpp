#ifndef MGC_GRAPH_SUM_HPP
#define MGC_GRAPH_SUM_HPP

#include <mgc/graph.hpp>

#include <map>
#include <string>
#include <string_view>

namespace mgc {

/// Formal rational linear combination of canonical graphs of one kind.
///
/// Every inserted graph is canonicalized; zero graphs are dropped on insertion and
/// terms whose coefficients cancel are erased.
class GraphSum {
 public:
  explicit GraphSum(GraphKind kind = GraphKind::kontsevich, int dim = 0) : kind_(kind), dim_(dim) {}

  GraphKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Graph, Rational>& terms() const { return terms_; }
  Rational coefficient(const Graph& g) const;

  void add(const Graph& g, const Rational& c = 1);
  GraphSum& operator+=(const GraphSum& other);
  GraphSum& operator-=(const GraphSum& other);
  GraphSum& operator*=(const Rational& c);
  friend GraphSum operator+(GraphSum a, const GraphSum& b) { return a += b; }
  friend GraphSum operator-(GraphSum a, const GraphSum& b) { return a -= b; }
  friend bool operator==(const GraphSum&, const GraphSum&) = default;

 private:
  GraphKind kind_;
  int dim_;
  std::map<Graph, Rational> terms_;
};

/// Parses "1*(0,1;2,4;2,5;2,3) - 3*(0,3;1,4;2,5;2,3)" (Kontsevich/Leibniz) or one
/// micro-graph term per line.
GraphSum parse_graph_sum(std::string_view text, GraphKind kind, int num_sinks = 0, int dim = 0);
std::string to_string(const GraphSum& s);

/// Replaces the trident of a Leibniz graph by the three cyclic wedge-on-wedge
/// attachments (u -> (X, v), v -> (Y, Z) for (X,Y,Z) cyclic in (L,M,R)), with the
/// edges formerly entering the trident distributed by the Leibniz rule over u and v.
///
/// Each attachment enters with coefficient +1. Read as a multi-vector (coefficient of
/// f_i g_j h_k), the bare tripod's expansion is the Jacobiator 1/2 [[P,P]].
GraphSum leibniz_expand(const Graph& g);

}  // namespace mgc

#endif  // MGC_GRAPH_SUM_HPP
