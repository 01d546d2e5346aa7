#ifndef MGC_EVAL_HPP
#define MGC_EVAL_HPP

#include <mgc/graph_sum.hpp>
#include <mgc/multivector.hpp>

namespace mgc {

/// Contents of the aerial vertices of Kontsevich and Leibniz graphs: a bi-vector in
/// every wedge top and a tri-vector in the trident top of a Leibniz graph.
/// Micro-graphs need no contents: their aerial vertices carry rho * eps and their
/// terminals the Casimirs a_label.
struct Contents {
  MultiVector bivector;
  MultiVector trivector;

  int dim() const { return bivector.dim(); }
};

/// Nambu bi-vector P(rho, [a_1], ..., [a_{d-2}]) with its Jacobiator in the trident.
Contents nambu_contents(int dim);
/// Any bi-vector P with jacobiator(P) in the trident.
Contents contents_of(const MultiVector& p);

/// Polydifferential operator encoded by a graph.
///
/// Every edge carries a summation index; an edge into a vertex differentiates that
/// vertex's content (tadpoles differentiate the vertex's own content). Sink i holds
/// the argument symbol sink(i) (printed f, g, h), so the result is a polynomial that
/// is linear in each argument's jet.
DiffPoly evaluate(const Graph& g, const Contents& contents);
/// Micro-graph evaluation in dimension g.dim().
DiffPoly evaluate(const Graph& micro);
DiffPoly evaluate(const GraphSum& sum, const Contents& contents, int jobs = 1);
DiffPoly evaluate(const GraphSum& micro_sum, int jobs = 1);

/// Reads a multivector off a polydifferential operator on `num_sinks` arguments:
/// the coefficient of f_{i1} g_{i2} ... antisymmetrized with weight 1/m!.
/// Throws std::invalid_argument if some term is not of first order in every argument.
MultiVector to_multivector(const DiffPoly& op, int num_sinks, int dim);
/// True if the operator is totally antisymmetric in its first-order arguments.
bool is_skew(const DiffPoly& op, int num_sinks, int dim);

/// The tetrahedral flow as a sum of bi-vector Kontsevich graphs (two sinks).
GraphSum gamma3_graphs();
/// Q_{gamma3}(P) as a bi-vector.
MultiVector gamma3_flow(const MultiVector& p);
/// The sunflower 1-vector graphs (one sink): (0,1;1,3;1,2) + 2*(0,2;1,3;1,2).
GraphSum sunflower_graphs();
/// Sunflower vector field evaluated at P.
MultiVector sunflower_field(const MultiVector& p);

/// Expands Kontsevich graphs with Nambu contents into micro-graphs over R^dim.
///
/// Each wedge becomes a rho*eps vertex whose first d-2 slots point to fresh
/// Casimir terminals a_1..a_{d-2} and whose last two slots are the old (L, R).
/// Every edge into the old wedge is distributed by the Leibniz rule over the d-1
/// new vertices.
GraphSum expand_to_micrographs(const Graph& g, int dim);
GraphSum expand_to_micrographs(const GraphSum& sum, int dim);

/// Graph-level [[P, X]] for a sum of 1-vector Kontsevich graphs X (one sink):
/// P(Xf, g) + P(f, Xg) - X(P(f, g)), with the new wedge's edges and X's sink edges
/// distributed by the Leibniz rule. The result has two sinks.
GraphSum graph_schouten_with_wedge(const GraphSum& x);

}  // namespace mgc

#endif  // MGC_EVAL_HPP
