#ifndef MGC_COHOMOLOGY_HPP
#define MGC_COHOMOLOGY_HPP

#include <mgc/graph_sum.hpp>
#include <mgc/linear_system.hpp>
#include <mgc/multivector.hpp>

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mgc {

/// Vector fields of 1-vector micro-graphs (one sink), evaluated in parallel.
std::vector<MultiVector> ansatz_fields(const std::vector<Graph>& ansatz, int jobs = 1);

/// Sum of coefficient * graph over the nonzero coefficients.
GraphSum combination(const std::vector<Graph>& graphs, const std::vector<Rational>& coefficients);

/// System Q = [[P, sum_g c_g X_g]] with one column per ansatz field.
LinearSystem assemble_coboundary(const MultiVector& q, const MultiVector& p, const std::vector<MultiVector>& fields,
                                 SchoutenSign sign = SchoutenSign::standard, int jobs = 1);

struct CoboundaryResult {
  LinearSystem system;
  Solution solution;
  /// Sparsest solution found by the greedy pass (empty if infeasible).
  std::vector<Rational> sparse;
  std::size_t rows = 0;
  std::size_t columns = 0;
  /// Q - [[P, X_sparse]] re-evaluated independently of the elimination.
  bool residual_zero = false;
};

/// Assembles, solves, sparsifies, and re-verifies the coboundary equation.
CoboundaryResult solve_coboundary(const MultiVector& q, const MultiVector& p, const std::vector<Graph>& ansatz,
                                  SchoutenSign sign = SchoutenSign::standard, int jobs = 1);

/// Velocities of the Casimir and the density under the tetrahedral flow in 3D:
/// adot = [[a, X]] and rhodot d_x^d_y^d_z = [[rho d_x^d_y^d_z, X]].
struct Velocities {
  DiffPoly adot;
  DiffPoly rhodot;
};

/// Parses "adot = <poly>" / "rhodot = <poly>" lines ('#' starts a comment).
Velocities parse_velocities(std::string_view text, int dim);
std::string format_velocities(const Velocities& v);
/// Velocities induced by a vector field X in 3D.
Velocities velocities_of(const MultiVector& x);

/// The two shortcut systems over the same columns: [[a, X]] = adot and
/// [[rho d_xyz, X]] = rhodot d_xyz.
std::pair<LinearSystem, LinearSystem> shortcut_systems(const Velocities& v, const std::vector<MultiVector>& fields,
                                                       SchoutenSign sign = SchoutenSign::standard);
/// Both systems stacked into one.
LinearSystem merge(const LinearSystem& a, const LinearSystem& b);

/// Dimensional reduction of a vector field: the last Casimir becomes x^d and the
/// other functions lose their x^d dependence. Throws if the x^d component survives.
MultiVector reduce_solution(const MultiVector& x);

/// H with X = H_y d_x - H_x d_y on the plane, or nothing if X is not Hamiltonian.
/// The candidate monomials for H are obtained from those of X by removing one
/// derivative from one factor or by multiplying with a coordinate.
std::optional<DiffPoly> hamiltonian_of(const MultiVector& x);
/// The Hamiltonian vector field H_y d_x - H_x d_y.
MultiVector hamiltonian_field(const DiffPoly& h);

/// H with [[P, H]] = Y, searched among all products of the given underived
/// symbols whose derivative orders add up to `order`; nothing if no such H exists.
std::optional<DiffPoly> hamiltonian_potential(const MultiVector& p, const MultiVector& y,
                                              const std::vector<JetVar>& factors, int order,
                                              SchoutenSign sign = SchoutenSign::standard);

struct LeibnizReport {
  GraphSum lhs;           ///< Q_gamma3 - [[P, sunflower]] as Kontsevich graphs
  GraphSum bracket;       ///< [[P, sunflower]] as Kontsevich graphs
  std::vector<GraphSum> expansions;  ///< of the twelve Leibniz graphs
  std::array<Rational, 3> abc{};     ///< coefficients of graphs A, B, C in the bracket
  SolveStatus status = SolveStatus::infeasible;
  SolveStatus status_tadpole_free = SolveStatus::infeasible;
  SolveStatus status_sanity = SolveStatus::infeasible;
  Rational sanity_coefficient;  ///< coefficient of Leibniz graph 1 when matching its own expansion
  int max_indegree_in_expansions = 0;
  int b_max_indegree = 0;
  bool c_in_expansions_4_to_7 = false;
  std::vector<int> expansions_containing_a;  ///< 1-based Leibniz graph numbers
  int siblings_of_a = 0;          ///< other tadpole graphs in the expansion of graph 8
  int siblings_of_a_in_lhs = 0;   ///< how many of those occur in lhs

  bool infeasible() const { return status == SolveStatus::infeasible; }
};

LeibnizReport leibniz_impossibility_2d();

}  // namespace mgc

#endif  // MGC_COHOMOLOGY_HPP
