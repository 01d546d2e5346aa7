#ifndef MGC_REFERENCE_HPP
#define MGC_REFERENCE_HPP

#include <mgc/graph_sum.hpp>
#include <mgc/multivector.hpp>

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace mgc::reference {

/// The eleven micro-graphs (d = 3, one sink) of the published trivializing vector
/// field, verbatim in listing format.
extern const std::string_view kTheoremListing;
GraphSum theorem_listing();

/// Normalization of the published listing relative to graph evaluation of the
/// tetrahedral flow: [[P, X_listing]] = kListingScale * Q_gamma3(P), and the
/// listing reduces to kListingScale times the sunflower field.
inline constexpr int kListingScale = 8;

/// The published eleven-term formula for the 3D vector field, summed over
/// eps^i eps^j eps^k independently of any graph machinery.
MultiVector theorem_formula_field();
/// The eleven terms of that formula separately, each with unit coefficient.
std::vector<MultiVector> theorem_formula_terms();
/// The published coefficients of the eleven terms.
std::array<int, 11> theorem_formula_coefficients();

/// The twelve Leibniz graphs over two sinks (trident listed last).
extern const std::array<std::string_view, 12> kLeibnizGraphs;
Graph leibniz_graph(int number);  // 1-based

/// Tadpole topologies found in [[P, sunflower]].
extern const std::string_view kGraphA;
extern const std::string_view kGraphB;
extern const std::string_view kGraphC;

/// Hamiltonians of the 2D trivializing fields at P = u d_x ^ d_y.
extern const std::string_view kHamiltonianGamma3;
/// Stored for reference only; not verified by this library.
extern const std::string_view kHamiltonianGamma5;

}  // namespace mgc::reference

#endif  // MGC_REFERENCE_HPP
