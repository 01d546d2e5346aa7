#ifndef MGC_MULTIVECTOR_HPP
#define MGC_MULTIVECTOR_HPP

#include <mgc/jet.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace mgc {

/// Overall sign applied to the Schouten bracket. `standard` is the convention in
/// which [[P, f]]^i = P^{ij} f_j and [[P, X]] = -L_X P.
enum class SchoutenSign : int { standard = 1, flipped = -1 };

/// Degree-k multivector on R^dim with polynomial coefficients.
///
/// Components are keyed by the bitmask of a strictly increasing index tuple
/// (bit i set <=> x^i occurs), i.e. the coefficient of xi_{i1} ^ ... ^ xi_{ik}.
class MultiVector {
 public:
  MultiVector() = default;
  MultiVector(int dim, int degree);

  static MultiVector scalar(const DiffPoly& f);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool is_zero() const;

  /// Coefficient for an arbitrary index tuple: signed for permutations, zero on repeats.
  DiffPoly get(std::span<const int> indices) const;
  /// Sets the component for a strictly increasing tuple (or its permutation, with sign).
  void set(std::span<const int> indices, DiffPoly value);
  void add(std::uint32_t mask, const DiffPoly& value);

  const std::map<std::uint32_t, DiffPoly>& components() const { return coeffs_; }

  MultiVector& operator+=(const MultiVector& other);
  MultiVector& operator-=(const MultiVector& other);
  MultiVector& operator*=(const Rational& c);
  friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
  friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
  friend MultiVector operator*(const Rational& c, MultiVector a) { return a *= c; }
  friend bool operator==(const MultiVector& a, const MultiVector& b);

 private:
  int dim_ = 0;
  int degree_ = 0;
  std::map<std::uint32_t, DiffPoly> coeffs_;
};

/// Sign of the permutation sorting `indices`, 0 if an index repeats.
int levi_civita(std::span<const int> indices, int dim);

/// xi-wedge product.
MultiVector wedge(const MultiVector& a, const MultiVector& b);
/// Right derivative by the odd variable xi_k.
MultiVector right_xi_derivative(const MultiVector& a, int k);
/// Coefficient-wise d/dx^k.
MultiVector partial(const MultiVector& a, int k);

/// Schouten bracket of a degree-p and a degree-q multivector (result degree p+q-1).
/// Degree overflow (p+q-1 > dim) yields the zero multivector.
MultiVector schouten(const MultiVector& a, const MultiVector& b,
                     SchoutenSign sign = SchoutenSign::standard);

/// 1/2 [[P, P]] for a bi-vector P.
MultiVector jacobiator(const MultiVector& p, SchoutenSign sign = SchoutenSign::standard);

/// Top-degree multivector rho * d_1 ^ ... ^ d_dim.
MultiVector density_multivector(int dim);

/// Nambu-determinant bi-vector P(rho, [a_1], ..., [a_{d-2}]) on R^d:
/// P^{ij} = rho * eps^{k_1 .. k_{d-2} i j} * d_{k_1} a_1 ... d_{k_{d-2}} a_{d-2}.
/// For d = 2 this is rho * d_x ^ d_y. `casimir_labels` defaults to 1..d-2.
MultiVector nambu_bivector(int dim, std::vector<int> casimir_labels = {});

/// The generic plane bi-vector P = u d_x ^ d_y.
MultiVector plane_bivector_u();

/// Applies dp_substitute_reduction to every component and drops x^d components.
/// Throws std::invalid_argument if a component involving x^d survives.
MultiVector reduce_dimension(const MultiVector& a);

/// One line per increasing tuple: "12: rho*a1_z" (1-based indices).
std::string to_string(const MultiVector& a);

}  // namespace mgc

#endif  // MGC_MULTIVECTOR_HPP
