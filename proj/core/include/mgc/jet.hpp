#ifndef MGC_JET_HPP
#define MGC_JET_HPP

#include <mgc/rational.hpp>

#include <boost/container/small_vector.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mgc {

/// Largest ambient dimension supported by the packed jet-variable encoding.
inline constexpr int kMaxDim = 8;

/// Function symbols that may carry partial derivatives. The numeric value is the
/// symbol rank used for the canonical monomial order.
enum class Symbol : std::uint8_t {
  rho = 0,      ///< density coefficient of the top-degree multivector
  casimir = 1,  ///< Casimir a_label, label in 1..9
  u = 2,        ///< generic coefficient of P = u dx^dy on the plane
  sink = 3,     ///< argument placed in a graph sink (f, g, h, ...), label = sink index
  coord = 4,    ///< the coordinate function x^label itself (label is 0-based)
};

/// A symbol together with the multiset of coordinates it is differentiated by.
///
/// Packed into 64 bits: 4 bits symbol, 4 bits label, then eight 7-bit derivative
/// counts with coordinate 0 most significant. Integer order on the packed word is
/// the canonical factor order (symbol rank, label, multi-index).
class JetVar {
 public:
  constexpr JetVar() = default;
  JetVar(Symbol symbol, int label);
  JetVar(Symbol symbol, int label, std::initializer_list<int> coords);

  static JetVar rho() { return {Symbol::rho, 0}; }
  static JetVar casimir(int label) { return {Symbol::casimir, label}; }
  static JetVar u() { return {Symbol::u, 0}; }
  static JetVar sink(int index) { return {Symbol::sink, index}; }
  static JetVar coordinate(int index) { return {Symbol::coord, index}; }

  Symbol symbol() const { return static_cast<Symbol>(bits_ >> 60); }
  int label() const { return static_cast<int>((bits_ >> 56) & 0xF); }
  int count(int coord) const { return static_cast<int>((bits_ >> shift(coord)) & 0x7F); }
  int order() const;
  bool underived() const { return (bits_ & kCountMask) == 0; }

  /// Returns the variable differentiated once more by x^coord. Not valid for Symbol::coord.
  JetVar derived(int coord) const;
  JetVar with_count(int coord, int value) const;

  std::uint64_t bits() const { return bits_; }
  friend auto operator<=>(const JetVar&, const JetVar&) = default;

 private:
  static constexpr std::uint64_t kCountMask = (std::uint64_t{1} << 56) - 1;
  static constexpr int shift(int coord) { return 49 - 7 * coord; }
  std::uint64_t bits_ = 0;
};

/// Sorted multiset of jet variables; the empty monomial is the constant 1.
using Monomial = boost::container::small_vector<JetVar, 10>;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

Monomial monomial_product(const Monomial& a, const Monomial& b);

struct Term {
  Monomial monomial;
  Rational coefficient;
};

/// Exact multivariate polynomial in jet variables over R^dim.
///
/// Terms are kept sorted by monomial with no zero coefficients, so equality of two
/// DiffPolys is structural equality. A default-constructed DiffPoly is the zero
/// polynomial with unset dimension; it combines with polynomials of any dimension.
class DiffPoly {
 public:
  DiffPoly() = default;
  explicit DiffPoly(int dim);

  static DiffPoly constant(int dim, const Rational& c);
  static DiffPoly variable(int dim, JetVar v);
  /// Builds from unsorted terms, merging repeats and dropping zeros.
  static DiffPoly from_terms(int dim, std::vector<Term> terms);

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// Coefficient of an exact monomial (zero if absent).
  Rational coefficient(const Monomial& m) const;

  DiffPoly& operator+=(const DiffPoly& other);
  DiffPoly& operator-=(const DiffPoly& other);
  DiffPoly& operator*=(const Rational& c);

  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(DiffPoly a, const Rational& c) { return a *= c; }
  friend DiffPoly operator*(const Rational& c, DiffPoly a) { return a *= c; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  DiffPoly operator-() const;

  friend bool operator==(const DiffPoly& a, const DiffPoly& b);

 private:
  friend class PolyBuilder;
  int dim_ = 0;
  std::vector<Term> terms_;
};

/// Hash-based accumulator for building large sums before canonical sorting.
class PolyBuilder {
 public:
  explicit PolyBuilder(int dim) : dim_(dim) {}
  void add(const Monomial& m, const Rational& c);
  void add(const DiffPoly& p, const Rational& scale = 1);
  void add_product(const DiffPoly& a, const DiffPoly& b, const Rational& scale = 1);
  DiffPoly build() &&;

 private:
  int dim_;
  std::unordered_map<Monomial, Rational, MonomialHash> acc_;
};

// Ring operations under the names used throughout the documentation.
DiffPoly dp_add(const DiffPoly& p, const DiffPoly& q);
DiffPoly dp_mul(const DiffPoly& p, const DiffPoly& q);
DiffPoly dp_scale(const DiffPoly& p, const Rational& c);

/// Total derivative d/dx^coord (coord is 0-based) by the Leibniz rule.
DiffPoly dp_partial(const DiffPoly& p, int coord);
/// Applies d/dx^i counts[i] times for every i.
DiffPoly dp_partial(const DiffPoly& p, const std::array<int, kMaxDim>& counts);

/// Dimensional reduction R^d -> R^{d-1}: the last Casimir becomes x^d, and rho
/// together with every other symbol loses its dependence on x^d.
///
/// a_{d-2} differentiated exactly once by x^d becomes 1; any other derivative of it
/// becomes 0; every other factor that is differentiated by x^d becomes 0. Throws
/// std::invalid_argument if p contains an underived a_{d-2} or the coordinate x^d.
DiffPoly dp_substitute_reduction(const DiffPoly& p);

/// Evaluates p after replacing each jet variable by a rational value.
Rational dp_evaluate(const DiffPoly& p, const std::function<Rational(JetVar)>& value);

// Text form: "12*rho*rho_xy*a1_z - 3*u_x^2". Coordinates are x,y,z for dim <= 3 and
// x1..xd otherwise. Casimirs print as a1..a9 ("a" is accepted on input).
std::string coordinate_name(int dim, int coord);
std::string to_string(JetVar v, int dim);
std::string to_string(const Monomial& m, int dim);
std::string to_string(const DiffPoly& p);

/// Parses the text form; throws std::invalid_argument with a position on error.
DiffPoly parse_diffpoly(std::string_view text, int dim);

}  // namespace mgc

#endif  // MGC_JET_HPP
