#ifndef MGC_LINEAR_SYSTEM_HPP
#define MGC_LINEAR_SYSTEM_HPP

#include <mgc/multivector.hpp>
#include <mgc/rational.hpp>

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace mgc {

/// Row key of an assembled system: a multivector component and a monomial.
struct RowKey {
  std::uint32_t component = 0;
  Monomial monomial;

  friend bool operator<(const RowKey& a, const RowKey& b) {
    return std::tie(a.component, a.monomial) < std::tie(b.component, b.monomial);
  }
  friend bool operator==(const RowKey& a, const RowKey& b) {
    return a.component == b.component && a.monomial == b.monomial;
  }
};

struct SparseEntry {
  std::size_t column;
  Rational value;
};

/// Sparse exact system A x = b.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t num_columns = 0) : num_columns_(num_columns) {}

  std::size_t num_columns() const { return num_columns_; }
  std::size_t num_rows() const { return rows_.size(); }
  /// Adds a row; rows without entries and with zero rhs are dropped.
  void add_row(std::vector<SparseEntry> entries, Rational rhs, RowKey key = {});
  const std::vector<SparseEntry>& row(std::size_t r) const { return rows_[r]; }
  const Rational& rhs(std::size_t r) const { return rhs_[r]; }
  const RowKey& key(std::size_t r) const { return keys_[r]; }
  std::size_t num_nonzeros() const;

  /// Exact check of A x = b, row by row.
  bool satisfied_by(const std::vector<Rational>& x) const;

 private:
  std::size_t num_columns_;
  std::vector<std::vector<SparseEntry>> rows_;
  std::vector<Rational> rhs_;
  std::vector<RowKey> keys_;
};

/// Builds the system sum_c x_c * columns[c] = rhs with one row per
/// (component, monomial) occurring anywhere, in sorted key order.
LinearSystem assemble(const std::vector<MultiVector>& columns, const MultiVector& rhs);

enum class SolveStatus { unique, underdetermined, infeasible };
std::string_view to_string(SolveStatus s);

struct Solution {
  SolveStatus status = SolveStatus::infeasible;
  /// Particular solution (free variables zero); empty when infeasible.
  std::vector<Rational> particular;
  std::size_t rank = 0;
  std::size_t kernel_rank = 0;
  /// One vector per free column: that column set to 1, the other free columns 0.
  std::vector<std::vector<Rational>> kernel;
  std::vector<std::size_t> pivot_columns;
};

/// Fraction-free sparse elimination over the integers (rows scaled to integer
/// entries, content removed after every update), sparsest rows first, followed by
/// exact back substitution.
Solution solve(const LinearSystem& sys);

/// Number of nonzero entries.
std::size_t support_size(const std::vector<Rational>& x);

/// Greedy support reduction inside the affine solution space x0 + span(kernel).
///
/// For a column order, each column in turn is driven to zero with a kernel vector
/// that is then consumed, so earlier zeros stay zero. The best result over the
/// given orders (and `random_orders` extra shuffles from a fixed seed) is returned.
std::vector<Rational> sparsify(const Solution& sol, const std::vector<std::vector<std::size_t>>& orders,
                               int random_orders = 64, std::uint64_t seed = 20240601);

}  // namespace mgc

#endif  // MGC_LINEAR_SYSTEM_HPP
