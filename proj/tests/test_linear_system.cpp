#include <mgc/linear_system.hpp>

#include <doctest.h>

#include <random>

using namespace mgc;

namespace {

using Dense = std::vector<std::vector<Rational>>;

/// Rank by plain Gaussian elimination over the rationals.
std::size_t dense_rank(Dense m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

LinearSystem to_system(const Dense& a, const std::vector<Rational>& b) {
  LinearSystem sys(a.empty() ? 0 : a[0].size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    std::vector<SparseEntry> row;
    for (std::size_t c = 0; c < a[r].size(); ++c)
      if (a[r][c] != 0) row.push_back({c, a[r][c]});
    sys.add_row(std::move(row), b[r]);
  }
  return sys;
}

}  // namespace

TEST_SUITE("cohomology-solver") {
  TEST_CASE("trivial systems") {
    LinearSystem inconsistent(1);
    inconsistent.add_row({}, Rational(1));
    CHECK(solve(inconsistent).status == SolveStatus::infeasible);

    LinearSystem free(2);
    free.add_row({{0, Rational(2)}}, Rational(4));
    const Solution s = solve(free);
    CHECK(s.status == SolveStatus::underdetermined);
    CHECK(s.kernel_rank == 1);
    CHECK(s.particular == std::vector<Rational>{2, 0});

    LinearSystem empty_rows(3);
    empty_rows.add_row({}, Rational(0));
    CHECK(empty_rows.num_rows() == 0);

    LinearSystem unique(2);
    unique.add_row({{0, Rational(1)}, {1, Rational(1)}}, Rational(3));
    unique.add_row({{0, Rational(1)}, {1, Rational(-1)}}, Rational(1, 2));
    const Solution u = solve(unique);
    CHECK(u.status == SolveStatus::unique);
    CHECK(u.particular == std::vector<Rational>{Rational(7, 4), Rational(5, 4)});
    CHECK(unique.satisfied_by(u.particular));
    CHECK_FALSE(unique.satisfied_by({Rational(1), Rational(2)}));
    CHECK(to_string(SolveStatus::infeasible) == "infeasible");
  }

  TEST_CASE("random systems against dense elimination") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> dims(1, 6), entry(-3, 3), sparse(0, 2);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t rows = dims(rng), cols = dims(rng);
      Dense a(rows, std::vector<Rational>(cols));
      std::vector<Rational> b(rows);
      for (auto& row : a)
        for (auto& x : row) x = sparse(rng) == 0 ? Rational(entry(rng)) : Rational(0);
      // Half of the systems get a right-hand side in the column space.
      if (trial % 2 == 0) {
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < cols; ++c) b[r] += a[r][c] * (c + 1);
      } else {
        for (auto& x : b) x = entry(rng);
      }
      Dense augmented = a;
      for (std::size_t r = 0; r < rows; ++r) augmented[r].push_back(b[r]);
      const std::size_t rank = dense_rank(a);
      const bool feasible = dense_rank(augmented) == rank;

      const LinearSystem sys = to_system(a, b);
      const Solution s = solve(sys);
      CAPTURE(trial);
      CHECK((s.status != SolveStatus::infeasible) == feasible);
      if (!feasible) continue;
      CHECK(s.rank == rank);
      CHECK(s.kernel_rank == cols - rank);
      CHECK(s.kernel.size() == cols - rank);
      CHECK((s.status == SolveStatus::unique) == (rank == cols));
      CHECK(sys.satisfied_by(s.particular));
      for (const auto& k : s.kernel) {
        std::vector<Rational> x = s.particular;
        for (std::size_t c = 0; c < cols; ++c) x[c] += k[c];
        CHECK(sys.satisfied_by(x));
        CHECK(support_size(k) > 0);
      }
      const std::vector<Rational> sparse_x = sparsify(s, {}, 8);
      CHECK(sys.satisfied_by(sparse_x));
      CHECK(support_size(sparse_x) <= support_size(s.particular));
    }
  }

  TEST_CASE("sparsification finds a sparser point of the solution space") {
    // x0 + x1 = 1, x1 - x2 = 0: the particular solution (1, 0, 0) is already sparse,
    // but (0, 1, 1) is not; both orders leave one of them.
    LinearSystem sys(3);
    sys.add_row({{0, Rational(1)}, {1, Rational(1)}}, Rational(1));
    sys.add_row({{1, Rational(1)}, {2, Rational(-1)}}, Rational(0));
    const Solution s = solve(sys);
    const std::vector<Rational> x = sparsify(s, {{0, 1, 2}, {2, 1, 0}});
    CHECK(sys.satisfied_by(x));
    CHECK(support_size(x) == 1);
  }

  TEST_CASE("assembly from multivector columns") {
    MultiVector c0(2, 1), c1(2, 1), rhs(2, 1);
    c0.add(0b01, parse_diffpoly("rho", 2));
    c1.add(0b01, parse_diffpoly("rho_x", 2));
    c1.add(0b10, parse_diffpoly("rho", 2));
    rhs.add(0b01, parse_diffpoly("2*rho + 3*rho_x", 2));
    rhs.add(0b10, parse_diffpoly("3*rho", 2));
    const LinearSystem sys = assemble({c0, c1}, rhs);
    CHECK(sys.num_rows() == 3);
    CHECK(sys.num_columns() == 2);
    const Solution s = solve(sys);
    CHECK(s.status == SolveStatus::unique);
    CHECK(s.particular == std::vector<Rational>{2, 3});
    for (std::size_t r = 1; r < sys.num_rows(); ++r) CHECK(sys.key(r - 1) < sys.key(r));
  }
}
