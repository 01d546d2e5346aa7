#include <mgc/linear_system.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mgc {

void LinearSystem::add_row(std::vector<SparseEntry> entries, Rational rhs, RowKey key) {
  std::erase_if(entries, [](const SparseEntry& e) { return e.value == 0; });
  if (entries.empty() && rhs == 0) return;
  for (const auto& e : entries)
    if (e.column >= num_columns_) throw std::out_of_range("linear system column out of range");
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.column < b.column; });
  rows_.push_back(std::move(entries));
  rhs_.push_back(std::move(rhs));
  keys_.push_back(std::move(key));
}

std::size_t LinearSystem::num_nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

bool LinearSystem::satisfied_by(const std::vector<Rational>& x) const {
  if (x.size() != num_columns_) return false;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational s = 0;
    for (const auto& e : rows_[r]) s += e.value * x[e.column];
    if (s != rhs_[r]) return false;
  }
  return true;
}

LinearSystem assemble(const std::vector<MultiVector>& columns, const MultiVector& rhs) {
  std::map<RowKey, std::pair<std::vector<SparseEntry>, Rational>> rows;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [mask, poly] : columns[c].components())
      for (const Term& t : poly.terms()) rows[RowKey{mask, t.monomial}].first.push_back({c, t.coefficient});
  }
  for (const auto& [mask, poly] : rhs.components())
    for (const Term& t : poly.terms()) rows[RowKey{mask, t.monomial}].second = t.coefficient;
  LinearSystem sys(columns.size());
  for (auto& [key, row] : rows) sys.add_row(std::move(row.first), std::move(row.second), key);
  return sys;
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::unique: return "unique";
    case SolveStatus::underdetermined: return "underdetermined";
    case SolveStatus::infeasible: return "infeasible";
  }
  return "?";
}

namespace {

// Integer sparse row; the rhs is stored as column `num_columns`.
struct IntEntry {
  std::size_t column;
  Integer value;
};
using IntRow = std::vector<IntEntry>;

void remove_content(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& e : row) {
    g = gcd(g, e.value);
    if (g == 1) break;
  }
  if (row.front().value < 0) g = -g;
  if (g != 1)
    for (auto& e : row) e.value /= g;
}

/// row <- a*row - b*pivot, where a = pivot lead, b = row's coefficient at the pivot
/// column divided by their gcd, so the pivot column cancels.
IntRow eliminate(const IntRow& row, const IntRow& pivot, const Integer& row_coeff) {
  const Integer& lead = pivot.front().value;
  Integer g = gcd(lead, row_coeff);
  Integer a = lead / g, b = row_coeff / g;
  IntRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].column < pivot[j].column)) {
      out.push_back({row[i].column, a * row[i].value});
      ++i;
    } else if (i == row.size() || pivot[j].column < row[i].column) {
      out.push_back({pivot[j].column, -b * pivot[j].value});
      ++j;
    } else {
      Integer v = a * row[i].value - b * pivot[j].value;
      if (v != 0) out.push_back({row[i].column, std::move(v)});
      ++i;
      ++j;
    }
  }
  remove_content(out);
  return out;
}

}  // namespace

Solution solve(const LinearSystem& sys) {
  const std::size_t n = sys.num_columns();
  std::vector<IntRow> rows;
  rows.reserve(sys.num_rows());
  for (std::size_t r = 0; r < sys.num_rows(); ++r) {
    Integer lcm_den = 1;
    for (const auto& e : sys.row(r)) lcm_den = lcm(lcm_den, e.value.get_den());
    lcm_den = lcm(lcm_den, sys.rhs(r).get_den());
    IntRow row;
    for (const auto& e : sys.row(r)) {
      Rational v = e.value * lcm_den;
      row.push_back({e.column, v.get_num()});
    }
    if (sys.rhs(r) != 0) {
      Rational v = sys.rhs(r) * lcm_den;
      row.push_back({n, v.get_num()});
    }
    remove_content(row);
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const IntRow& a, const IntRow& b) { return a.size() < b.size(); });

  std::map<std::size_t, IntRow> pivots;
  Solution sol;
  for (IntRow& row : rows) {
    while (!row.empty()) {
      auto it = pivots.find(row.front().column);
      if (it == pivots.end()) break;
      row = eliminate(row, it->second, row.front().value);
    }
    if (row.empty()) continue;
    if (row.front().column == n) {
      sol.status = SolveStatus::infeasible;
      sol.rank = pivots.size();
      return sol;
    }
    const std::size_t lead = row.front().column;
    pivots.emplace(lead, std::move(row));
  }

  sol.rank = pivots.size();
  sol.kernel_rank = n - sol.rank;
  sol.status = sol.kernel_rank == 0 ? SolveStatus::unique : SolveStatus::underdetermined;
  for (const auto& [c, r] : pivots) sol.pivot_columns.push_back(c);

  // Back substitution with free variables fixed; `rhs_scale` is 1 for the
  // particular solution and 0 for kernel vectors.
  auto back_substitute = [&](std::vector<Rational> x, const Rational& rhs_scale) {
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      const IntRow& row = it->second;
      Rational s = 0;
      for (std::size_t k = 1; k < row.size(); ++k) {
        if (row[k].column == n) {
          s += rhs_scale * Rational(row[k].value);
        } else {
          s -= Rational(row[k].value) * x[row[k].column];
        }
      }
      x[it->first] = s / Rational(row.front().value);
    }
    return x;
  };
  sol.particular = back_substitute(std::vector<Rational>(n, 0), 1);
  for (std::size_t c = 0; c < n; ++c) {
    if (pivots.count(c)) continue;
    std::vector<Rational> x(n, 0);
    x[c] = 1;
    sol.kernel.push_back(back_substitute(std::move(x), 0));
  }
  return sol;
}

std::size_t support_size(const std::vector<Rational>& x) {
  return static_cast<std::size_t>(std::count_if(x.begin(), x.end(), [](const Rational& v) { return v != 0; }));
}

namespace {

std::vector<Rational> greedy(const Solution& sol, const std::vector<std::size_t>& order) {
  std::vector<Rational> x = sol.particular;
  std::vector<std::vector<Rational>> kernel = sol.kernel;
  for (std::size_t j : order) {
    auto pivot = std::find_if(kernel.begin(), kernel.end(), [&](const auto& k) { return k[j] != 0; });
    if (pivot == kernel.end()) continue;
    std::vector<Rational> k = std::move(*pivot);
    kernel.erase(pivot);
    if (x[j] != 0) {
      Rational f = x[j] / k[j];
      for (std::size_t c = 0; c < x.size(); ++c)
        if (k[c] != 0) x[c] -= f * k[c];
    }
    for (auto& other : kernel) {
      if (other[j] == 0) continue;
      Rational f = other[j] / k[j];
      for (std::size_t c = 0; c < x.size(); ++c)
        if (k[c] != 0) other[c] -= f * k[c];
    }
    if (kernel.empty()) break;
  }
  return x;
}

}  // namespace

std::vector<Rational> sparsify(const Solution& sol, const std::vector<std::vector<std::size_t>>& orders,
                               int random_orders, std::uint64_t seed) {
  if (sol.status == SolveStatus::infeasible) throw std::invalid_argument("cannot sparsify an infeasible system");
  std::vector<Rational> best = sol.particular;
  if (sol.kernel.empty()) return best;
  const std::size_t n = best.size();
  auto consider = [&](const std::vector<std::size_t>& order) {
    std::vector<Rational> x = greedy(sol, order);
    if (support_size(x) < support_size(best)) best = std::move(x);
  };
  for (const auto& o : orders) consider(o);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  consider(order);
  std::reverse(order.begin(), order.end());
  consider(order);
  std::mt19937_64 rng(seed);
  for (int r = 0; r < random_orders; ++r) {
    std::shuffle(order.begin(), order.end(), rng);
    consider(order);
  }
  return best;
}

}  // namespace mgc
