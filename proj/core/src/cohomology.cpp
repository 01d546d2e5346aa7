#include <mgc/cohomology.hpp>
#include <mgc/eval.hpp>
#include <mgc/parallel.hpp>
#include <mgc/reference.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mgc {

std::vector<MultiVector> ansatz_fields(const std::vector<Graph>& ansatz, int jobs) {
  std::vector<MultiVector> fields(ansatz.size());
  parallel_for(ansatz.size(), jobs, [&](std::size_t i) {
    fields[i] = to_multivector(evaluate(ansatz[i]), ansatz[i].num_sinks(), ansatz[i].dim());
  });
  return fields;
}

GraphSum combination(const std::vector<Graph>& graphs, const std::vector<Rational>& coefficients) {
  GraphSum sum(graphs.empty() ? GraphKind::micro : graphs.front().kind(), graphs.empty() ? 0 : graphs.front().dim());
  for (std::size_t i = 0; i < graphs.size(); ++i)
    if (coefficients.at(i) != 0) sum.add(graphs[i], coefficients[i]);
  return sum;
}

LinearSystem assemble_coboundary(const MultiVector& q, const MultiVector& p, const std::vector<MultiVector>& fields,
                                 SchoutenSign sign, int jobs) {
  if (q.dim() != p.dim()) throw std::invalid_argument("Q and P live in different dimensions");
  std::vector<MultiVector> columns(fields.size());
  parallel_for(fields.size(), jobs, [&](std::size_t i) {
    if (fields[i].dim() != p.dim()) throw std::invalid_argument("ansatz field dimension mismatch");
    columns[i] = schouten(p, fields[i], sign);
  });
  return assemble(columns, q);
}

CoboundaryResult solve_coboundary(const MultiVector& q, const MultiVector& p, const std::vector<Graph>& ansatz,
                                  SchoutenSign sign, int jobs) {
  std::vector<MultiVector> fields = ansatz_fields(ansatz, jobs);
  CoboundaryResult r;
  r.system = assemble_coboundary(q, p, fields, sign, jobs);
  r.rows = r.system.num_rows();
  r.columns = r.system.num_columns();
  r.solution = solve(r.system);
  if (r.solution.status == SolveStatus::infeasible) return r;
  // Preferred orders: drop tadpole-free graphs first, or graphs with tadpoles first.
  std::vector<std::size_t> tadpole_first, tadpole_last;
  for (std::size_t i = 0; i < ansatz.size(); ++i) (ansatz[i].tadpole_count() ? tadpole_first : tadpole_last).push_back(i);
  std::vector<std::size_t> a = tadpole_first, b = tadpole_last;
  a.insert(a.end(), tadpole_last.begin(), tadpole_last.end());
  b.insert(b.end(), tadpole_first.begin(), tadpole_first.end());
  r.sparse = sparsify(r.solution, {a, b});
  MultiVector x(p.dim(), 1);
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (r.sparse[i] != 0) x += r.sparse[i] * fields[i];
  r.residual_zero = (q - schouten(p, x, sign)).is_zero();
  return r;
}

Velocities parse_velocities(std::string_view text, int dim) {
  Velocities v;
  bool have_a = false, have_rho = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("velocity line " + std::to_string(number) + ": missing '='");
    std::string name = line.substr(0, eq);
    name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
    DiffPoly value = parse_diffpoly(std::string_view(line).substr(eq + 1), dim);
    if (name == "adot") {
      v.adot = std::move(value);
      have_a = true;
    } else if (name == "rhodot") {
      v.rhodot = std::move(value);
      have_rho = true;
    } else {
      throw std::invalid_argument("velocity line " + std::to_string(number) + ": unknown name '" + name + "'");
    }
  }
  if (!have_a || !have_rho) throw std::invalid_argument("velocity data needs both adot and rhodot");
  return v;
}

std::string format_velocities(const Velocities& v) {
  return "adot = " + to_string(v.adot) + "\nrhodot = " + to_string(v.rhodot) + "\n";
}

Velocities velocities_of(const MultiVector& x) {
  if (x.dim() != 3 || x.degree() != 1) throw std::invalid_argument("velocities need a vector field on R^3");
  MultiVector a = MultiVector::scalar(DiffPoly::variable(3, JetVar::casimir(1)));
  MultiVector top = density_multivector(3);
  Velocities v;
  MultiVector adot = schouten(a, x);
  MultiVector rho = schouten(top, x);
  v.adot = adot.is_zero() ? DiffPoly(3) : adot.components().begin()->second;
  v.rhodot = rho.is_zero() ? DiffPoly(3) : rho.components().begin()->second;
  return v;
}

std::pair<LinearSystem, LinearSystem> shortcut_systems(const Velocities& v, const std::vector<MultiVector>& fields,
                                                       SchoutenSign sign) {
  const MultiVector a = MultiVector::scalar(DiffPoly::variable(3, JetVar::casimir(1)));
  const MultiVector top = density_multivector(3);
  std::vector<MultiVector> acols, rcols;
  for (const auto& x : fields) {
    acols.push_back(schouten(a, x, sign));
    rcols.push_back(schouten(top, x, sign));
  }
  MultiVector adot(3, 0);
  adot.add(0, v.adot);
  MultiVector rdot(3, 3);
  rdot.add(0b111, v.rhodot);
  return {assemble(acols, adot), assemble(rcols, rdot)};
}

LinearSystem merge(const LinearSystem& a, const LinearSystem& b) {
  if (a.num_columns() != b.num_columns()) throw std::invalid_argument("systems have different columns");
  LinearSystem out(a.num_columns());
  for (const LinearSystem* s : {&a, &b})
    for (std::size_t r = 0; r < s->num_rows(); ++r) out.add_row(s->row(r), s->rhs(r), s->key(r));
  return out;
}

MultiVector reduce_solution(const MultiVector& x) {
  if (x.dim() < 3) throw std::invalid_argument("reduction needs d >= 3");
  return reduce_dimension(x);
}

MultiVector hamiltonian_field(const DiffPoly& h) {
  if (h.dim() != 2 && h.dim() != 0) throw std::invalid_argument("Hamiltonian fields live on the plane");
  DiffPoly hh = h.dim() == 0 ? DiffPoly(2) : h;
  MultiVector x(2, 1);
  x.add(0b01, dp_partial(hh, 1));
  x.add(0b10, -dp_partial(hh, 0));
  return x;
}

std::optional<DiffPoly> hamiltonian_of(const MultiVector& x) {
  if (x.dim() != 2 || x.degree() != 1) throw std::invalid_argument("hamiltonian_of needs a vector field on the plane");
  if (x.is_zero()) return DiffPoly(2);
  std::set<Monomial> candidates;
  for (const auto& [mask, poly] : x.components()) {
    for (const Term& t : poly.terms()) {
      for (std::size_t f = 0; f < t.monomial.size(); ++f) {
        const JetVar v = t.monomial[f];
        if (v.symbol() == Symbol::coord) continue;
        for (int c = 0; c < 2; ++c) {
          if (v.count(c) == 0) continue;
          Monomial m = t.monomial;
          m[f] = v.with_count(c, v.count(c) - 1);
          std::sort(m.begin(), m.end());
          candidates.insert(m);
        }
      }
      for (int c = 0; c < 2; ++c) {
        Monomial m = t.monomial;
        m.push_back(JetVar::coordinate(c));
        std::sort(m.begin(), m.end());
        candidates.insert(m);
      }
    }
  }
  std::vector<Monomial> basis(candidates.begin(), candidates.end());
  std::vector<MultiVector> columns;
  for (const Monomial& m : basis) columns.push_back(hamiltonian_field(DiffPoly::from_terms(2, {Term{m, 1}})));
  Solution sol = solve(assemble(columns, x));
  if (sol.status == SolveStatus::infeasible) return std::nullopt;
  std::vector<Term> terms;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (sol.particular[i] != 0) terms.push_back(Term{basis[i], sol.particular[i]});
  return DiffPoly::from_terms(2, std::move(terms));
}

namespace {

/// All monomials prod_f factors[f] with derivative multi-indices of total order `order`.
void distribute(const std::vector<JetVar>& factors, std::size_t f, int order, int dim, Monomial& current,
                std::set<Monomial>& out) {
  if (f == factors.size()) {
    if (order != 0) return;
    Monomial m = current;
    std::sort(m.begin(), m.end());
    out.insert(std::move(m));
    return;
  }
  // Multi-indices of every order k <= order for factor f.
  std::array<int, kMaxDim> counts{};
  auto rec = [&](auto&& self, int coord, int left) -> void {
    if (coord == dim - 1) {
      counts[coord] = left;
      JetVar v = factors[f];
      for (int c = 0; c < dim; ++c) v = v.with_count(c, counts[c]);
      current.push_back(v);
      const int used = std::accumulate(counts.begin(), counts.begin() + dim, 0);
      distribute(factors, f + 1, order - used, dim, current, out);
      current.pop_back();
      return;
    }
    for (int k = 0; k <= left; ++k) {
      counts[coord] = k;
      self(self, coord + 1, left - k);
    }
  };
  for (int k = 0; k <= order; ++k) rec(rec, 0, k);
}

}  // namespace

std::optional<DiffPoly> hamiltonian_potential(const MultiVector& p, const MultiVector& y,
                                              const std::vector<JetVar>& factors, int order, SchoutenSign sign) {
  if (y.is_zero()) return DiffPoly(p.dim());
  std::set<Monomial> candidates;
  Monomial current;
  distribute(factors, 0, order, p.dim(), current, candidates);
  std::vector<Monomial> basis(candidates.begin(), candidates.end());
  std::vector<MultiVector> columns(basis.size());
  parallel_for(basis.size(), 0, [&](std::size_t i) {
    columns[i] = schouten(p, MultiVector::scalar(DiffPoly::from_terms(p.dim(), {Term{basis[i], 1}})), sign);
  });
  Solution sol = solve(assemble(columns, y));
  if (sol.status == SolveStatus::infeasible) return std::nullopt;
  std::vector<Term> terms;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (sol.particular[i] != 0) terms.push_back(Term{basis[i], sol.particular[i]});
  return DiffPoly::from_terms(p.dim(), std::move(terms));
}

namespace {

/// Rows: every graph occurring anywhere; columns: the given sums.
Solution match(const std::vector<const GraphSum*>& columns, const GraphSum& rhs) {
  std::map<Graph, std::vector<SparseEntry>> rows;
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [g, coeff] : columns[c]->terms()) rows[g].push_back({c, coeff});
  for (const auto& [g, coeff] : rhs.terms()) rows[g];
  LinearSystem sys(columns.size());
  for (auto& [g, entries] : rows) sys.add_row(std::move(entries), rhs.coefficient(g));
  return solve(sys);
}

}  // namespace

LeibnizReport leibniz_impossibility_2d() {
  LeibnizReport r;
  GraphSum sunflower = sunflower_graphs();
  r.bracket = graph_schouten_with_wedge(sunflower);
  r.lhs = gamma3_graphs() - r.bracket;

  const std::array<std::string_view, 3> abc = {reference::kGraphA, reference::kGraphB, reference::kGraphC};
  for (int k = 0; k < 3; ++k) r.abc[k] = r.bracket.coefficient(parse_graph(abc[k], GraphKind::kontsevich, 2));
  const Graph a = canonical_form(parse_graph(reference::kGraphA, GraphKind::kontsevich, 2)).graph;
  const Graph b = parse_graph(reference::kGraphB, GraphKind::kontsevich, 2);
  const Graph c = canonical_form(parse_graph(reference::kGraphC, GraphKind::kontsevich, 2)).graph;
  {
    auto in = b.in_degrees();
    r.b_max_indegree = *std::max_element(in.begin(), in.end());
  }

  for (int k = 1; k <= 12; ++k) r.expansions.push_back(leibniz_expand(reference::leibniz_graph(k)));
  for (int k = 1; k <= 12; ++k) {
    const GraphSum& e = r.expansions[k - 1];
    for (const auto& [g, coeff] : e.terms()) {
      auto in = g.in_degrees();
      r.max_indegree_in_expansions = std::max(r.max_indegree_in_expansions, *std::max_element(in.begin(), in.end()));
    }
    if (k >= 4 && k <= 7 && e.terms().count(c)) r.c_in_expansions_4_to_7 = true;
    if (e.terms().count(a)) r.expansions_containing_a.push_back(k);
  }
  for (const auto& [g, coeff] : r.expansions[7].terms()) {
    if (g == a || g.tadpole_count() == 0) continue;
    ++r.siblings_of_a;
    if (r.lhs.terms().count(g)) ++r.siblings_of_a_in_lhs;
  }

  std::vector<const GraphSum*> all, tadpole_free;
  for (int k = 0; k < 12; ++k) {
    all.push_back(&r.expansions[k]);
    if (k < 3) tadpole_free.push_back(&r.expansions[k]);
  }
  r.status = match(all, r.lhs).status;
  r.status_tadpole_free = match(tadpole_free, r.lhs).status;
  const Solution sanity = match(all, r.expansions[0]);
  r.status_sanity = sanity.status;
  if (!sanity.particular.empty()) r.sanity_coefficient = sanity.particular[0];
  return r;
}

}  // namespace mgc
