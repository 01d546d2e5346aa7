#ifndef MGC_TESTS_PROPERTY_CHECKS_HPP
#define MGC_TESTS_PROPERTY_CHECKS_HPP

// Randomized and exhaustive property checks shared by the unit tests and the
// acceptance runner. Every check uses a fixed seed.

#include <mgc/ansatz.hpp>
#include <mgc/eval.hpp>
#include <mgc/graph_sum.hpp>
#include <mgc/multivector.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace mgc::testing {

struct CheckResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
  void record(bool good, const std::string& what) {
    ++cases;
    if (!good && failures++ == 0) first_failure = what;
  }
};

/// Random polynomial in the coordinates and in rho, rho_x (coefficients in -3..3).
inline DiffPoly random_poly(std::mt19937_64& rng, int dim, int max_terms = 3) {
  std::uniform_int_distribution<int> coeff(-3, 3), nterms(0, max_terms), nfactors(0, 2), coord(0, dim - 1),
      kind(0, 3);
  std::vector<Term> terms;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m;
    const int f = nfactors(rng);
    for (int k = 0; k < f; ++k) {
      switch (kind(rng)) {
        case 0: m.push_back(JetVar::rho()); break;
        case 1: m.push_back(JetVar::rho().derived(coord(rng))); break;
        default: m.push_back(JetVar::coordinate(coord(rng))); break;
      }
    }
    std::sort(m.begin(), m.end());
    terms.push_back(Term{m, coeff(rng)});
  }
  return DiffPoly::from_terms(dim, std::move(terms));
}

inline MultiVector random_multivector(std::mt19937_64& rng, int dim, int degree) {
  MultiVector a(dim, degree);
  for (std::uint32_t mask = 0; mask < (1u << dim); ++mask)
    if (std::popcount(mask) == degree) a.add(mask, random_poly(rng, dim));
  return a;
}

inline int parity_sign(int p) { return p % 2 == 0 ? 1 : -1; }

/// [[A, B]] = -(-1)^{(p-1)(q-1)} [[B, A]] on random multivectors in d = 2, 3.
inline CheckResult check_schouten_antisymmetry(std::size_t n, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  CheckResult r;
  for (std::size_t i = 0; i < n; ++i) {
    const int dim = 2 + static_cast<int>(i % 2);
    std::uniform_int_distribution<int> deg(0, dim);
    const int p = deg(rng), q = deg(rng);
    const MultiVector a = random_multivector(rng, dim, p), b = random_multivector(rng, dim, q);
    const MultiVector lhs = schouten(a, b);
    const MultiVector rhs = Rational(-parity_sign((p - 1) * (q - 1))) * schouten(b, a);
    r.record(lhs == rhs || (lhs.is_zero() && rhs.is_zero()),
             "antisymmetry, degrees " + std::to_string(p) + "," + std::to_string(q));
  }
  return r;
}

/// [[A, [[B, C]]]] = [[[[A, B]], C]] + (-1)^{(a-1)(b-1)} [[B, [[A, C]]]] for random
/// 1- and 2-vectors on the plane.
inline CheckResult check_schouten_jacobi(std::size_t n, std::uint64_t seed = 11) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> deg(1, 2);
  CheckResult r;
  for (std::size_t i = 0; i < n; ++i) {
    const int da = deg(rng), db = deg(rng), dc = deg(rng);
    const MultiVector a = random_multivector(rng, 2, da), b = random_multivector(rng, 2, db),
                      c = random_multivector(rng, 2, dc);
    const MultiVector lhs = schouten(a, schouten(b, c));
    const MultiVector rhs =
        schouten(schouten(a, b), c) + Rational(parity_sign((da - 1) * (db - 1))) * schouten(b, schouten(a, c));
    r.record((lhs - rhs).is_zero(),
             "Jacobi, degrees " + std::to_string(da) + "," + std::to_string(db) + "," + std::to_string(dc));
  }
  return r;
}

/// Random Kontsevich graph (2 sinks, 1..4 wedges) or micro-graph in d = 3 (1 sink,
/// 1..3 rho*eps vertices); targets are arbitrary, so tadpoles and parallel edges occur.
inline Graph random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  if (coin(rng)) {
    std::uniform_int_distribution<int> na(1, 4);
    const int n = na(rng);
    std::uniform_int_distribution<int> tgt(0, n + 1);
    std::vector<std::vector<int>> t(n);
    for (auto& tuple : t) tuple = {tgt(rng), tgt(rng)};
    return Graph::kontsevich(2, std::move(t));
  }
  std::uniform_int_distribution<int> na(1, 3);
  const int n = na(rng);
  const int total = 1 + 2 * n;
  std::uniform_int_distribution<int> tgt(0, total - 1);
  std::vector<std::vector<int>> t(n);
  for (auto& tuple : t) tuple = {tgt(rng), tgt(rng), tgt(rng)};
  return Graph::micro(3, 1, std::move(t), std::vector<int>(n, 1));
}

struct Relabelled {
  Graph graph;
  int edge_sign = 1;
};

/// Role-preserving vertex relabelling plus a random reordering of every out-tuple.
inline Relabelled random_relabel(const Graph& g, std::mt19937_64& rng) {
  const int m = g.num_sinks(), n = g.num_aerial(), t = g.num_terminals();
  std::vector<int> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin() + m, perm.begin() + m + n, rng);
  // Terminals are permuted within equal labels.
  std::vector<int> terminals(t);
  std::iota(terminals.begin(), terminals.end(), 0);
  std::stable_sort(terminals.begin(), terminals.end(),
                   [&](int a, int b) { return g.terminal_labels()[a] < g.terminal_labels()[b]; });
  for (int lo = 0; lo < t;) {
    int hi = lo;
    while (hi < t && g.terminal_labels()[terminals[hi]] == g.terminal_labels()[terminals[lo]]) ++hi;
    std::vector<int> block(terminals.begin() + lo, terminals.begin() + hi);
    std::vector<int> shuffled = block;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t k = 0; k < block.size(); ++k) perm[m + n + block[k]] = m + n + shuffled[k];
    lo = hi;
  }
  Relabelled out;
  std::vector<std::vector<int>> targets(n);
  for (int a = 0; a < n; ++a) {
    std::vector<int> tuple = g.targets()[a];
    for (int& v : tuple) v = perm[v];
    std::vector<int> order(tuple.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    int inversions = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j) inversions += order[i] > order[j];
    out.edge_sign *= parity_sign(inversions);
    std::vector<int> reordered;
    for (int k : order) reordered.push_back(tuple[k]);
    targets[perm[m + a] - m] = std::move(reordered);
  }
  std::vector<int> labels(t);
  for (int k = 0; k < t; ++k) labels[perm[m + n + k] - m - n] = g.terminal_labels()[k];
  out.graph = Graph(g.kind(), g.dim(), m, std::move(targets), std::move(labels));
  return out;
}

/// Idempotence, relabelling invariance with coherent signs, and the sign flip under
/// a single out-edge transposition.
inline CheckResult check_canonical_forms(std::size_t n, std::uint64_t seed = 13) {
  std::mt19937_64 rng(seed);
  CheckResult r;
  for (std::size_t i = 0; i < n; ++i) {
    const Graph g = random_graph(rng);
    const CanonicalForm cf = canonical_form(g);
    const CanonicalForm again = canonical_form(cf.graph);
    r.record(again.graph == cf.graph && again.sign == 1 && again.zero == cf.zero, "idempotence of " + to_string(g));
    const Relabelled rl = random_relabel(g, rng);
    const CanonicalForm cr = canonical_form(rl.graph);
    r.record(cr.graph == cf.graph && cr.zero == cf.zero && (cf.zero || cr.sign == rl.edge_sign * cf.sign),
             "relabelling of " + to_string(g));
    std::vector<std::vector<int>> swapped = g.targets();
    std::swap(swapped[0][0], swapped[0][1]);
    const CanonicalForm cs = canonical_form(Graph(g.kind(), g.dim(), g.num_sinks(), swapped, g.terminal_labels()));
    r.record(cs.graph == cf.graph && cs.zero == cf.zero && (cf.zero || cs.sign == -cf.sign),
             "transposition in " + to_string(g));
  }
  return r;
}

/// Structural generation against the brute-force reference for tiny specs.
inline CheckResult check_generation_equivalence() {
  CheckResult r;
  for (int dim = 3; dim <= 4; ++dim)
    for (int aerial = 0; aerial <= 2; ++aerial)
      for (int tadpoles = 0; tadpoles <= 1; ++tadpoles)
        for (int min_in = 0; min_in <= 1; ++min_in) {
          AnsatzSpec spec;
          spec.dim = dim;
          spec.aerial = aerial;
          spec.max_tadpoles = tadpoles;
          spec.min_terminal_indegree = min_in;
          const std::vector<Graph> fast = generate(spec).graphs;
          std::vector<Graph> slow = generate_brute_force(spec);
          std::sort(slow.begin(), slow.end());
          r.record(fast == slow, "generation d=" + std::to_string(dim) + " n=" + std::to_string(aerial) +
                                     " tadpoles<=" + std::to_string(tadpoles) + " terminal in>=" +
                                     std::to_string(min_in));
        }
  return r;
}

/// Every zero micro-graph in d = 3 with one sink and at most two rho*eps vertices,
/// over all target tuples (tadpoles and parallel edges included), evaluates to zero.
inline CheckResult check_zero_graphs_evaluate_to_zero() {
  CheckResult r;
  for (int n = 1; n <= 2; ++n) {
    const int vertices = 1 + 2 * n;
    const int per_vertex = vertices * vertices * vertices;
    int total = 1;
    for (int k = 0; k < n; ++k) total *= per_vertex;
    std::set<Graph> seen;
    for (int code = 0; code < total; ++code) {
      std::vector<std::vector<int>> t(n);
      int c = code;
      for (auto& tuple : t) {
        for (int s = 0; s < 3; ++s) {
          tuple.push_back(c % vertices);
          c /= vertices;
        }
      }
      const Graph g = Graph::micro(3, 1, std::move(t), std::vector<int>(n, 1));
      const CanonicalForm cf = canonical_form(g);
      if (!cf.zero || !seen.insert(cf.graph).second) continue;
      r.record(evaluate(g).is_zero(), "zero graph " + to_string(g));
    }
  }
  return r;
}

}  // namespace mgc::testing

#endif  // MGC_TESTS_PROPERTY_CHECKS_HPP
