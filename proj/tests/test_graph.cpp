#include "property_checks.hpp"

#include <mgc/eval.hpp>
#include <mgc/graph_sum.hpp>
#include <mgc/reference.hpp>

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace mgc;

namespace {

int permutation_sign(std::vector<int> p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    while (p[i] != static_cast<int>(i)) {
      std::swap(p[i], p[p[i]]);
      sign = -sign;
    }
  return sign;
}

/// Independent zero test: searches all role-preserving vertex permutations for an
/// automorphism whose action on the ordered out-tuples is odd.
bool brute_force_is_zero(const Graph& g) {
  for (const auto& t : g.targets()) {
    std::vector<int> s = t;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return true;  // swap two equal edges
  }
  const int m = g.num_sinks(), n = g.num_aerial(), t = g.num_terminals();
  std::vector<int> aerial(n), terminals(t);
  std::iota(aerial.begin(), aerial.end(), 0);
  do {
    std::iota(terminals.begin(), terminals.end(), 0);
    do {
      bool labels_ok = true;
      for (int k = 0; k < t; ++k) labels_ok = labels_ok && g.terminal_labels()[k] == g.terminal_labels()[terminals[k]];
      if (!labels_ok) continue;
      auto image = [&](int v) {
        if (v < m) return v;
        if (v < m + n) return m + aerial[v - m];
        return m + n + terminals[v - m - n];
      };
      bool automorphism = true;
      int sign = 1;
      for (int a = 0; a < n && automorphism; ++a) {
        const auto& src = g.targets()[a];
        const auto& dst = g.targets()[aerial[a]];
        if (src.size() != dst.size()) {
          automorphism = false;
          break;
        }
        std::vector<int> sigma;
        for (int v : src) {
          auto it = std::find(dst.begin(), dst.end(), image(v));
          if (it == dst.end()) {
            automorphism = false;
            break;
          }
          sigma.push_back(static_cast<int>(it - dst.begin()));
        }
        if (automorphism) sign *= permutation_sign(sigma);
      }
      if (automorphism && sign < 0) return true;
    } while (std::next_permutation(terminals.begin(), terminals.end()));
  } while (std::next_permutation(aerial.begin(), aerial.end()));
  return false;
}

Graph K(std::string_view text, int sinks = 2) { return parse_graph(text, GraphKind::kontsevich, sinks); }

}  // namespace

TEST_SUITE("graph-core") {
  TEST_CASE("parsing Kontsevich, Leibniz and micro-graphs") {
    const Graph g = K("(0,1;2,4;2,5;2,3)");
    CHECK(g.num_sinks() == 2);
    CHECK(g.num_aerial() == 4);
    CHECK(g.targets()[1] == std::vector<int>{2, 4});

    const Graph micro =
        parse_graph("[(0,4),(0,5),(0,6),(5,0),(5,1),(5,6),(6,2),(6,3),(6,6)] (sink 2)", GraphKind::micro);
    CHECK(micro.dim() == 3);
    CHECK(micro.num_sinks() == 1);
    CHECK(micro.num_aerial() == 3);
    CHECK(micro.num_terminals() == 3);
    CHECK(micro.tadpole_count() == 1);

    // A trailing separator is tolerated.
    CHECK(K("(0,1;)") == K("(0,1)"));

    const GraphTerm term = parse_term("-3 * (0,3;1,4;2,5;2,3)", GraphKind::kontsevich, 2);
    CHECK(term.coefficient == -3);

    // The trident may appear in any position: the first Leibniz graph with its
    // first and last aerial vertices exchanged.
    const Graph l1 = reference::leibniz_graph(1);
    const Graph l2 = parse_graph("(0,1,4;4,2;3,2)", GraphKind::leibniz, 2);
    CHECK(canonical_form(l1).graph == canonical_form(l2).graph);
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(K("(0,1;2,4"), std::invalid_argument);
    CHECK_THROWS_AS(K("(0,1;2,9)"), std::invalid_argument);
    CHECK_THROWS_AS(K("(0,1,2;2,3)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph("(0,1;2,3)", GraphKind::leibniz, 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph("[(0,4),(0,5)] (sink 2)", GraphKind::micro), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph("[(0,1),(0,2),(0,3)]", GraphKind::micro), std::invalid_argument);
  }

  TEST_CASE("emitter output parses back to the same canonical graph") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
      const Graph g = canonical_form(testing::random_graph(rng)).graph;
      // The micro-graph text form lists edges only, so isolated terminals cannot round-trip.
      const auto in = g.in_degrees();
      bool isolated = false;
      for (int t = 0; t < g.num_terminals(); ++t) isolated = isolated || in[g.terminal_id(t)] == 0;
      if (isolated) continue;
      const Graph back = parse_graph(to_string(g), g.kind(), g.num_sinks());
      CHECK(canonical_form(back).graph == g);
      CHECK(graph_from_json(to_json(g)) == g);
    }
  }

  TEST_CASE("canonical form: antisymmetry of ordered edges and relabelling") {
    const CanonicalForm a = canonical_form(K("(0,1;2,1)", 2));
    const CanonicalForm b = canonical_form(K("(1,0;2,1)", 2));
    CHECK(a.graph == b.graph);
    CHECK(a.sign == -b.sign);
    // The sunflower graph with aerial vertices 1 and 2 exchanged.
    const CanonicalForm s1 = canonical_form(K("(0,1;1,3;1,2)", 1));
    const CanonicalForm s2 = canonical_form(K("(2,3;0,2;2,1)", 1));
    CHECK_FALSE(s1.zero);
    CHECK(s1.graph == s2.graph);
    CHECK(s1.sign == s2.sign);
    const CanonicalForm again = canonical_form(s1.graph);
    CHECK(again.graph == s1.graph);
    CHECK(again.sign == 1);
  }

  TEST_CASE("zero graphs agree with a brute-force automorphism search") {
    CHECK_FALSE(is_zero(K("(0,1)")));
    const GraphSum g3 = gamma3_graphs();
    for (const auto& [g, c] : g3.terms()) CHECK_FALSE(is_zero(g));
    // Exhaustive over all micro-graphs in d = 3 with one sink and two rho*eps vertices.
    int zero_without_parallel_edges = 0;
    int checked = 0;
    const int vertices = 5;
    for (int code = 0; code < 125 * 125; ++code) {
      std::vector<std::vector<int>> t(2);
      int c = code;
      for (auto& tuple : t)
        for (int s = 0; s < 3; ++s) {
          tuple.push_back(c % vertices);
          c /= vertices;
        }
      const Graph g = Graph::micro(3, 1, t, {1, 1});
      const bool expected = brute_force_is_zero(g);
      CHECK(is_zero(g) == expected);
      ++checked;
      if (expected && !g.has_parallel_edges()) ++zero_without_parallel_edges;
    }
    CHECK(checked == 15625);
    CHECK(zero_without_parallel_edges > 0);
  }

  TEST_CASE("graph sums: merging, zero removal and order independence") {
    GraphSum s;
    s.add(K("(0,1)"), 2);
    s.add(K("(1,0)"), 2);
    CHECK(s.empty());

    std::mt19937_64 rng(17);
    std::vector<std::pair<Graph, int>> terms;
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int i = 0; i < 60; ++i) terms.emplace_back(testing::random_graph(rng), coeff(rng));
    std::vector<std::pair<Graph, int>> kontsevich;
    for (auto& t : terms)
      if (t.first.kind() == GraphKind::kontsevich) kontsevich.push_back(t);
    GraphSum forward, backward;
    for (auto& [g, c] : kontsevich) forward.add(g, c);
    std::reverse(kontsevich.begin(), kontsevich.end());
    for (auto& [g, c] : kontsevich) backward.add(g, c);
    CHECK(forward == backward);
    for (const auto& [g, c] : forward.terms()) {
      CHECK(c != 0);
      CHECK(canonical_form(g).graph == g);
    }
  }

  TEST_CASE("graph sum text round trip") {
    const GraphSum g3 = gamma3_graphs();
    CHECK(parse_graph_sum(to_string(g3), GraphKind::kontsevich, 2) == g3);
    const GraphSum listing = reference::theorem_listing();
    CHECK(listing.size() == 11);
    CHECK(parse_graph_sum(to_string(listing), GraphKind::micro, 0, 3) == listing);
  }

  TEST_CASE("Leibniz expansion") {
    const GraphSum tripod = leibniz_expand(parse_graph("(0,1,2)", GraphKind::leibniz, 3));
    CHECK(tripod.size() == 3);

    const Graph a = parse_graph(reference::kGraphA, GraphKind::kontsevich, 2);
    const GraphSum eight = leibniz_expand(reference::leibniz_graph(8));
    CHECK(eight.coefficient(a) != 0);
    int tadpole_graphs = 0;
    for (const auto& [g, c] : eight.terms()) tadpole_graphs += g.tadpole_count() > 0;
    CHECK(tadpole_graphs >= 2);

    // Oracle: every expansion evaluates like the Leibniz graph with the Jacobiator of a
    // generic (non-Poisson) bi-vector in its trident. No listed expansion cancels completely.
    MultiVector generic(3, 2);
    generic.add(0b011, parse_diffpoly("rho", 3));
    generic.add(0b101, parse_diffpoly("a1", 3));
    generic.add(0b110, parse_diffpoly("u", 3));
    const Contents contents = contents_of(generic);
    for (int k = 1; k <= 12; ++k) {
      const Graph g = reference::leibniz_graph(k);
      const GraphSum e = leibniz_expand(g);
      CAPTURE(k);
      CHECK_FALSE(e.empty());
      CHECK(evaluate(e, contents) == evaluate(g, contents));
    }
  }
}
