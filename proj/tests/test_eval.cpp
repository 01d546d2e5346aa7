#include <mgc/eval.hpp>
#include <mgc/reference.hpp>

#include <doctest.h>

using namespace mgc;

namespace {

DiffPoly P(std::string_view text, int dim = 3) { return parse_diffpoly(text, dim); }

Graph K(std::string_view text, int sinks = 2) { return parse_graph(text, GraphKind::kontsevich, sinks); }

MultiVector generic_bivector_3d() {
  MultiVector g(3, 2);
  g.add(0b011, P("rho"));
  g.add(0b101, P("a1*x"));
  g.add(0b110, P("u"));
  return g;
}

}  // namespace

TEST_SUITE("graph-eval") {
  TEST_CASE("a single wedge is the bi-vector itself") {
    const DiffPoly op = evaluate(K("(0,1)"), nambu_contents(3));
    CHECK(to_multivector(op, 2, 3) == nambu_bivector(3));
    CHECK(is_skew(op, 2, 3));
    CHECK(to_multivector(evaluate(K("(0,1)"), contents_of(generic_bivector_3d())), 2, 3) == generic_bivector_3d());
  }

  TEST_CASE("micro-graph with a tadpole against a hand expansion") {
    // One rho*eps vertex pointing to itself, the sink and a Casimir:
    // sum eps^{ijk} rho_i f_j a_k.
    const Graph g = parse_graph("[(1,1),(1,0),(1,2)] (sink 0)", GraphKind::micro);
    REQUIRE(g.tadpole_count() == 1);
    const char* names = "xyz";
    DiffPoly expected(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const int e = levi_civita(std::vector<int>{i, j, k}, 3);
          if (e == 0) continue;
          expected += Rational(e) * P(std::string("rho_") + names[i] + "*f_" + names[j] + "*a1_" + names[k]);
        }
    CHECK(evaluate(g) == expected);
  }

  TEST_CASE("evaluation is linear in the graph sum") {
    const GraphSum s = gamma3_graphs();
    const Contents c = nambu_contents(3);
    DiffPoly sum(3);
    for (const auto& [g, coefficient] : s.terms()) sum += coefficient * evaluate(g, c);
    CHECK(evaluate(s, c) == sum);
    CHECK(evaluate(s, c, 4) == sum);
  }

  TEST_CASE("tetrahedral flow") {
    CHECK(gamma3_graphs().size() == 3);
    // Constant density in 2D: every term differentiates rho.
    MultiVector constant(2, 2);
    constant.add(0b11, DiffPoly::constant(2, 3));
    CHECK(gamma3_flow(constant).is_zero());
    CHECK_FALSE(gamma3_flow(nambu_bivector(2)).is_zero());
    CHECK(gamma3_flow(nambu_bivector(3)).degree() == 2);
  }

  TEST_CASE("Nambu micro-graph expansion agrees with Kontsevich evaluation") {
    CHECK(expand_to_micrographs(K("(0,1)"), 3).size() == 1);
    const GraphSum tripod = leibniz_expand(parse_graph("(0,1,2)", GraphKind::leibniz, 3));
    CHECK(expand_to_micrographs(tripod, 3).size() == 6);
    for (const GraphSum& s : {gamma3_graphs(), sunflower_graphs()}) {
      const int sinks = s.terms().begin()->first.num_sinks();
      for (int d = 3; d <= 3; ++d) {
        CAPTURE(d);
        const GraphSum micro = expand_to_micrographs(s, d);
        CHECK(to_multivector(evaluate(micro), sinks, d) == to_multivector(evaluate(s, nambu_contents(d)), sinks, d));
      }
    }
  }

  TEST_CASE("graph-level bracket with a wedge equals the Schouten bracket") {
    const GraphSum bracket = graph_schouten_with_wedge(sunflower_graphs());
    for (const MultiVector& p : {generic_bivector_3d(), nambu_bivector(3), plane_bivector_u()}) {
      const MultiVector lhs = to_multivector(evaluate(bracket, contents_of(p)), 2, p.dim());
      CHECK(lhs == schouten(p, sunflower_field(p)));
    }
    // The three tadpole topologies appear in [[P, sunflower]].
    for (std::string_view text : {reference::kGraphA, reference::kGraphB, reference::kGraphC})
      CHECK(bracket.coefficient(K(text)) != 0);
  }

  TEST_CASE("listing normalization") {
    const MultiVector p = nambu_bivector(3);
    const MultiVector x = to_multivector(evaluate(reference::theorem_listing()), 1, 3);
    CHECK(schouten(p, x) == Rational(reference::kListingScale) * gamma3_flow(p));
  }

  TEST_CASE("reading multivectors off operators") {
    CHECK_THROWS_AS(to_multivector(P("f_x*f_y*g_z"), 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(to_multivector(P("f_xy*g_z"), 2, 3), std::invalid_argument);
    CHECK_FALSE(is_skew(P("f_x*g_y"), 2, 3));
    CHECK(is_skew(P("f_x*g_y - f_y*g_x"), 2, 3));
    MultiVector expected(3, 2);
    expected.add(0b011, P("1"));
    CHECK(to_multivector(P("f_x*g_y - f_y*g_x"), 2, 3) == expected);
  }
}
