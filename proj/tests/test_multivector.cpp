#include "property_checks.hpp"

#include <mgc/multivector.hpp>

#include <doctest.h>

using namespace mgc;

namespace {

DiffPoly P(std::string_view text, int dim = 3) { return parse_diffpoly(text, dim); }

DiffPoly component(const MultiVector& a, std::initializer_list<int> one_based) {
  std::vector<int> idx;
  for (int i : one_based) idx.push_back(i - 1);
  return a.get(idx);
}

/// (L_X P)^{ij} = X^k d_k P^{ij} - P^{kj} d_k X^i - P^{ik} d_k X^j.
MultiVector lie_derivative(const MultiVector& x, const MultiVector& p) {
  const int d = p.dim();
  MultiVector out(d, 2);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      DiffPoly sum(d);
      const int ij[2] = {i, j};
      for (int k = 0; k < d; ++k) {
        const int kk[1] = {k}, ii[1] = {i}, jj[1] = {j};
        const int kj[2] = {k, j}, ik[2] = {i, k};
        sum += x.get(kk) * dp_partial(p.get(ij), k);
        sum -= p.get(kj) * dp_partial(x.get(ii), k);
        sum -= p.get(ik) * dp_partial(x.get(jj), k);
      }
      out.set(ij, sum);
    }
  return out;
}

}  // namespace

TEST_SUITE("multivector-calculus") {
  TEST_CASE("Levi-Civita symbol") {
    CHECK(levi_civita(std::vector<int>{0, 1, 2}, 3) == 1);
    CHECK(levi_civita(std::vector<int>{1, 0, 2}, 3) == -1);
    CHECK(levi_civita(std::vector<int>{0, 0, 2}, 3) == 0);
    CHECK(levi_civita(std::vector<int>{2, 0, 1}, 3) == 1);
    CHECK_THROWS(levi_civita(std::vector<int>{0, 3, 1}, 3));
    // Total antisymmetry over all 4-tuples.
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            std::vector<int> t{a, b, c, d}, s{b, a, c, d}, u{a, b, d, c};
            CHECK(levi_civita(t, 4) == -levi_civita(s, 4));
            CHECK(levi_civita(t, 4) == -levi_civita(u, 4));
          }
  }

  TEST_CASE("components are stored for increasing tuples and read with signs") {
    MultiVector a(3, 2);
    a.set(std::vector<int>{1, 0}, P("rho"));
    CHECK(component(a, {1, 2}) == P("-rho"));
    CHECK(component(a, {2, 1}) == P("rho"));
    CHECK(component(a, {2, 2}).is_zero());
    CHECK(to_string(a) == "12: -rho\n");
  }

  TEST_CASE("Nambu bi-vectors") {
    const MultiVector p3 = nambu_bivector(3);
    CHECK(component(p3, {1, 2}) == P("rho*a1_z"));
    CHECK(component(p3, {1, 3}) == P("-rho*a1_y"));
    CHECK(component(p3, {2, 3}) == P("rho*a1_x"));
    CHECK(component(nambu_bivector(2), {1, 2}) == P("rho", 2));
    CHECK(reduce_dimension(nambu_bivector(4)) == nambu_bivector(3));
    CHECK_THROWS(nambu_bivector(3, {1, 2}));
  }

  TEST_CASE("Schouten bracket conventions") {
    const MultiVector p = nambu_bivector(3);
    // [[P, f]]^i = P^{ij} f_j.
    const MultiVector f = MultiVector::scalar(P("f"));
    const MultiVector pf = schouten(p, f);
    for (int i = 0; i < 3; ++i) {
      DiffPoly expected(3);
      for (int j = 0; j < 3; ++j) {
        const int ij[2] = {i, j};
        expected += p.get(ij) * dp_partial(P("f"), j);
      }
      const int ii[1] = {i};
      CHECK(pf.get(ii) == expected);
    }
    // [[P, X]] = -L_X P for a vector field X.
    MultiVector x(3, 1);
    x.add(0b001, P("y*z"));
    x.add(0b010, P("rho_x"));
    x.add(0b100, P("x^2 + a1_y"));
    CHECK(schouten(p, x) == Rational(-1) * lie_derivative(x, p));
    // Flipping the convention flips the bracket.
    CHECK(schouten(p, x, SchoutenSign::flipped) == Rational(-1) * schouten(p, x));
    // Brackets with constants vanish.
    CHECK(schouten(p, MultiVector::scalar(DiffPoly::constant(3, 5))).is_zero());
    CHECK(schouten(x, MultiVector::scalar(DiffPoly::constant(3, 5))).is_zero());
  }

  TEST_CASE("Poisson bi-vectors have vanishing self-bracket") {
    CHECK(schouten(plane_bivector_u(), plane_bivector_u()).is_zero());
    CHECK(schouten(nambu_bivector(3), nambu_bivector(3)).is_zero());
    CHECK(jacobiator(nambu_bivector(4)).is_zero());
    CHECK(jacobiator(nambu_bivector(2)).is_zero());
    MultiVector g(3, 2);
    g.add(0b011, P("rho"));
    g.add(0b110, P("u"));
    CHECK_FALSE(jacobiator(g).is_zero());
    CHECK(Rational(2) * jacobiator(g) == schouten(g, g));
  }

  TEST_CASE("degree overflow yields zero") {
    const MultiVector top = density_multivector(2);
    CHECK(schouten(top, plane_bivector_u()).is_zero());
    CHECK(schouten(top, plane_bivector_u()).degree() == 3);
  }

  TEST_CASE("graded antisymmetry on random multivectors") {
    const auto r = testing::check_schouten_antisymmetry(200);
    INFO(r.first_failure);
    CHECK(r.ok());
  }

  TEST_CASE("graded Jacobi identity on random 1- and 2-vectors") {
    const auto r = testing::check_schouten_jacobi(200);
    INFO(r.first_failure);
    CHECK(r.ok());
  }

  TEST_CASE("reduction drops x^d components and rejects surviving ones") {
    MultiVector x(3, 1);
    x.add(0b001, P("rho*a1_z"));
    x.add(0b100, P("rho_z*a1_x"));
    const MultiVector r = reduce_dimension(x);
    CHECK(r.dim() == 2);
    CHECK(component(r, {1}) == P("rho", 2));
    MultiVector bad(3, 1);
    bad.add(0b100, P("rho*a1_z"));
    CHECK_THROWS_AS(reduce_dimension(bad), std::invalid_argument);
  }
}
