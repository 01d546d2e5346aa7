#include <mgc/reference.hpp>

#include <mgc/jet.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mgc::reference {

const std::string_view kTheoremListing =
    " 16 * [(0,4), (0,5), (0,6), (5,0), (5,1), (5,6), (6,0), (6,2), (6,3)]      (sink 2)\n"
    " 24 * [(0,4), (0,5), (0,6), (5,0), (5,1), (5,6), (6,1), (6,2), (6,3)]      (sink 2)\n"
    " 16 * [(0,4), (0,5), (0,6), (5,0), (5,1), (5,2), (6,1), (6,3), (6,5)]      (sink 2)\n"
    "-16 * [(0,4), (0,5), (0,6), (5,0), (5,1), (5,2), (6,1), (6,3), (6,5)]      (sink 4)\n"
    " 12 * [(0,4), (0,5), (0,6), (5,1), (5,2), (5,6), (6,1), (6,2), (6,3)]      (sink 3)\n"
    "-12 * [(0,4), (0,5), (0,6), (5,1), (5,2), (5,6), (6,1), (6,2), (6,3)]      (sink 4)\n"
    " 24 * [(4,0), (4,1), (4,6), (5,0), (5,1), (5,2), (6,0), (6,2), (6,3)]      (sink 3)\n"
    "-24 * [(4,0), (4,1), (4,6), (5,0), (5,2), (5,4), (6,0), (6,1), (6,3)]      (sink 2)\n"
    "  8 * [(4,0), (4,1), (4,5), (5,0), (5,2), (5,6), (6,0), (6,3), (6,4)]      (sink 1)\n"
    " -8 * [(4,0), (4,1), (4,5), (5,2), (5,3), (5,6), (6,0), (6,1), (6,4)]      (sink 2)\n"
    "  8 * [(0,4), (0,5), (0,6), (5,0), (5,1), (5,6), (6,2), (6,3), (6,6)]      (sink 2).\n";

GraphSum theorem_listing() { return parse_graph_sum(kTheoremListing, GraphKind::micro, 0, 3); }

namespace {

// Each term: coefficient, factors, direction. A factor is "rho" or "a" followed by
// the slots it is differentiated by; slots i1..i3, j1..j3, k1..k3 are summed
// against eps^i eps^j eps^k.
constexpr std::array<std::string_view, 11> kFormula = {
    "+12 rho rho.k2 rho.i1j1 a.k3 a.i2j2 a.i3j3 d.k1",
    "+48 rho rho.j3 rho.i1j1 a.k3 a.i2j2 a.i3k1 d.k2",
    "+8 rho.j2 rho.i1k1 rho.i2k2 a.i3 a.j3 a.k3 d.j1",
    "-40 rho.i3 rho.j2 rho.i1k1 a.j3 a.k3 a.i2k2 d.j1",
    "+8 rho.i3 rho.j2 rho.k3 a.j3 a.i1k1 a.i2k2 d.j1",
    "+24 rho.j2 rho.k3 rho.i1k1 a.i3 a.j3 a.j1k2 d.i2",
    "-12 rho rho rho.k2 a.i1j1 a.i2j2 a.i3j3k3 d.k1",
    "+24 rho rho.j2 rho.k1 a.k2 a.i1j1 a.i3j3k3 d.i2",
    "-36 rho rho.i2 rho.j2 a.k2 a.i1j1 a.i3j3k3 d.k1",
    "+8 rho.i2 rho.j1 rho.k1 a.j2 a.k2 a.i3j3k3 d.i1",
    "-8 rho.j1 rho.k1 rho.i3j3k3 a.i2 a.j2 a.k2 d.i1",
};

struct Factor {
  bool is_rho = true;
  std::vector<int> slots;  // 0..8
};

struct FormulaTerm {
  int coefficient = 0;
  std::vector<Factor> factors;
  int direction = 0;
};

FormulaTerm parse_formula_term(std::string_view text) {
  std::istringstream in{std::string(text)};
  FormulaTerm t;
  in >> t.coefficient;
  std::string tok;
  while (in >> tok) {
    auto dot = tok.find('.');
    std::string head = tok.substr(0, dot);
    std::vector<int> slots;
    if (dot != std::string::npos) {
      for (std::size_t p = dot + 1; p + 1 < tok.size() + 1; p += 2) {
        const int group = tok[p] == 'i' ? 0 : tok[p] == 'j' ? 1 : 2;
        slots.push_back(3 * group + (tok[p + 1] - '1'));
      }
    }
    if (head == "d") {
      t.direction = slots.at(0);
    } else {
      t.factors.push_back(Factor{head == "rho", std::move(slots)});
    }
  }
  return t;
}

}  // namespace

std::vector<MultiVector> theorem_formula_terms() {
  constexpr int d = 3;
  std::vector<FormulaTerm> terms;
  for (auto text : kFormula) terms.push_back(parse_formula_term(text));
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::vector<std::array<PolyBuilder, d>> components;
  for (std::size_t t = 0; t < terms.size(); ++t) components.push_back({PolyBuilder(d), PolyBuilder(d), PolyBuilder(d)});
  for (const auto& pi : perms) {
    for (const auto& pj : perms) {
      for (const auto& pk : perms) {
        const int sign = levi_civita(pi, d) * levi_civita(pj, d) * levi_civita(pk, d);
        std::array<int, 9> index{};
        for (int s = 0; s < 3; ++s) {
          index[s] = pi[s];
          index[3 + s] = pj[s];
          index[6 + s] = pk[s];
        }
        for (std::size_t t = 0; t < terms.size(); ++t) {
          Monomial m;
          for (const Factor& f : terms[t].factors) {
            JetVar v = f.is_rho ? JetVar::rho() : JetVar::casimir(1);
            for (int slot : f.slots) v = v.derived(index[slot]);
            m.push_back(v);
          }
          std::sort(m.begin(), m.end());
          components[t][index[terms[t].direction]].add(m, Rational(sign));
        }
      }
    }
  }
  std::vector<MultiVector> out;
  for (auto& c : components) {
    MultiVector x(d, 1);
    for (int i = 0; i < d; ++i) x.add(std::uint32_t{1} << i, std::move(c[i]).build());
    out.push_back(std::move(x));
  }
  return out;
}

std::array<int, 11> theorem_formula_coefficients() {
  std::array<int, 11> out{};
  for (std::size_t t = 0; t < kFormula.size(); ++t) out[t] = parse_formula_term(kFormula[t]).coefficient;
  return out;
}

MultiVector theorem_formula_field() {
  const auto terms = theorem_formula_terms();
  const auto coefficients = theorem_formula_coefficients();
  MultiVector x(3, 1);
  for (std::size_t t = 0; t < terms.size(); ++t) x += Rational(coefficients[t]) * terms[t];
  return x;
}

const std::array<std::string_view, 12> kLeibnizGraphs = {
    "(3,4;2,4;0,1,2)", "(1,3;2,4;0,2,3)", "(1,4;2,4;0,2,3)", "(2,4;2,4;0,1,2)",
    "(2,4;2,4;0,1,3)", "(2,3;2,4;0,1,2)", "(2,3;2,4;0,1,3)", "(1,2;2,4;0,2,3)",
    "(1,3;2,3;0,2,3)", "(1,4;2,3;0,2,3)", "(1,3;3,4;0,2,3)", "(1,4;3,4;0,2,3)",
};

Graph leibniz_graph(int number) {
  if (number < 1 || number > 12) throw std::out_of_range("Leibniz graphs are numbered 1..12");
  return parse_graph(kLeibnizGraphs[number - 1], GraphKind::leibniz, 2);
}

const std::string_view kGraphA = "(0,4;1,3;3,5;3,4)";
const std::string_view kGraphB = "(0,3;1,3;3,5;3,4)";
const std::string_view kGraphC = "(2,5;2,4;2,3;0,1)";

const std::string_view kHamiltonianGamma3 = "8*u_y^2*u_xx - 16*u_x*u_y*u_xy + 8*u_x^2*u_yy";

const std::string_view kHamiltonianGamma5 =
    "6*u_y^2*u_xx*u_xy^2 - 12*u_x*u_y*u_xy^3 - 6*u_y^2*u_xx^2*u_yy + 12*u_x*u_y*u_xx*u_xy*u_yy"
    " + 6*u_x^2*u_xy^2*u_yy - 6*u_x^2*u_xx*u_yy^2 - 2*u_y^3*u_xy*u_xxx + 2*u_x*u_y^2*u_yy*u_xxx"
    " + 2*u_y^3*u_xx*u_xxy + 2*u_x*u_y^2*u_xy*u_xxy - 4*u_x^2*u_y*u_yy*u_xxy - 4*u_x*u_y^2*u_xx*u_xyy"
    " + 2*u_x^2*u_y*u_xy*u_xyy + 2*u_x^3*u_yy*u_xyy + 2*u_x^2*u_y*u_xx*u_yyy - 2*u_x^3*u_xy*u_yyy"
    " - 2*u_y^4*u_xxxx + 8*u_x*u_y^3*u_xxxy - 12*u_x^2*u_y^2*u_xxyy + 8*u_x^3*u_y*u_xyyy - 2*u_x^4*u_yyyy";

}  // namespace mgc::reference
