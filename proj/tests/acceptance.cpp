// Acceptance runner: one PASS/FAIL line per criterion.
//
// Criteria with a documented, understood deviation are printed as FAIL with the
// reason and do not change the exit status; any other failure does.

#include "property_checks.hpp"

#include <mgc/cases.hpp>

#include <fmt/format.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

namespace {

struct Criterion {
  int number;
  std::string title;
  std::string case_name;  // empty: property suites
  std::string known_deviation;
};

std::string summary(const mgc::CaseReport& r) {
  std::string out;
  for (const auto& m : r.measurements) {
    if (m.provenance == mgc::Provenance::info) continue;
    if (!m.ok) out += fmt::format("{}: got {}, expected {}; ", m.name, m.measured, m.expected);
  }
  return out;
}

std::string info_summary(const mgc::CaseReport& r) {
  std::string out;
  for (const auto& m : r.measurements)
    if (m.provenance == mgc::Provenance::info)
      out += fmt::format("{} = {}{}; ", m.name, m.measured, m.expected.empty() ? "" : " (ref " + m.expected + ")");
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "2D trivialization by the sunflower field", "2d-sunflower", ""},
      {2, "3D trivialization by the eleven listed micro-graphs", "3d-theorem", ""},
      {3, "listing evaluation equals the explicit 11-term formula", "3d-listing-equivalence",
       "the two fields differ by a Hamiltonian field [[P, H]] (terms 1, 2, 9)"},
      {4, "3D ansatz: 366 markers, 244 nonvanishing", "counts-3d", ""},
      {5, "no tadpole-free solution in 3D", "no-tadpole-free", ""},
      {6, "4D enumeration counts", "counts-4d", ""},
      {7, "sunflower micro-expansion 42 = 10 + 32", "sunflower-expansion",
       "39 distinct nonzero micro-graphs (10 + 29); the second graph has 32 raw terms"},
      {8, "dimensional reduction to the sunflower field", "reduce-3d-to-2d", ""},
      {9, "2D Hamiltonian of the sunflower field", "hamiltonian-2d", ""},
      {10, "Leibniz-graph impossibility in 2D", "leibniz-impossibility-2d", ""},
      {11, "Jacobiator vanishing for d = 2, 3, 4", "jacobiator-vanishing", ""},
      {12, "shortcut velocity systems", "shortcut-3d", ""},
      {13, "property suites", "", ""},
  };

  mgc::CaseOptions options;
  options.velocities_path = std::string(MGC_TEST_DATA_DIR) + "/velocities_3d.txt";

  int unexpected = 0;
  for (const Criterion& c : criteria) {
    bool passed = false;
    std::string detail;
    double seconds = 0;
    if (!c.case_name.empty()) {
      try {
        const mgc::CaseReport r = mgc::run_case(c.case_name, options);
        passed = r.passed;
        seconds = r.seconds;
        detail = passed ? info_summary(r) : summary(r);
      } catch (const std::exception& e) {
        detail = std::string("error: ") + e.what();
      }
    } else {
      const auto t0 = std::chrono::steady_clock::now();
      using namespace mgc::testing;
      const CheckResult anti = check_schouten_antisymmetry(200);
      const CheckResult jac = check_schouten_jacobi(200);
      const CheckResult canon = check_canonical_forms(1000);
      const CheckResult gen = check_generation_equivalence();
      const CheckResult zero = check_zero_graphs_evaluate_to_zero();
      seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      passed = anti.ok() && jac.ok() && canon.ok() && gen.ok() && zero.ok();
      auto part = [](const char* name, const CheckResult& r) {
        return fmt::format("{} {}/{}{}; ", name, r.cases - r.failures, r.cases,
                           r.failures ? " first failure: " + r.first_failure : "");
      };
      detail = part("antisymmetry", anti) + part("Jacobi", jac) + part("canonical", canon) +
               part("generation", gen) + part("zero graphs", zero);
    }
    std::string line = fmt::format("criterion {:>2}: {} - {} ({:.1f} s)", c.number, passed ? "PASS" : "FAIL", c.title,
                                   seconds);
    if (!passed && !c.known_deviation.empty()) {
      line += " [known deviation: " + c.known_deviation + "]";
    } else if (!passed) {
      ++unexpected;
    }
    std::cout << line << "\n";
    if (!detail.empty()) std::cout << "    " << detail << "\n";
    std::cout << std::flush;
  }
  std::cout << (unexpected == 0 ? "all criteria pass or carry a documented deviation\n"
                                : fmt::format("{} criteria failed unexpectedly\n", unexpected));
  return unexpected == 0 ? 0 : 1;
}
