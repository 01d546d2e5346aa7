#include "property_checks.hpp"

#include <doctest.h>

using namespace mgc::testing;

TEST_SUITE("properties") {
  TEST_CASE("Schouten graded antisymmetry") {
    const CheckResult r = check_schouten_antisymmetry(400, 101);
    INFO(r.first_failure);
    CHECK(r.ok());
  }

  TEST_CASE("Schouten graded Jacobi identity") {
    const CheckResult r = check_schouten_jacobi(300, 103);
    INFO(r.first_failure);
    CHECK(r.ok());
  }

  TEST_CASE("canonical forms: idempotence, relabelling and edge transpositions") {
    const CheckResult r = check_canonical_forms(2000, 107);
    INFO(r.first_failure);
    CHECK(r.ok());
    CHECK(r.cases == 6000);
  }

  TEST_CASE("structural generation equals brute force") {
    const CheckResult r = check_generation_equivalence();
    INFO(r.first_failure);
    CHECK(r.ok());
  }

  TEST_CASE("zero micro-graphs evaluate to zero") {
    const CheckResult r = check_zero_graphs_evaluate_to_zero();
    INFO(r.first_failure);
    CHECK(r.ok());
    CHECK(r.cases >= 300);
  }
}
