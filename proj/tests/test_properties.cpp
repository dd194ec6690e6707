#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/properties.hpp"

namespace {

void expect(const props::Result& r, std::size_t min_cases) {
  INFO(r.first_failure);
  CHECK(r.cases >= min_cases);
  CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("group law axioms") { expect(props::group_law(), 1000); }
TEST_CASE("conic and quartic identities") { expect(props::conic_quartic(), 400); }
TEST_CASE("representation counts are even and match a direct loop") { expect(props::representation_counts(), 50); }
TEST_CASE("F is 1 mod 24 on coprime pairs of opposite parity") { expect(props::f_mod_24(), 200); }
TEST_CASE("Pythagorean progressions have difference divisible by 24") { expect(props::pythagorean_differences(), 100); }
