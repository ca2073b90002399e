#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "twsusp/error.hpp"
#include "twsusp/fgab.hpp"

using namespace twsusp;

TEST_CASE("cyclic orders are normalized to invariant factors") {
  // Z/2 + Z/3 = Z/6, Z/4 + Z/6 = Z/2 + Z/12
  CHECK(FgAbGroup::from_cyclic_orders(0, to_int_vector({2, 3})) == FgAbGroup::cyclic(6));
  FgAbGroup g = FgAbGroup::from_cyclic_orders(1, to_int_vector({4, 6, 1}));
  CHECK(g.rank() == 1);
  CHECK(g.torsion_part() == to_int_vector({2, 12}));
  CHECK(g.to_string() == "Z + Z/2 + Z/12");
  CHECK(FgAbGroup::cyclic(0) == FgAbGroup::free(1));
  CHECK(FgAbGroup::cyclic(1).is_trivial());
}

TEST_CASE("presentation cokernel") {
  // <a, b | 2a + 4b, 6b> has order 12
  FgAbGroup g = FgAbGroup::from_presentation(IntMatrix{{2, 4}, {0, 6}});
  CHECK(g.order() == 12);
  CHECK(g.torsion_part() == to_int_vector({2, 6}));
  CHECK(FgAbGroup::from_presentation(IntMatrix{{1, 1, 0}}).rank() == 2);
}

TEST_CASE("tensor and tor") {
  FgAbGroup z4 = FgAbGroup::cyclic(4), z6 = FgAbGroup::cyclic(6), z = FgAbGroup::free(1);
  CHECK(tensor(z4, z6) == FgAbGroup::cyclic(2));
  CHECK(tor(z4, z6) == FgAbGroup::cyclic(2));
  CHECK(tensor(z, z4) == z4);
  CHECK(tor(z, z4).is_trivial());
  CHECK(tensor(FgAbGroup::free(2), FgAbGroup::free(3)) == FgAbGroup::free(6));
  CHECK(tor(FgAbGroup::cyclic(3), FgAbGroup::cyclic(5)).is_trivial());
}

TEST_CASE("parse round trip") {
  for (const char* s : {"0", "Z", "Z^3", "Z/2", "Z^2 + Z/4 + Z/12"}) CHECK(FgAbGroup::parse(s).to_string() == s);
  CHECK(FgAbGroup::parse("Z/4+Z/12+Z^2") == FgAbGroup::parse("Z^2 + Z/4 + Z/12"));
  CHECK_THROWS_AS(FgAbGroup::parse("Q"), Error);
  CHECK_THROWS_AS(FgAbGroup::parse("Z/x"), Error);
}

TEST_CASE("subgroups") {
  FgAbGroup g = FgAbGroup::parse("Z^2 + Z/3");
  CHECK(g.torsion_subgroup() == FgAbGroup::cyclic(3));
  CHECK(g.free_part() == FgAbGroup::free(2));
  CHECK(g.order() == 0);
  CHECK_FALSE(g.is_finite());
}
