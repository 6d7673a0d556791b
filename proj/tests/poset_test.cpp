#include "doctest.h"

#include "forma/poset.hpp"

using namespace forma;

namespace {

FinPoset powerset_poset(int k) {
  const int n = 1 << k;
  FinPoset p(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) p.set(a, b, (a & b) == a);
  }
  return p;
}

FinPoset antichain(int n) {
  FinPoset p(n);
  for (int a = 0; a < n; ++a) p.set(a, a, true);
  return p;
}

}  // namespace

TEST_CASE("one-element poset is a bounded lattice with top == bottom") {
  FinPoset p(1);
  p.set(0, 0, true);
  LatticeCheck lc = check_bounded_lattice(p);
  REQUIRE(lc.data.has_value());
  CHECK(lc.data->top == 0);
  CHECK(lc.data->bot == 0);
}

TEST_CASE("two-element antichain fails: no top") {
  LatticeCheck lc = check_bounded_lattice(antichain(2));
  CHECK_FALSE(lc.report.pass);
  CHECK_FALSE(lc.data.has_value());
  CHECK_FALSE(lc.report.item_passed("lattice"));
  CHECK(lc.report.item_passed("poset"));
}

TEST_CASE("poset law violations are reported separately") {
  FinPoset p(2);
  p.set(0, 0, true);  // 1 <= 1 missing: reflexivity broken
  p.set(0, 1, true);
  CheckReport rep = validate_poset(p);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("powerset of a 2-set: meet/join are intersection/union") {
  FinPoset p = powerset_poset(2);
  LatticeCheck lc = check_bounded_lattice(p);
  REQUIRE(lc.data.has_value());
  CHECK(lc.data->top == 3);
  CHECK(lc.data->bot == 0);
  // oracle: brute-force least upper bounds equal bitwise or / and on masks
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      CHECK(lc.data->join(a, b) == (a | b));
      CHECK(lc.data->meet(a, b) == (a & b));
    }
  }
}

TEST_CASE("lattice laws hold on the produced tables") {
  FinPoset p = powerset_poset(3);
  LatticeCheck lc = check_bounded_lattice(p);
  REQUIRE(lc.data.has_value());
  const LatticeData& d = *lc.data;
  for (int a = 0; a < p.n; ++a) {
    for (int b = 0; b < p.n; ++b) {
      CHECK(d.join(a, b) == d.join(b, a));
      CHECK(d.meet(a, b) == d.meet(b, a));
      CHECK(d.join(a, d.meet(a, b)) == a);  // absorption
      CHECK(d.meet(a, d.join(a, b)) == a);
      for (int c = 0; c < p.n; ++c) {
        CHECK(d.join(a, d.join(b, c)) == d.join(d.join(a, b), c));
        CHECK(d.meet(a, d.meet(b, c)) == d.meet(d.meet(a, b), c));
      }
    }
  }
}

TEST_CASE("least_of distinguishes minimum from minimal") {
  FinPoset p = powerset_poset(2);
  // chain {0} <= {0,1}: minimum exists
  CHECK(least_of(p, {1, 3}) == 1);
  // incomparable pair {0}, {1}: minimal elements but no minimum
  CHECK_FALSE(least_of(p, {1, 2}).has_value());
  CHECK(greatest_of(p, {0, 1, 2, 3}) == 3);
  // least_of on the full carrier is the bottom
  CHECK(least_of(p, {0, 1, 2, 3}) == 0);
  // membership property: the result is in the subset and below all of it
  auto m = least_of(p, {1, 3});
  REQUIRE(m.has_value());
  for (int b : {1, 3}) CHECK(p.leq(*m, b));
}
