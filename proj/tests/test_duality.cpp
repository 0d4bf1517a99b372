#include <random>

#include "doctest.h"
#include "tcurves/duality.hpp"
#include "tcurves/errors.hpp"
#include "tcurves/io.hpp"
#include "test_support.hpp"

using namespace tcurves;

TEST_CASE("inversion of polynomials") {
  VarList xy{"x", "y"};
  auto P = [&](const char* s) { return parse_polynomial(s, xy); };
  CHECK(invert_poly(P("x")).inverted == P("x"));
  CHECK(invert_poly(P("x + 1")).inverted == P("x + x^2 + y^2"));
  CHECK(invert_poly(P("x*y + y^2")).inverted == P("x*y + y^2"));
  CHECK(invert_poly(P("3")).inverted == P("3"));
  CHECK_THROWS_AS(invert_poly(P("0")), DomainError);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    Polynomial f = testing::random_polynomial(rng, xy, 4, 5);
    if (f.is_zero()) continue;
    auto inv = invert_poly(f);
    Int d = inv.degree;
    CHECK(inv.inverted.degree() == ExtRat(Rat(2 * d)) - f.order_at_origin());
    if (!f.homogeneous_parts().rbegin()->second.is_zero() && f.degree() == ExtRat(Rat(d)))
      CHECK(inv.inverted.order_at_origin() == ExtRat(Rat(d)));
    CHECK(invert_poly(f.scaled(Rat(5, 2))).inverted == inv.inverted.scaled(Rat(5, 2)));
  }
}

TEST_CASE("duality on simple families") {
  auto fam = load_family(testing::fixture("rays_3d_origin.json"));
  VarList v = fam.variables();
  CHECK(rdeg_via_duality(parse_polynomial("x^2 + y*z", v), fam).value == ExtRat(2));
  CHECK(rdeg_via_duality(parse_polynomial("1", v), fam).value == ExtRat(0));
  auto four = load_family(testing::fixture("three_branches.json"));
  CHECK(rdeg_via_duality(parse_polynomial("z^2", four.variables()), four).value == ExtRat(1));
}

TEST_CASE("transfer through inverted arcs") {
  auto fam = load_family(testing::fixture("plane_2d_origin.json"));
  VarList v = fam.variables();
  auto arc = push_arc_to_infinity(fam.branches()[0]);
  CHECK(arc.norm_degree() == 1);
  CHECK(arc.ratio(parse_polynomial("x", v)) == ExtRat(1));
  CHECK(arc.ratio(parse_polynomial("5", v)) == ExtRat(0));
  auto arc2 = push_arc_to_infinity(fam.branches()[1]);
  auto inf = load_family(testing::fixture("plane_2d_inverted_infinity.json"));
  Polynomial f = parse_polynomial("x*y + y^2", v);
  ExtRat best = max(arc.ratio(f), arc2.ratio(f));
  CHECK(best == rel_deg(f, inf).value);
  CHECK(best == ExtRat(0));
  CHECK(rel_deg(f, load_family(testing::fixture("plane_2d_infinity.json"))).value == ExtRat(0));
}

TEST_CASE("duality round trip on matched pairs") {
  std::mt19937_64 rng(31);
  std::pair<const char*, const char*> pairs[] = {{"plane_2d_inverted_infinity.json", "plane_2d_origin.json"},
                                                {"rays_3d_infinity.json", "rays_3d_origin.json"}};
  for (auto [inf_name, org_name] : pairs) {
    auto inf = load_family(testing::fixture(inf_name));
    auto org = load_family(testing::fixture(org_name));
    for (int i = 0; i < 50; ++i) {
      Polynomial f = testing::random_polynomial(rng, inf.variables(), 4, 5);
      if (f.is_zero()) continue;
      auto lhs = rel_deg(f, inf);
      auto rhs = rdeg_via_duality(f, org);
      CHECK(lhs.value == rhs.value);
      for (std::size_t b = 0; b < lhs.per_branch.size(); ++b) CHECK(lhs.per_branch[b].ratio == rhs.per_branch[b].ratio);
    }
  }
}
