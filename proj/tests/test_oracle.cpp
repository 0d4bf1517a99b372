#include <cmath>

#include "doctest.h"
#include "tcurves/errors.hpp"
#include "tcurves/oracle.hpp"
#include "test_support.hpp"

using namespace tcurves;

namespace {

SemialgebraicSet set_of(std::vector<std::string> vars, std::vector<std::pair<std::string, std::string>> cs) {
  Json j;
  j["variables"] = vars;
  j["constraints"] = Json::array();
  for (auto& [p, r] : cs) j["constraints"].push_back({{"poly", p}, {"rel", r}});
  return set_from_json(j);
}

OracleConfig config(Anchor a, Exec exec = Exec::Serial) {
  OracleConfig c;
  c.anchor = a;
  c.exec = exec;
  return c;
}

}  // namespace

TEST_CASE("set descriptions") {
  auto s = load_set(testing::fixture("sets/three_branches.json"));
  CHECK(s.variables.size() == 3);
  CHECK(!s.has_strict());
  CHECK(set_from_json(to_json(s)).constraints.size() == s.constraints.size());
  CHECK_THROWS_AS(set_of({"x"}, {}), InputError);
  CHECK_THROWS_AS(set_of({"x"}, {{"x", "=>"}}), InputError);
  CHECK(set_of({"x"}, {{"x", ">"}}).has_strict());
}

TEST_CASE("numeric polynomials") {
  VarList xy{"x", "y"};
  NumPoly p(parse_polynomial("x^2*y - 3*y + 1/2", xy));
  std::vector<double> g;
  double scale = 0;
  CHECK(p.eval_grad({2.0, 1.0}, g, &scale) == doctest::Approx(1.5));
  CHECK(g[0] == doctest::Approx(4.0));
  CHECK(g[1] == doctest::Approx(1.0));
  CHECK(scale == doctest::Approx(7.5));
  NumPoly q = NumPoly::combine(parse_polynomial("x", xy), parse_polynomial("1", xy), -2.0);
  CHECK(q.eval({5.0, 0.0}) == doctest::Approx(3.0));
}

TEST_CASE("sampler") {
  SamplerConfig sc;
  sc.count = 100;
  auto full = sample(set_of({"x", "y"}, {{"1", ">="}}), 1.0, 7, sc);
  CHECK(full.points.size() == 100);
  CHECK(!full.guided);
  for (const auto& p : full.points) CHECK(std::hypot(p[0], p[1]) == doctest::Approx(1.0));

  auto empty = sample(set_of({"x", "y"}, {{"x", ">="}, {"-x - 1", ">="}}), 1.0, 7, sc);
  CHECK(empty.points.empty());
  CHECK(empty.diagnostic == "empty shell");

  auto fat = sample(load_set(testing::fixture("sets/three_branches.json")), 0.01, 7, sc);
  CHECK(fat.rejection_hits > 0);

  // A thin set is filled by the guided fallback.
  auto thin = sample(load_set(testing::fixture("sets/power_strip_u2_w3.json")), 1e4, 7, sc);
  CHECK(thin.guided);
  CHECK(thin.points.size() == 100);
  for (const auto& p : thin.points) CHECK(std::abs(p[0] * p[0] * std::pow(p[1], 3)) <= 1.0 + 1e-6);

  auto again = sample(load_set(testing::fixture("sets/power_strip_u2_w3.json")), 1e4, 7, sc);
  CHECK(again.points == thin.points);
  CHECK_THROWS_AS(sample(set_of({"x"}, {{"1", ">="}}), 0.0, 1, sc), InputError);
}

TEST_CASE("growth exponents") {
  auto s44 = load_set(testing::fixture("sets/three_branches.json"));
  CHECK(*estimate_exponent(s44, parse_polynomial("z^2", s44.variables), config(Anchor::Origin)).slope ==
        doctest::Approx(3).epsilon(0.2 / 3));
  auto plane = load_set(testing::fixture("sets/plane_2d.json"));
  CHECK(std::abs(*estimate_exponent(plane, parse_polynomial("x*y + y^2", plane.variables), config(Anchor::Infinity)).slope) <= 0.15);
  auto s62 = load_set(testing::fixture("sets/power_strip_u1_w1.json"));
  auto e = estimate_exponent(s62, parse_polynomial("x^2", s62.variables), config(Anchor::Infinity));
  CHECK(std::abs(*e.slope + 2) <= 0.2);
  CHECK(e.reliable);
  CHECK(e.shells.size() == 9);

  auto zero = estimate_exponent(s62, parse_polynomial("0", s62.variables), config(Anchor::Infinity));
  CHECK(!zero.slope);
  CHECK(zero.vanishes);
  auto none = estimate_exponent(set_of({"x", "y"}, {{"x", ">="}, {"-x - 1", ">="}}),
                                parse_polynomial("x", VarList{"x", "y"}), config(Anchor::Infinity));
  CHECK(none.empty);
  CHECK(!none.reliable);
  auto strict = estimate_exponent(set_of({"x", "y"}, {{"x", ">"}}), parse_polynomial("x", VarList{"x", "y"}),
                                  config(Anchor::Infinity));
  CHECK(strict.diagnostics.front() == "strict inequalities sampled as their closures");
}

TEST_CASE("parallel shells reproduce the serial estimate") {
  auto s = load_set(testing::fixture("sets/level_xy_minus_y.json"));
  std::vector<Polynomial> fs{parse_polynomial("x*y", s.variables), parse_polynomial("x*y - y", s.variables)};
  auto a = estimate_exponents(s, fs, config(Anchor::Infinity, Exec::Serial));
  auto b = estimate_exponents(s, fs, config(Anchor::Infinity, Exec::Parallel));
  for (std::size_t k = 0; k < fs.size(); ++k) CHECK(to_json(a[k]).dump() == to_json(b[k]).dump());
}

TEST_CASE("probing single branches") {
  auto fam = load_family(testing::fixture("three_branches.json"));
  std::vector<Rat> c{Rat(1), Rat(1)};
  auto concrete = fam.specialize(c);
  const VarList& v = concrete.variables();
  auto ts = default_probe_schedule(Anchor::Origin);
  const Branch& g2 = concrete.branches()[0];
  const Branch& g3 = concrete.branches()[1];
  CHECK(*probe_curve(g3, parse_polynomial("z", v), ts).slope == doctest::Approx(2).epsilon(0.02));
  CHECK(*probe_curve(g3, parse_polynomial("1", v), ts).slope == doctest::Approx(0).epsilon(0.01));
  CHECK(*probe_curve(g2, parse_polynomial("z^2", v), ts).slope == doctest::Approx(4).epsilon(0.02));
  CHECK(probe_curve(g2, parse_polynomial("0", v), ts).vanishes);
  CHECK_THROWS_AS(probe_curve(fam.branches()[0], parse_polynomial("z", v), ts), InputError);

  // Extending the schedule toward the anchor shrinks the error.
  Polynomial f = parse_polynomial("z + x", v);
  double exact = rel_mult(f, CurveFamily(v, VarList{}, Anchor::Origin, {g2})).value.value().get_d();
  double prev = 1e9;
  for (std::size_t n : {4, 8, 16}) {
    double err = std::abs(*probe_curve(g2, f, default_probe_schedule(Anchor::Origin, n)).slope - exact);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("stability sweeps") {
  VarList xy{"x", "y"};
  SweepConfig half;
  half.variables = xy;
  half.f = {parse_polynomial("x", xy)};
  half.g = {parse_polynomial("-1", xy)};
  half.grid = {{-1.0}, {0.0}, {1.0}};
  half.probes = {parse_polynomial("x", xy)};
  half.oracle.exec = Exec::Serial;
  auto r = stability_sweep(half);
  CHECK(r.jumps.empty());
  for (const auto& cell : r.cells) CHECK(*cell.estimates[0].slope == doctest::Approx(1).epsilon(0.05));

  SweepConfig constant = half;
  constant.f = {parse_polynomial("1", xy)};
  constant.g = {parse_polynomial("0", xy)};
  constant.probes = {parse_polynomial("x*y", xy)};
  CHECK(stability_sweep(constant).jumps.empty());

  auto broughton = sweep_from_json(read_json_file(testing::fixture("sweep_broughton.json")));
  broughton.oracle.exec = Exec::Serial;
  auto rb = stability_sweep(broughton);
  bool near_zero = false, near_one = false;
  for (const auto& j : rb.jumps) {
    double a = rb.cells[j.from].t[0], b = rb.cells[j.from + 1].t[0];
    if (a < 0 && b > 0) near_zero = true;
    if (a < 1 && b > 1) near_one = true;
  }
  CHECK(near_zero);
  CHECK(!near_one);
}
