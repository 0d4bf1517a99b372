// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--only N] [--expect-red N,...]
//
// Exit status is 0 when the failing criteria are exactly the expected-red
// set (empty by default).

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "tcurves/duality.hpp"
#include "tcurves/errors.hpp"
#include "tcurves/io.hpp"
#include "tcurves/linalg.hpp"
#include "tcurves/oracle.hpp"
#include "tcurves/plane_branches.hpp"
#include "tcurves/reduction.hpp"
#include "tcurves/strata.hpp"
#include "test_support.hpp"

using namespace tcurves;
using testing::fixture;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Json run(const std::vector<std::string>& args) {
  std::vector<std::string> full{"tcurves"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, err;
  int code = run_cli(full, out, err);
  if (code != 0) throw std::runtime_error("tcurves exited with " + std::to_string(code) + ": " + err.str());
  return Json::parse(out.str());
}

std::string str(double v, int prec = 3) {
  std::ostringstream s;
  s.precision(prec);
  s << std::fixed << v;
  return s.str();
}

Outcome criterion1() {
  std::string fam = fixture("three_branches.json");
  auto z = run({"mult", "--family", fam, "--poly", "z"})["result"]["value"].get<std::string>();
  auto z2 = run({"mult", "--family", fam, "--poly", "z^2"})["result"]["value"].get<std::string>();
  return {z == "3/2" && z2 == "3", "mult z = " + z + ", mult z^2 = " + z2};
}

Outcome criterion2() {
  Json fam = run({"branches", "--curve", "x*y - y", "--param", "c", "--at", "infinity", "--truncate", "8"})["result"];
  CurveFamily family = family_from_json(fam);
  StrataReport rep = compute_strata(family, 2, StrataMode::Degree, Exec::Parallel);
  VarList v = family.variables();
  auto rows = [&](std::vector<const char*> polys) {
    std::vector<RatRow> r;
    for (auto p : polys) r.push_back(coefficient_vector(parse_polynomial(p, v), 2));
    return r;
  };
  // Coefficient order: 1, x, y, x^2, x*y, y^2.
  auto d1 = rows({"1", "x", "y", "x*y"});                // a20 = a02 = 0
  auto d0 = rows({"1", "x*y - y"});                      // and a10 = 0, a01 + a11 = 0
  auto stratum = [&](long q) -> std::vector<RatRow> {
    std::vector<RatRow> out = rep.vanishing;
    for (const auto& s : rep.strata)
      if (s.value <= q) out = s.basis;
    return out;
  };
  bool ok = same_row_space(stratum(1), d1, 6) && same_row_space(stratum(0), d0, 6) && stratum(-1).empty();
  return {ok, "values " + std::to_string(rep.strata.size()) + " strata, dim D(1)=" + std::to_string(stratum(1).size()) +
                  " dim D(0)=" + std::to_string(stratum(0).size()) + " dim D(-1)=" + std::to_string(stratum(-1).size())};
}

Outcome criterion3() {
  int bad = 0, total = 0;
  for (auto [u, w] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}}) {
    auto fam = load_family(fixture("power_strip_u" + std::to_string(u) + "_w" + std::to_string(w) + ".json"));
    for (unsigned k = 1; k <= 4; ++k) {
      Exponent e{k, 0};
      for (Rat scale : {Rat(1), Rat(-3, 2)}) {
        ExtRat got = rel_deg(Polynomial::monomial(fam.variables(), e, scale), fam).value;
        Rat want(-w * static_cast<long>(k), u);
        want.canonicalize();
        ++total;
        if (!(got == ExtRat(want))) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " exact"};
}

Outcome criterion4() {
  std::mt19937_64 rng(4);
  std::pair<const char*, const char*> pairs[] = {{"plane_2d_inverted_infinity.json", "plane_2d_origin.json"},
                                                {"rays_3d_infinity.json", "rays_3d_origin.json"}};
  int failures = 0, trials = 0;
  for (int i = 0; trials < 100; ++i) {
    auto [inf_name, org_name] = pairs[i % 2];
    auto inf = load_family(fixture(inf_name));
    auto org = load_family(fixture(org_name));
    Polynomial f = testing::random_polynomial(rng, inf.variables(), 4, 6);
    if (f.is_zero()) continue;
    ++trials;
    if (!(rel_deg(f, inf).value == rdeg_via_duality(f, org).value)) ++failures;
  }
  return {failures == 0, std::to_string(trials) + " polynomials, " + std::to_string(failures) + " failures"};
}

Outcome criterion5() {
  std::string path = fixture("three_branches.json");
  Json r = run({"reduce", "--family", path, "--degree", "2", "--verify", "200", "--seed", "1"})["result"];
  std::size_t fm = r["verification"]["family_mismatches"], bm = r["verification"]["branch_mismatches"];
  std::size_t count = r["branch_count"], bound = r["branch_bound"];
  Json p = run({"reduce", "--family", path, "--degree", "2", "--points", "1,5;2,6;3,7;4,8", "--verify", "200", "--seed", "1"})["result"];
  std::size_t pm = p["verification"]["family_mismatches"];
  std::string shortfall;
  for (const auto& c : p["certificates"])
    if (c["achieved"] < c["target"])
      shortfall += " " + c["branch"].get<std::string>() + "@t^" + c["exponent"].get<std::string>() + " rank " +
                   std::to_string(c["achieved"].get<int>()) + "/" + std::to_string(c["target"].get<int>());
  bool ok = fm == 0 && bm == 0 && pm == 0 && count <= bound && r["saturated"].get<bool>();
  return {ok, "greedy: " + std::to_string(count) + " curves (bound " + std::to_string(bound) + "), " +
                  std::to_string(fm) + "+" + std::to_string(bm) + " mismatches; points (j,j+4): " + std::to_string(pm) +
                  " family mismatches, rank shortfall" + (shortfall.empty() ? " none" : shortfall)};
}

// Random parameter-free family at the given anchor.
CurveFamily random_family(std::mt19937_64& rng, Anchor anchor) {
  std::uniform_int_distribution<int> nv(2, 3), nb(1, 3), nt(1, 3), key(1, 6), ikey(-4, 4), coin(0, 1);
  std::size_t n = static_cast<std::size_t>(nv(rng));
  VarList params;
  std::vector<Branch> branches;
  int count = nb(rng);
  for (int b = 0; b < count; ++b) {
    unsigned q = coin(rng) ? 1 : 2;
    Branch br;
    br.name = "b" + std::to_string(b);
    for (std::size_t i = 0; i < n; ++i) {
      ParamPuiseux s(params, q, anchor);
      int terms = nt(rng);
      for (int k = 0; k < terms; ++k) {
        Rat c = testing::random_rat(rng, -4, 4);
        if (sgn(c) == 0) c = 1;
        s.add_term(anchor == Anchor::Origin ? key(rng) : ikey(rng), ParamCoeff::constant(params, c));
      }
      br.coordinates.push_back(s);
    }
    if (anchor == Anchor::Infinity && !(br.coordinates[0].max_exponent() > ExtRat(0)))
      br.coordinates[0].add_term(static_cast<std::int64_t>(q) * 2, ParamCoeff::constant(params, 1));
    branches.push_back(std::move(br));
  }
  return CurveFamily(testing::vars_named(n), params, anchor, std::move(branches));
}

Outcome criterion6() {
  std::mt19937_64 rng(6);
  int mult_fail = 0, rdeg_fail = 0;
  std::string mult_example, rdeg_example;
  auto f44 = load_family(fixture("three_branches.json"));
  auto f610 = load_family(fixture("level_xy_minus_y.json"));
  for (int i = 0; i < 100; ++i) {
    Polynomial f = testing::random_polynomial(rng, f44.variables(), 3, 4);
    Polynomial g = testing::random_polynomial(rng, f44.variables(), 3, 4);
    if (!(rel_mult(f * g, f44).value == rel_mult(f, f44).value + rel_mult(g, f44).value)) {
      if (mult_fail++ == 0) mult_example = "(" + f.to_string() + ")*(" + g.to_string() + ")";
    }
    Polynomial a = testing::random_polynomial(rng, f610.variables(), 3, 4);
    Polynomial b = testing::random_polynomial(rng, f610.variables(), 3, 4);
    ExtRat ra = rel_deg(a, f610).value, rb = rel_deg(b, f610).value;
    if (!(rel_deg(a * b, f610).value == ra + rb)) {
      if (rdeg_fail++ == 0) rdeg_example = "(" + a.to_string() + ")*(" + b.to_string() + ")";
    }
  }
  // Superadditivity of sums on arbitrary families.
  int sum_fail = 0;
  for (int i = 0; i < 200; ++i) {
    Anchor anchor = i % 2 ? Anchor::Infinity : Anchor::Origin;
    CurveFamily fam = random_family(rng, anchor);
    Polynomial f = testing::random_polynomial(rng, fam.variables(), 3, 4);
    Polynomial g = testing::random_polynomial(rng, fam.variables(), 3, 4);
    ExtRat vf = rel_value(f, fam).value, vg = rel_value(g, fam).value, vs = rel_value(f + g, fam).value;
    bool ok = anchor == Anchor::Origin ? vs >= std::min(vf, vg) : vs <= std::max(vf, vg);
    if (!ok) ++sum_fail;
  }
  // The classical witness on the level-set family: x, y and x*y all have degree 1.
  VarList v = f610.variables();
  std::string witness = "rdeg x=" + rel_deg(parse_polynomial("x", v), f610).value.to_string() +
                        ", rdeg y=" + rel_deg(parse_polynomial("y", v), f610).value.to_string() +
                        ", rdeg xy=" + rel_deg(parse_polynomial("x*y", v), f610).value.to_string();
  std::string detail = "mult(fg) additive failures " + std::to_string(mult_fail) + "/100, rdeg(fg) additive failures " +
                       std::to_string(rdeg_fail) + "/100 (" + witness + "), sum superadditivity failures " +
                       std::to_string(sum_fail) + "/200";
  if (!mult_example.empty()) detail += "; first mult counterexample " + mult_example;
  if (!rdeg_example.empty()) detail += "; first rdeg counterexample " + rdeg_example;
  return {mult_fail == 0 && rdeg_fail == 0 && sum_fail == 0, detail};
}

Outcome criterion7() {
  int branches = 0, failures = 0;
  for (const char* g : {"x*y + y^2", "x*y - y", "x^2*y - x", "x^2*y"}) {
    Polynomial curve = level_curve(g, "c");
    for (Anchor a : {Anchor::Infinity, Anchor::Origin}) {
      auto ex = expand_branches(curve, a);
      for (const auto& b : ex.branches) {
        ++branches;
        try {
          residual_check(b, curve);
        } catch (const Error&) {
          ++failures;
        }
      }
    }
  }
  return {failures == 0 && branches > 0, std::to_string(branches) + " branches checked, " + std::to_string(failures) + " failures"};
}

Outcome criterion8() {
  struct Case {
    std::string set, family, poly;
    Anchor anchor;
  };
  std::vector<Case> cases{{"sets/three_branches.json", "three_branches.json", "z", Anchor::Origin},
                          {"sets/three_branches.json", "three_branches.json", "z^2", Anchor::Origin}};
  for (const char* p : {"x*y - y", "x", "y", "x*y", "x^2", "y^2"})
    cases.push_back({"sets/level_xy_minus_y.json", "level_xy_minus_y.json", p, Anchor::Infinity});
  for (const char* uw : {"u1_w1", "u1_w2", "u2_w3"})
    for (const char* p : {"x", "x^2", "x^3", "x^4"})
      cases.push_back({std::string("sets/power_strip_") + uw + ".json", std::string("power_strip_") + uw + ".json", p,
                       Anchor::Infinity});
  double worst = 0;
  std::string worst_case;
  int bad = 0;
  for (const auto& c : cases) {
    auto set = load_set(fixture(c.set));
    auto fam = load_family(fixture(c.family));
    Polynomial f = parse_polynomial(c.poly, set.variables);
    double exact = rel_value(parse_polynomial(c.poly, fam.variables()), fam).value.value().get_d();
    OracleConfig cfg;
    cfg.anchor = c.anchor;
    cfg.seed = 42;
    auto est = estimate_exponent(set, f, cfg);
    double err = est.slope ? std::abs(*est.slope - exact) : INFINITY;
    if (err > 0.2 || !est.reliable) ++bad;
    if (err >= worst) {
      worst = err;
      worst_case = c.poly + " on " + c.set;
    }
  }
  auto sweep = sweep_from_json(read_json_file(fixture("sweep_broughton.json")));
  auto rep = stability_sweep(sweep);
  bool near_zero = false, near_one = false;
  for (const auto& j : rep.jumps) {
    double a = rep.cells[j.from].t[0], b = rep.cells[j.from + 1].t[0];
    if (a < 0 && b > 0) near_zero = true;
    if (a < 1 && b > 1) near_one = true;
  }
  return {bad == 0 && near_zero && !near_one,
          std::to_string(cases.size() - bad) + "/" + std::to_string(cases.size()) + " within 0.2 (worst " + str(worst) +
              " for " + worst_case + "); sweep jump near 0: " + (near_zero ? "yes" : "no") +
              ", near 1: " + (near_one ? "yes" : "no")};
}

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds, 0 = none
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_red, only;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if ((a == "--expect-red" || a == "--only") && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string item;
      while (std::getline(ss, item, ',')) (a == "--only" ? only : expect_red).insert(std::stoi(item));
    }
  }
  std::vector<Criterion> criteria{
      {1, "three-branch multiplicities", 1, criterion1},
      {2, "level-set strata", 5, criterion2},
      {3, "negative degrees on thin sets", 0, criterion3},
      {4, "duality round trip", 30, criterion4},
      {5, "reduction soundness", 0, criterion5},
      {6, "valuation suite", 0, criterion6},
      {7, "Newton-Puiseux residuals", 0, criterion7},
      {8, "oracle cross-check", 60, criterion8},
  };
  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && dt > c.time_limit) {
      o.pass = false;
      o.detail += "; over the " + str(c.time_limit, 0) + " s limit";
    }
    if (!o.pass) failed.insert(c.id);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << ", " << str(dt, 2)
              << " s): " << o.detail << std::endl;
  }
  std::set<int> expected;
  for (int id : expect_red)
    if (only.empty() || only.count(id)) expected.insert(id);
  if (failed != expected) {
    std::cout << "acceptance: failing criteria differ from the expected set" << std::endl;
    return 1;
  }
  if (!failed.empty()) std::cout << "acceptance: only the documented red criteria failed" << std::endl;
  return 0;
}
