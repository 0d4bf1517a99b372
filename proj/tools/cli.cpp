#include "cli.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tcurves/curves.hpp"
#include "tcurves/duality.hpp"
#include "tcurves/errors.hpp"
#include "tcurves/io.hpp"
#include "tcurves/oracle.hpp"
#include "tcurves/plane_branches.hpp"
#include "tcurves/reduction.hpp"
#include "tcurves/strata.hpp"

namespace tcurves {

namespace {

constexpr const char* kGrammar = R"txt(Polynomial grammar:
  polynomial := ["+"|"-"] term (("+"|"-") term)*
  term       := [rational ["*"]] factor ("*" factor)*  |  rational
  factor     := variable ["^" natural]  |  "(" polynomial ")" ["^" natural]
  rational   := integer ["/" positive-integer]
Variables are the names declared by the input file (or --vars); whitespace is
ignored.  Examples: "x*y + y^2", "3/2*x^2*z - 1", "(x - 1)^3*y".

Exit codes: 0 success, 2 input or parse error, 3 domain error,
4 truncation order insufficient, 5 unsupported algebraic extension.)txt";

struct Options {
  std::string output;
  bool serial = false;
  std::string family, poly, set, curve, param = "c", at = "infinity", mode = "degree", vars, config, points;
  bool integer = false, text = false;
  unsigned degree = 0;
  std::size_t verify = 0, samples = 4000;
  std::uint64_t seed = 42;
  unsigned max_radius = 64;
  std::optional<std::int64_t> truncate;
};

Exec exec_of(const Options& o) { return o.serial ? Exec::Serial : Exec::Parallel; }

Json envelope(const std::string& command, Json config, Json result) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "tcurves";
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  j["result"] = std::move(result);
  return j;
}

Json family_summary(const CurveFamily& fam) {
  Json j;
  j["variables"] = fam.variables().names();
  j["parameters"] = fam.parameters().names();
  j["anchor"] = to_string(fam.anchor());
  j["branches"] = fam.branches().size();
  j["warnings"] = fam.warnings();
  return j;
}

// Names in order of first appearance.
VarList infer_vars(const std::string& text, const std::string& given) {
  std::vector<std::string> names;
  auto add = [&](const std::string& n) {
    if (!n.empty() && std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  };
  if (!given.empty()) {
    std::stringstream ss(given);
    std::string n;
    while (std::getline(ss, n, ',')) add(n);
    return VarList(names);
  }
  for (std::size_t i = 0; i < text.size();) {
    if (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      add(text.substr(i, j - i));
      i = j;
    } else {
      ++i;
    }
  }
  if (names.empty()) names.push_back("x");
  return VarList(names);
}

std::vector<std::vector<Rat>> parse_points(const std::string& text) {
  std::vector<std::vector<Rat>> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::vector<Rat> p;
    std::stringstream is(item);
    std::string v;
    while (std::getline(is, v, ',')) p.push_back(parse_rat(v));
    if (!p.empty()) pts.push_back(std::move(p));
  }
  return pts;
}

Json rows_json(const std::vector<RatRow>& rows, const VarList& vars, unsigned degree) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json coeffs = Json::array();
    for (const auto& v : r) coeffs.push_back(to_string(v));
    out.push_back({{"coefficients", coeffs}, {"polynomial", from_coefficient_vector(vars, degree, r).to_string()}});
  }
  return out;
}

Json cmd_value(const Options& o, const std::string& command) {
  CurveFamily fam = load_family(o.family);
  Polynomial f = parse_polynomial(o.poly, fam.variables());
  Json cfg{{"family", o.family}, {"poly", o.poly}, {"exec", o.serial ? "serial" : "parallel"}};
  Json res;
  if (command == "mult") {
    if (fam.anchor() != Anchor::Origin) throw DomainError("mult needs a family anchored at the origin");
    res = to_json(rel_mult(f, fam, exec_of(o)));
  } else if (command == "rdeg-dual") {
    res = to_json(rdeg_via_duality(f, fam, exec_of(o)));
  } else {
    if (fam.anchor() != Anchor::Infinity) throw DomainError("rdeg needs a family anchored at infinity");
    cfg["integer"] = o.integer;
    res = to_json(rel_deg(f, fam, exec_of(o)));
    if (o.integer) res["integer_degree"] = integer_rel_deg(f, fam).get_str();
  }
  res["family"] = family_summary(fam);
  return envelope(command, cfg, res);
}

Json cmd_reduce(const Options& o) {
  CurveFamily fam = load_family(o.family);
  Json cfg{{"family", o.family}, {"degree", o.degree}, {"max_radius", o.max_radius}, {"verify", o.verify},
           {"seed", o.seed}, {"points", o.points}, {"exec", o.serial ? "serial" : "parallel"}};
  ReducedFamily red = o.points.empty()
                          ? select_parameters(fam, o.degree, SelectionOptions{o.max_radius, exec_of(o)})
                          : reduce_with_points(fam, o.degree, parse_points(o.points), exec_of(o));
  Json res;
  res["degree"] = red.degree;
  Json pts = Json::array();
  for (const auto& p : red.points) {
    Json jp = Json::array();
    for (const auto& v : p) jp.push_back(to_string(v));
    pts.push_back(jp);
  }
  res["points"] = pts;
  res["branch_count"] = red.curves.branches().size();
  res["branch_bound"] = red.branch_bound;
  res["points_examined"] = red.points_examined;
  res["saturated"] = red.saturated();
  Json certs = Json::array();
  for (const auto& c : red.certificates)
    certs.push_back({{"branch", c.branch}, {"exponent", to_string(c.exponent)}, {"target", c.target}, {"achieved", c.achieved}});
  res["certificates"] = certs;
  Json curves = family_to_json(red.curves);
  res["digest"] = fnv1a_hex(curves.dump());
  res["curves"] = std::move(curves);
  if (o.verify > 0) {
    VerificationReport v = verify_reduction(fam, red, o.verify, o.seed, {}, exec_of(o));
    Json ex = Json::array();
    for (const auto& m : v.examples)
      ex.push_back({{"polynomial", m.polynomial}, {"branch", m.branch}, {"expected", m.expected.to_string()}, {"got", m.got.to_string()}});
    res["verification"] = {{"trials", v.trials},
                           {"seed", v.seed},
                           {"family_mismatches", v.family_mismatches},
                           {"branch_mismatches", v.branch_mismatches},
                           {"examples", ex}};
  }
  return envelope("reduce", cfg, res);
}

Json cmd_strata(const Options& o, const std::vector<std::string>& probes) {
  CurveFamily fam = load_family(o.family);
  StrataMode mode;
  if (o.mode == "degree") mode = StrataMode::Degree;
  else if (o.mode == "mult") mode = StrataMode::Multiplicity;
  else throw InputError("mode must be 'degree' or 'mult'");
  Json cfg{{"family", o.family}, {"degree", o.degree}, {"mode", o.mode}, {"probes", probes}, {"exec", o.serial ? "serial" : "parallel"}};
  StrataReport rep = compute_strata(fam, o.degree, mode, exec_of(o));
  Json res;
  Json cols = Json::array();
  for (const auto& e : monomials_up_to(fam.variables().size(), o.degree))
    cols.push_back(Polynomial::monomial(fam.variables(), e, 1).to_string());
  res["columns"] = cols;
  res["w"] = rep.w.get_str();
  Json strata = Json::array();
  for (const auto& s : rep.strata)
    strata.push_back({{"value", to_string(s.value)}, {"dimension", s.basis.size()}, {"basis", rows_json(s.basis, fam.variables(), o.degree)}});
  res["strata"] = strata;
  res["vanishing"] = rows_json(rep.vanishing, fam.variables(), o.degree);
  Json mem = Json::object();
  for (const auto& p : probes) mem[p] = membership(rep, parse_polynomial(p, fam.variables())).to_string();
  res["membership"] = mem;
  return envelope("strata", cfg, res);
}

Json cmd_dualize(const Options& o) {
  VarList vars = infer_vars(o.poly, o.vars);
  auto inv = invert_poly(parse_polynomial(o.poly, vars));
  Json cfg{{"poly", o.poly}, {"variables", vars.names()}};
  return envelope("dualize", cfg,
                  {{"degree", inv.degree}, {"original", inv.original.to_string()}, {"inverted", inv.inverted.to_string()}});
}

Json cmd_branches(const Options& o) {
  Anchor anchor = parse_anchor(o.at);
  Polynomial curve = level_curve(o.curve, o.param);
  BranchExpansion ex = expand_branches(curve, anchor, o.truncate);
  Json cfg{{"curve", o.curve}, {"param", o.param}, {"at", o.at}, {"truncate", ex.truncation}};
  Json fam = family_to_json(ex.family());
  for (std::size_t i = 0; i < ex.branches.size(); ++i) {
    fam["branches"][i]["orientation"] = ex.branches[i].orientation == 1 ? "y(x)" : "x(y)";
    fam["branches"][i]["exact"] = ex.branches[i].exact;
  }
  fam["level_curve"] = curve.to_string();
  fam["truncation"] = ex.truncation;
  Json uns = Json::array();
  for (const auto& u : ex.unsupported)
    uns.push_back({{"orientation", u.orientation == 1 ? "y(x)" : "x(y)"},
                   {"exponent", to_string(u.exponent)},
                   {"edge_polynomial", u.edge_polynomial},
                   {"prefix", u.prefix}});
  fam["unsupported"] = uns;
  return envelope("branches", cfg, fam);
}

OracleConfig oracle_config(const Options& o) {
  OracleConfig c;
  c.anchor = parse_anchor(o.at);
  c.seed = o.seed;
  c.sampler.count = o.samples;
  c.sampler.min_hits = std::max<std::size_t>(1, o.samples / 10);
  c.exec = exec_of(o);
  return c;
}

Json oracle_cfg_json(const OracleConfig& c) {
  return {{"at", to_string(c.anchor)},
          {"seed", c.seed},
          {"radii", c.radii.empty() ? default_radii(c.anchor) : c.radii},
          {"samples_per_radius", c.sampler.count},
          {"retry_factor", c.sampler.retry_factor},
          {"min_hits", c.sampler.min_hits},
          {"guided", c.sampler.guided}};
}

Json cmd_oracle(const Options& o) {
  SemialgebraicSet set = load_set(o.set);
  OracleConfig c = oracle_config(o);
  Json cfg = oracle_cfg_json(c);
  cfg["set"] = o.set;
  cfg["poly"] = o.poly;
  GrowthEstimate e = estimate_exponent(set, parse_polynomial(o.poly, set.variables), c);
  return envelope("oracle", cfg, to_json(e));
}

Json cmd_sweep(const Options& o, bool seed_given) {
  Json input = read_json_file(o.config);
  SweepConfig c = sweep_from_json(input);
  if (seed_given) c.oracle.seed = o.seed;
  c.oracle.sampler.count = o.samples;
  c.oracle.sampler.min_hits = std::max<std::size_t>(1, o.samples / 10);
  c.oracle.exec = exec_of(o);
  Json cfg = oracle_cfg_json(c.oracle);
  cfg["config"] = o.config;
  cfg["tolerance"] = c.tolerance;
  cfg["input"] = input;
  return envelope("sweep", cfg, to_json(stability_sweep(c), c));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relative multiplicity and degree along testing curves", "tcurves"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> probes;
  app.add_option("-o,--output", o.output, "Write the result to a file instead of stdout");
  app.add_flag("--serial", o.serial, "Run the serial reference kernels");

  auto* mult = app.add_subcommand("mult", "Multiplicity at the origin relative to a curve family");
  auto* rdeg = app.add_subcommand("rdeg", "Degree at infinity relative to a curve family");
  auto* rdual = app.add_subcommand("rdeg-dual", "Degree at infinity computed from an origin family by inversion");
  for (auto* sc : {mult, rdeg, rdual}) {
    sc->add_option("--family", o.family, "Curve family JSON")->required();
    sc->add_option("--poly", o.poly, "Polynomial")->required();
  }
  rdeg->add_flag("--integer", o.integer, "Also report max(0, ceil(rdeg))");

  auto* reduce = app.add_subcommand("reduce", "Finite set of concrete curves reproducing values up to a degree");
  reduce->add_option("--family", o.family, "Curve family JSON")->required();
  reduce->add_option("--degree", o.degree, "Polynomial degree bound")->required();
  reduce->add_option("--verify", o.verify, "Random polynomials to cross-check");
  auto* reduce_seed = reduce->add_option("--seed", o.seed, "Seed for --verify");
  reduce->add_option("--max-radius", o.max_radius, "Largest max-norm of enumerated parameter points");
  reduce->add_option("--points", o.points, "Explicit parameter points, e.g. \"1,5;2,6\"");

  auto* strata = app.add_subcommand("strata", "Degree or multiplicity filtration of polynomials up to a degree");
  strata->add_option("--family", o.family, "Curve family JSON")->required();
  strata->add_option("--degree", o.degree, "Polynomial degree bound")->required();
  strata->add_option("--mode", o.mode, "degree | mult");
  strata->add_option("--probe", probes, "Polynomials whose stratum is reported");

  auto* dualize = app.add_subcommand("dualize", "Inversion I(f) = |x|^(2 deg f) f(x/|x|^2)");
  dualize->add_option("--poly", o.poly, "Polynomial")->required();
  dualize->add_option("--vars", o.vars, "Comma-separated variable order (default: order of appearance)");
  dualize->add_flag("--text", o.text, "Print I(f) as plain text");

  auto* branches = app.add_subcommand("branches", "Puiseux branches of the level curves g = c of a plane polynomial");
  branches->add_option("--curve", o.curve, "Polynomial g in x, y (or G in x, y, c)")->required();
  branches->add_option("--param", o.param, "Parameter name");
  branches->add_option("--at", o.at, "infinity | origin");
  branches->add_option("--truncate", o.truncate, "Truncation order T (default 4(deg g + 1))");

  auto* oracle = app.add_subcommand("oracle", "Numeric growth exponent of a polynomial on a semialgebraic set");
  oracle->add_option("--set", o.set, "Set JSON")->required();
  oracle->add_option("--poly", o.poly, "Polynomial")->required();
  oracle->add_option("--at", o.at, "infinity | origin");
  oracle->add_option("--seed", o.seed, "Sampler seed");
  oracle->add_option("--samples", o.samples, "Points per shell");

  auto* sweep = app.add_subcommand("sweep", "Growth exponents of probes across a parameter grid of sets");
  sweep->add_option("--config", o.config, "Sweep JSON")->required();
  auto* sweep_seed = sweep->add_option("--seed", o.seed, "Sampler seed (overrides the file)");
  sweep->add_option("--samples", o.samples, "Points per shell");

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  (void)reduce_seed;

  try {
    Json result;
    std::string text;
    if (mult->parsed()) result = cmd_value(o, "mult");
    else if (rdeg->parsed()) result = cmd_value(o, "rdeg");
    else if (rdual->parsed()) result = cmd_value(o, "rdeg-dual");
    else if (reduce->parsed()) result = cmd_reduce(o);
    else if (strata->parsed()) result = cmd_strata(o, probes);
    else if (dualize->parsed()) {
      result = cmd_dualize(o);
      if (o.text) text = result["result"]["inverted"].get<std::string>() + "\n";
    } else if (branches->parsed()) result = cmd_branches(o);
    else if (oracle->parsed()) result = cmd_oracle(o);
    else result = cmd_sweep(o, sweep_seed->count() > 0);
    if (text.empty()) text = result.dump(2) + "\n";
    if (o.output.empty()) {
      out << text;
    } else {
      std::ofstream f(o.output, std::ios::binary);
      if (!f) throw InputError("cannot write '" + o.output + "'");
      f << text;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace tcurves
