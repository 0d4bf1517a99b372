#include "tcurves/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tcurves/errors.hpp"

namespace tcurves {

namespace {

VarList names_from_json(const Json& j, const char* field) {
  if (!j.contains(field)) return VarList();
  if (!j.at(field).is_array()) throw InputError(std::string("'") + field + "' must be an array of names");
  std::vector<std::string> names;
  for (const auto& n : j.at(field)) names.push_back(n.get<std::string>());
  return VarList(names);
}

std::string poly_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError("expected a polynomial string, got " + j.dump());
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("invalid JSON in '" + path + "': " + e.what());
  }
}

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return rat_from_int(j.get<std::int64_t>());
  throw InputError("expected a rational (string or integer), got " + j.dump());
}

Json to_json(const Rat& v) { return to_string(v); }
Json to_json(const ExtRat& v) { return v.to_string(); }

CurveFamily family_from_json(const Json& j) {
  try {
    VarList vars = names_from_json(j, "variables");
    VarList params = names_from_json(j, "parameters");
    Anchor anchor = parse_anchor(j.at("anchor").get<std::string>());
    unsigned q = j.value("ramification", 1u);
    std::vector<Branch> branches;
    for (const auto& jb : j.at("branches")) {
      Branch b;
      b.name = jb.value("name", "branch" + std::to_string(branches.size() + 1));
      for (const auto& jc : jb.at("coordinates")) {
        ParamPuiseux s(params, q, anchor);
        for (const auto& term : jc) {
          Polynomial num = parse_polynomial(poly_text(term.at("num")), params);
          Polynomial den = term.contains("den") ? parse_polynomial(poly_text(term.at("den")), params)
                                                : Polynomial::constant(params, 1);
          s.add_term(term.at("exp").get<std::int64_t>(), ParamCoeff(num, den));
        }
        b.coordinates.push_back(std::move(s));
      }
      if (jb.contains("domain_excludes"))
        for (const auto& p : jb.at("domain_excludes")) b.domain_excludes.push_back(parse_polynomial(poly_text(p), params));
      if (jb.contains("error_exponent")) b.error_exponent = rat_from_json(jb.at("error_exponent"));
      if (jb.contains("truncation")) b.truncation = jb.at("truncation").get<std::int64_t>();
      if (jb.contains("residual_order")) b.residual_order = ExtRat::parse(jb.at("residual_order").get<std::string>());
      branches.push_back(std::move(b));
    }
    return CurveFamily(vars, params, anchor, std::move(branches));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed curve family: ") + e.what());
  }
}

Json family_to_json(const CurveFamily& fam) {
  unsigned q = fam.ramification();
  Json j;
  j["variables"] = fam.variables().names();
  j["parameters"] = fam.parameters().names();
  j["anchor"] = to_string(fam.anchor());
  j["ramification"] = q;
  Json branches = Json::array();
  for (const auto& b : fam.branches()) {
    Json jb;
    jb["name"] = b.name;
    Json coords = Json::array();
    for (const auto& c : b.coordinates) {
      Json terms = Json::array();
      ParamPuiseux l = c.lifted(q);
      auto emit = [&](std::int64_t k, const ParamCoeff& v) {
        Json t;
        t["exp"] = k;
        t["num"] = v.num().to_string();
        t["den"] = v.den().to_string();
        terms.push_back(std::move(t));
      };
      if (fam.anchor() == Anchor::Infinity)
        for (auto it = l.terms().rbegin(); it != l.terms().rend(); ++it) emit(it->first, it->second);
      else
        for (const auto& [k, v] : l.terms()) emit(k, v);
      coords.push_back(std::move(terms));
    }
    jb["coordinates"] = std::move(coords);
    Json ex = Json::array();
    for (const auto& p : b.domain_excludes) ex.push_back(p.to_string());
    jb["domain_excludes"] = std::move(ex);
    if (b.truncation) jb["truncation"] = *b.truncation;
    if (b.error_exponent) jb["error_exponent"] = to_string(*b.error_exponent);
    if (b.residual_order) jb["residual_order"] = b.residual_order->to_string();
    branches.push_back(std::move(jb));
  }
  j["branches"] = std::move(branches);
  return j;
}

CurveFamily load_family(const std::string& path) { return family_from_json(read_json_file(path)); }

Json to_json(const RelValue& r) {
  Json j;
  j["value"] = r.value.to_string();
  Json per = Json::array();
  for (const auto& b : r.per_branch) {
    Json jb;
    jb["branch"] = b.name;
    jb["numerator"] = b.numerator.to_string();
    jb["denominator"] = b.denominator.to_string();
    jb["ratio"] = b.ratio.to_string();
    jb["attains"] = b.attains;
    per.push_back(std::move(jb));
  }
  j["per_branch"] = std::move(per);
  j["certificate"] = r.certificate.to_string();
  return j;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tcurves
