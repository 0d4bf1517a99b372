#pragma once

#include <random>
#include <string>
#include <vector>

#include "tcurves/polynomial.hpp"

namespace tcurves::testing {

inline Rat random_rat(std::mt19937_64& rng, int lo = -10, int hi = 10) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, 4);
  Rat r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Polynomial random_polynomial(std::mt19937_64& rng, const VarList& vars, unsigned max_deg,
                                    std::size_t max_terms = 6) {
  auto monos = monomials_up_to(vars.size(), max_deg);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1), count(0, max_terms);
  Polynomial p(vars);
  std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) p.add_term(monos[pick(rng)], random_rat(rng));
  return p;
}

inline std::vector<Rat> random_point(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rat> pt(n);
  for (auto& v : pt) v = random_rat(rng, -5, 5);
  return pt;
}

inline VarList vars_named(std::size_t n) {
  static const char* names[] = {"x", "y", "z", "w", "u", "v"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(names[i]);
  return VarList(out);
}

}  // namespace tcurves::testing

namespace tcurves::testing {

inline Rat rat(long n, long d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline std::string fixture(const std::string& name) { return std::string(TCURVES_FIXTURE_DIR) + "/" + name; }

}  // namespace tcurves::testing
