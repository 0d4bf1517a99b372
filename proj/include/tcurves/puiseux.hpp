#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tcurves/param_coeff.hpp"

namespace tcurves {

enum class Anchor { Origin, Infinity };

std::string to_string(Anchor a);
Anchor parse_anchor(std::string_view text);

struct GenericValue {
  ExtRat value;
  // Product of leading numerators; its nonvanishing at c validates value.
  Polynomial certificate;
};

// Finite Laurent-Puiseux series sum_k a_k(c) t^{k/q}.  Keys need not be
// coprime to q; q is never minimized.
class ParamPuiseux {
 public:
  using TermMap = std::map<std::int64_t, ParamCoeff>;

  ParamPuiseux() = default;
  ParamPuiseux(VarList params, unsigned ramification, Anchor anchor);

  static ParamPuiseux constant(const VarList& params, Anchor anchor, const ParamCoeff& c);
  static ParamPuiseux monomial(const VarList& params, unsigned ramification, Anchor anchor,
                               std::int64_t key, const ParamCoeff& c);

  const VarList& params() const { return params_; }
  unsigned ramification() const { return q_; }
  Anchor anchor() const { return anchor_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Adds c*t^{key/q}; zero results are dropped.
  void add_term(std::int64_t key, const ParamCoeff& c);
  ParamCoeff coefficient(std::int64_t key) const;

  // Same series over ramification q' (a multiple of q).
  ParamPuiseux lifted(unsigned new_ramification) const;

  // Exponent of the lowest / highest term; +inf / -inf for the zero series.
  ExtRat min_exponent() const;
  ExtRat max_exponent() const;

  ParamPuiseux operator-() const;
  friend ParamPuiseux operator+(const ParamPuiseux& a, const ParamPuiseux& b);
  friend ParamPuiseux operator-(const ParamPuiseux& a, const ParamPuiseux& b) { return a + (-b); }
  friend ParamPuiseux operator*(const ParamPuiseux& a, const ParamPuiseux& b);
  ParamPuiseux scaled(const ParamCoeff& c) const;
  ParamPuiseux pow(unsigned k) const;

  // Drops every term with exponent strictly beyond `bound` in the vanishing
  // direction (below at infinity, above at the origin).
  ParamPuiseux truncated(const Rat& bound) const;

  // Evaluates every coefficient at c; the result has no parameters.
  ParamPuiseux specialize(std::span<const Rat> point) const;

  friend bool operator==(const ParamPuiseux& a, const ParamPuiseux& b);

  std::string to_string(const std::string& var = "t") const;

 private:
  void require_compatible(const ParamPuiseux& o) const;
  VarList params_;
  unsigned q_ = 1;
  Anchor anchor_ = Anchor::Origin;
  TermMap terms_;
};

GenericValue generic_ord(const ParamPuiseux& s);
GenericValue generic_deg(const ParamPuiseux& s);

// f evaluated on the arc (one series per variable of f).
ParamPuiseux compose(const Polynomial& f, std::span<const ParamPuiseux> arc);

}  // namespace tcurves
