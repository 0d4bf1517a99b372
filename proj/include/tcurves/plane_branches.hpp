#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcurves/curves.hpp"

namespace tcurves {

// A branch of G(x, y) = 0.  Orientation 1 puts x = t and expands y;
// orientation 2 puts y = t and expands x.
struct TruncatedBranch {
  Branch branch;
  int orientation = 1;
  bool exact = false;
};

// An edge whose roots leave the coefficient field Q(c).
struct UnsupportedEdge {
  int orientation = 1;
  Rat exponent;
  std::string edge_polynomial;
  std::string prefix;
};

struct NewtonEdge {
  Rat exponent;
  // sum over the edge of lc_j * a^j, indexed by j.
  std::map<unsigned, ParamCoeff> coefficients;
  std::string to_string() const;
};

struct BranchExpansion {
  VarList variables;  // x, y
  VarList params;     // c
  Anchor anchor = Anchor::Infinity;
  std::int64_t truncation = 0;
  // G as a polynomial in x, y and the parameter.
  Polynomial curve;
  std::vector<TruncatedBranch> branches;
  std::vector<UnsupportedEdge> unsupported;

  // DomainError when no branch could be expanded.
  CurveFamily family() const;
};

// G = g - c, or g itself when it already mentions the parameter.  `text` may
// use x, y and the parameter name.
Polynomial level_curve(const std::string& text, const std::string& param);

// First Newton polygon of G in orientation 1 (x = t, solve for y).
std::vector<NewtonEdge> newton_polygon(const Polynomial& curve, Anchor anchor);

BranchExpansion expand_branches(const Polynomial& curve, Anchor anchor, std::optional<std::int64_t> truncation = {});
std::int64_t default_truncation(const Polynomial& curve);

// Order of G along the branch (degree at infinity, order at the origin).
// Throws DomainError when it violates the bound the branch advertises.
ExtRat residual_check(const TruncatedBranch& tb, const Polynomial& curve);

}  // namespace tcurves
