#pragma once

#include "tcurves/curves.hpp"

namespace tcurves {

struct InvertedPolynomial {
  Polynomial original;
  unsigned degree = 0;
  // sum_i |x|^{2(d-i)} h_i
  Polynomial inverted;
};

// DomainError for the zero polynomial.
InvertedPolynomial invert_poly(const Polynomial& f);

// 2 deg f - mult(I(f)) along a family at the origin, branch by branch.
RelValue rdeg_via_duality(const Polynomial& f, const CurveFamily& fam_at_origin, Exec exec = Exec::Serial);

// Degree bookkeeping for the inverted arc x/|x|^2 o gamma, read on the
// s = 1/t scale, without forming the inverted series.
class InvertedArc {
 public:
  explicit InvertedArc(Branch b);

  const Branch& source() const { return branch_; }
  // deg |iota o gamma| = ord |gamma|.
  const Rat& norm_degree() const { return norm_; }
  // deg f(iota o gamma) = 2 d ord|gamma| - ord(I(f) o gamma).
  ExtRat degree_of(const Polynomial& f) const;
  ExtRat ratio(const Polynomial& f) const;

 private:
  Branch branch_;
  Rat norm_;
};

InvertedArc push_arc_to_infinity(const Branch& b);

}  // namespace tcurves
