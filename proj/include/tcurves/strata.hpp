#pragma once

#include <vector>

#include "tcurves/curves.hpp"
#include "tcurves/linalg.hpp"

namespace tcurves {

enum class StrataMode { Degree, Multiplicity };

struct Stratum {
  Rat value;
  // Spans {f : rdeg f <= value} in degree mode, {f : mult f >= value} in
  // multiplicity mode; coefficient-vector coordinates.
  std::vector<RatRow> basis;
};

struct StrataReport {
  StrataMode mode = StrataMode::Degree;
  unsigned degree = 0;
  VarList variables;
  Int w = 1;
  // Nested, growing: ascending values in degree mode, descending in
  // multiplicity mode.  The last stratum is the whole space.
  std::vector<Stratum> strata;
  // Polynomials vanishing on every branch (value -inf / +inf).
  std::vector<RatRow> vanishing;

  std::vector<Rat> values() const;
};

StrataReport compute_strata(const CurveFamily& fam, unsigned degree, StrataMode mode, Exec exec = Exec::Serial);

// Stratum value of f; -inf (degree) or +inf (multiplicity) when f vanishes on
// the family.  DomainError when deg f exceeds the report's bound.
ExtRat membership(const StrataReport& report, const Polynomial& f);

}  // namespace tcurves
