#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcurves/curves.hpp"
#include "tcurves/linalg.hpp"

namespace tcurves {

// Coefficient of t^{key/q} in f o gamma for the generic f = sum a_alpha x^alpha,
// after clearing denominators: rows are parameter monomials, columns are the
// monomials alpha in coefficient-vector order.
struct Functional {
  std::int64_t key = 0;
  Rat exponent;
  std::vector<Exponent> row_monomials;
  std::vector<RatRow> rows;
  // Product of the distinct coefficient denominators cleared at this exponent.
  Polynomial multiplier;
};

struct CompositionTable {
  std::string branch;
  unsigned ramification = 1;
  unsigned degree = 0;
  std::size_t columns = 0;
  // Sorted by exponent, ascending.
  std::vector<Functional> ladder;
};

CompositionTable build_table(const Branch& b, std::size_t nvars, unsigned degree);
std::vector<CompositionTable> build_tables(const CurveFamily& fam, unsigned degree, Exec exec = Exec::Serial);

std::size_t target_rank(const Functional& f, Exec exec = Exec::Serial);

struct RankCertificate {
  std::string branch;
  Rat exponent;
  std::size_t target = 0;
  std::size_t achieved = 0;
};

struct ReducedFamily {
  unsigned degree = 0;
  std::vector<std::vector<Rat>> points;
  CurveFamily curves;
  // Index of the source branch of each curve branch.
  std::vector<std::size_t> source_branch;
  std::vector<RankCertificate> certificates;
  std::size_t branch_bound = 0;
  std::uint64_t points_examined = 0;

  bool saturated() const;
};

struct SelectionOptions {
  // Largest max-norm of enumerated integer points.
  unsigned max_radius = 64;
  Exec exec = Exec::Serial;
};

// max(d,1) * C(n+d, d) * N with N = l * (spread + 1), spread the largest gap
// between the highest and lowest exponent on a branch.
std::size_t branch_bound(const CurveFamily& fam, unsigned degree);

ReducedFamily select_parameters(const CurveFamily& fam, unsigned degree, const SelectionOptions& opts = {});
// Specializes at the given points and reports the ranks they reach.
ReducedFamily reduce_with_points(const CurveFamily& fam, unsigned degree,
                                 const std::vector<std::vector<Rat>>& points, Exec exec = Exec::Serial);

struct Mismatch {
  std::string polynomial;
  std::string branch;  // empty for a family-level mismatch
  ExtRat expected;
  ExtRat got;
};

struct VerificationReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t family_mismatches = 0;
  std::size_t branch_mismatches = 0;
  std::vector<Mismatch> examples;  // at most a handful
};

// Compares the concrete curve against the generic family on random f, and on
// every polynomial in `extra`.
VerificationReport verify_reduction(const CurveFamily& fam, const ReducedFamily& red, std::size_t trials,
                                    std::uint64_t seed, const std::vector<Polynomial>& extra = {},
                                    Exec exec = Exec::Serial);

// Integer points of Z^m by max-norm, then lexicographically.
class PointEnumerator {
 public:
  explicit PointEnumerator(std::size_t dim) : dim_(dim) {}
  // Next point; false once max-norm would exceed max_radius.
  bool next(std::vector<Rat>& out, unsigned max_radius);

 private:
  bool advance();
  std::size_t dim_;
  long radius_ = -1;
  std::vector<long> current_;
};

}  // namespace tcurves
