#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "tcurves/exec.hpp"
#include "tcurves/rational.hpp"

namespace tcurves {

using IntRow = std::vector<Int>;
using RatRow = std::vector<Rat>;

// Scales a rational row to a primitive integer row (same span).
IntRow clear_denominators(const RatRow& row);

// Rank by fraction-free (Bareiss) elimination.  All rows must share a length.
std::size_t bareiss_rank(std::vector<IntRow> rows, Exec exec = Exec::Serial);
std::size_t rank(const std::vector<RatRow>& rows, Exec exec = Exec::Serial);

// Reduced row echelon basis of the row space.
std::vector<RatRow> row_basis(const std::vector<RatRow>& rows, std::size_t ncols, Exec exec = Exec::Serial);
// Basis of {x : r.x = 0 for every row r}.
std::vector<RatRow> kernel(const std::vector<RatRow>& rows, std::size_t ncols, Exec exec = Exec::Serial);
// Whether v lies in the span of the rows.
bool in_span(const std::vector<RatRow>& rows, const RatRow& v);
// Whether two row sets span the same space.
bool same_row_space(const std::vector<RatRow>& a, const std::vector<RatRow>& b, std::size_t ncols);

// Growing row space kept in integer echelon form.
class IncrementalSpan {
 public:
  explicit IncrementalSpan(std::size_t ncols) : ncols_(ncols) {}
  // Adds the row; true when it was independent of the rows so far.
  bool add(const RatRow& row);
  bool contains(const RatRow& row) const;
  std::size_t rank() const { return pivots_.size(); }
  std::size_t ncols() const { return ncols_; }

 private:
  IntRow reduce(IntRow v) const;
  std::size_t ncols_;
  std::map<std::size_t, IntRow> pivots_;  // pivot column -> row
};

}  // namespace tcurves
