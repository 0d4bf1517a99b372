#include "tcurves/linalg.hpp"

#include <utility>

#include "tcurves/errors.hpp"

namespace tcurves {

namespace {

void make_primitive(IntRow& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0 || g == 1) return;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

std::size_t first_nonzero(const IntRow& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) return i;
  return v.size();
}

}  // namespace

IntRow clear_denominators(const RatRow& row) {
  Int l = 1;
  for (const auto& x : row) l = lcm(l, x.get_den());
  IntRow out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = row[i].get_num() * (l / row[i].get_den());
  make_primitive(out);
  return out;
}

std::size_t bareiss_rank(std::vector<IntRow> m, Exec exec) {
  if (m.empty()) return 0;
  const std::size_t nrows = m.size(), ncols = m[0].size();
  for (const auto& r : m)
    if (r.size() != ncols) throw InputError("matrix rows have different lengths");
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
    std::size_t piv = r;
    while (piv < nrows && sgn(m[piv][col]) == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(m[piv], m[r]);
    const IntRow& pr = m[r];
    const long first = static_cast<long>(r + 1), last = static_cast<long>(nrows);
    auto eliminate = [&](long i) {
      IntRow& row = m[i];
      Int f = row[col];
      for (std::size_t j = col + 1; j < ncols; ++j) {
        row[j] = row[j] * pr[col] - f * pr[j];
        mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
      }
      row[col] = 0;
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
      for (long i = first; i < last; ++i) eliminate(i);
    } else {
      for (long i = first; i < last; ++i) eliminate(i);
    }
    prev = pr[col];
    ++r;
  }
  return r;
}

std::size_t rank(const std::vector<RatRow>& rows, Exec exec) {
  std::vector<IntRow> m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back(clear_denominators(r));
  return bareiss_rank(std::move(m), exec);
}

std::vector<RatRow> row_basis(const std::vector<RatRow>& rows, std::size_t ncols, Exec exec) {
  std::vector<RatRow> m;
  for (const auto& r : rows) {
    if (r.size() != ncols) throw InputError("matrix rows have different lengths");
    m.push_back(r);
  }
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < m.size(); ++col) {
    std::size_t piv = r;
    while (piv < m.size() && sgn(m[piv][col]) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    Rat inv = 1 / m[r][col];
    for (auto& x : m[r]) x *= inv;
    const RatRow& pr = m[r];
    const long nrows = static_cast<long>(m.size()), pivot_row = static_cast<long>(r);
    auto eliminate = [&](long i) {
      if (i == pivot_row || sgn(m[i][col]) == 0) return;
      Rat f = m[i][col];
      for (std::size_t j = col; j < ncols; ++j) m[i][j] -= f * pr[j];
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
      for (long i = 0; i < nrows; ++i) eliminate(i);
    } else {
      for (long i = 0; i < nrows; ++i) eliminate(i);
    }
    ++r;
  }
  m.resize(r);
  return m;
}

std::vector<RatRow> kernel(const std::vector<RatRow>& rows, std::size_t ncols, Exec exec) {
  std::vector<RatRow> basis = row_basis(rows, ncols, exec);
  std::vector<long> pivot_of_col(ncols, -1);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j)
      if (sgn(basis[i][j]) != 0) {
        pivot_of_col[j] = static_cast<long>(i);
        break;
      }
  std::vector<RatRow> out;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    RatRow v(ncols);
    v[free] = 1;
    for (std::size_t j = 0; j < ncols; ++j)
      if (pivot_of_col[j] >= 0) v[j] = -basis[pivot_of_col[j]][free];
    out.push_back(std::move(v));
  }
  return out;
}

bool in_span(const std::vector<RatRow>& rows, const RatRow& v) {
  IncrementalSpan s(v.size());
  for (const auto& r : rows) s.add(r);
  return s.contains(v);
}

bool same_row_space(const std::vector<RatRow>& a, const std::vector<RatRow>& b, std::size_t ncols) {
  IncrementalSpan sa(ncols), sb(ncols);
  for (const auto& r : a) sa.add(r);
  for (const auto& r : b) sb.add(r);
  if (sa.rank() != sb.rank()) return false;
  for (const auto& r : b)
    if (!sa.contains(r)) return false;
  return true;
}

IntRow IncrementalSpan::reduce(IntRow v) const {
  for (const auto& [p, row] : pivots_) {
    if (sgn(v[p]) == 0) continue;
    Int a = row[p], b = v[p];
    for (std::size_t j = p; j < ncols_; ++j) v[j] = v[j] * a - b * row[j];
    make_primitive(v);
  }
  return v;
}

bool IncrementalSpan::add(const RatRow& row) {
  if (row.size() != ncols_) throw InputError("row length does not match the span");
  IntRow v = reduce(clear_denominators(row));
  std::size_t p = first_nonzero(v);
  if (p == ncols_) return false;
  pivots_.emplace(p, std::move(v));
  return true;
}

bool IncrementalSpan::contains(const RatRow& row) const {
  if (row.size() != ncols_) throw InputError("row length does not match the span");
  IntRow v = reduce(clear_denominators(row));
  return first_nonzero(v) == ncols_;
}

}  // namespace tcurves
