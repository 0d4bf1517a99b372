#include "tcurves/strata.hpp"

#include <algorithm>
#include <set>

#include "tcurves/errors.hpp"
#include "tcurves/reduction.hpp"

namespace tcurves {

namespace {

struct ValuedRows {
  Rat value;
  const std::vector<RatRow>* rows;
};

}  // namespace

std::vector<Rat> StrataReport::values() const {
  std::vector<Rat> out;
  for (const auto& s : strata) out.push_back(s.value);
  return out;
}

StrataReport compute_strata(const CurveFamily& fam, unsigned degree, StrataMode mode, Exec exec) {
  const bool deg_mode = mode == StrataMode::Degree;
  if (deg_mode != (fam.anchor() == Anchor::Infinity))
    throw DomainError(deg_mode ? "degree strata need a family at infinity"
                               : "multiplicity strata need a family at the origin");
  auto tables = build_tables(fam, degree, exec);
  const std::size_t ncols = binomial(static_cast<unsigned>(fam.variables().size()) + degree, degree);

  std::vector<ValuedRows> all;
  // Thresholds beyond which rows of truncated branches are noise.
  std::optional<Rat> reliable_limit;
  for (std::size_t b = 0; b < tables.size(); ++b) {
    const Branch& br = fam.branches()[b];
    Rat n = (deg_mode ? norm_degree(br) : norm_order(br)).value.value();
    std::optional<Rat> floor_exp;
    if (br.error_exponent && degree > 0) {
      floor_exp = deg_mode ? *br.error_exponent + Rat(degree - 1) * n : *br.error_exponent;
      Rat lim = *floor_exp / n;
      if (!reliable_limit) reliable_limit = lim;
      else reliable_limit = deg_mode ? std::max(*reliable_limit, lim) : std::min(*reliable_limit, lim);
    }
    for (const auto& f : tables[b].ladder) {
      if (floor_exp && (deg_mode ? f.exponent <= *floor_exp : f.exponent >= *floor_exp)) continue;
      all.push_back({f.exponent / n, &f.rows});
    }
  }

  // Candidate thresholds, ordered so the subspaces grow.
  std::set<Rat> cand;
  for (const auto& vr : all) cand.insert(vr.value);
  std::vector<Rat> thresholds(cand.begin(), cand.end());
  if (!deg_mode) std::reverse(thresholds.begin(), thresholds.end());
  auto violates = [&](const Rat& v, const Rat& q) { return deg_mode ? v > q : v < q; };
  auto rows_violating = [&](const Rat& q) {
    std::vector<RatRow> rows;
    for (const auto& vr : all)
      if (violates(vr.value, q)) rows.insert(rows.end(), vr.rows->begin(), vr.rows->end());
    return rows;
  };

  std::vector<std::vector<RatRow>> kernels(thresholds.size());
  const long nt = static_cast<long>(thresholds.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < nt; ++i) kernels[i] = kernel(rows_violating(thresholds[i]), ncols);
  } else {
    for (long i = 0; i < nt; ++i) kernels[i] = kernel(rows_violating(thresholds[i]), ncols);
  }
  std::vector<RatRow> every;
  for (const auto& vr : all) every.insert(every.end(), vr.rows->begin(), vr.rows->end());

  StrataReport rep;
  rep.mode = mode;
  rep.degree = degree;
  rep.variables = fam.variables();
  if (reliable_limit) {
    // Only thresholds on the reliable side carry exact information.
    std::vector<Rat> kept_t;
    std::vector<std::vector<RatRow>> kept_k;
    for (std::size_t i = 0; i < thresholds.size(); ++i)
      if (deg_mode ? thresholds[i] >= *reliable_limit : thresholds[i] <= *reliable_limit) {
        kept_t.push_back(thresholds[i]);
        kept_k.push_back(std::move(kernels[i]));
      }
    std::vector<RatRow> lowest = kernel(rows_violating(*reliable_limit), ncols);
    if (!lowest.empty())
      throw TruncationError("truncated branches cannot resolve the strata below " + to_string(*reliable_limit) +
                            "; regenerate them with a larger truncation order");
    thresholds = std::move(kept_t);
    kernels = std::move(kept_k);
  } else {
    rep.vanishing = kernel(every, ncols);
  }
  std::size_t prev_dim = rep.vanishing.size();
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (kernels[i].size() == prev_dim) continue;
    prev_dim = kernels[i].size();
    rep.strata.push_back({thresholds[i], std::move(kernels[i])});
  }
  if (rep.strata.empty() || rep.strata.back().basis.size() != ncols)
    throw DomainError("internal error: top stratum is not the whole space");
  for (const auto& s : rep.strata) rep.w = lcm(rep.w, s.value.get_den());
  return rep;
}

ExtRat membership(const StrataReport& report, const Polynomial& f) {
  if (!(f.variables() == report.variables)) throw InputError("polynomial variables differ from the report's");
  RatRow v = coefficient_vector(f, report.degree);
  bool deg_mode = report.mode == StrataMode::Degree;
  if (f.is_zero() || in_span(report.vanishing, v)) return deg_mode ? ExtRat::minus_inf() : ExtRat::plus_inf();
  for (const auto& s : report.strata)
    if (in_span(s.basis, v)) return ExtRat(s.value);
  throw DomainError("internal error: polynomial outside the top stratum");
}

}  // namespace tcurves
