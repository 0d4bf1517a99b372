#include "tcurves/reduction.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <random>

#include "tcurves/errors.hpp"

namespace tcurves {

namespace {

Rat power(const Rat& base, std::uint32_t e) {
  Rat r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

// L(c) * G^c as a vector over the monomials alpha.
RatRow evaluate_functional(const Functional& f, std::span<const Rat> c, std::size_t ncols) {
  RatRow v(ncols);
  for (std::size_t r = 0; r < f.rows.size(); ++r) {
    Rat m = 1;
    const Exponent& kappa = f.row_monomials[r];
    for (std::size_t i = 0; i < kappa.size(); ++i)
      if (kappa[i]) m *= power(c[i], kappa[i]);
    if (sgn(m) == 0) continue;
    for (std::size_t j = 0; j < ncols; ++j)
      if (sgn(f.rows[r][j]) != 0) v[j] += m * f.rows[r][j];
  }
  return v;
}

// Whether the branch specializes at c without losing its shape.
bool point_is_admissible(const Branch& b, Anchor anchor, std::span<const Rat> c) {
  for (const auto& p : b.domain_excludes)
    if (sgn(p.evaluate(c)) == 0) return false;
  for (const auto& coord : b.coordinates)
    for (const auto& [k, v] : coord.terms())
      if (sgn(v.den().evaluate(c)) == 0) return false;
  GenericValue n = anchor == Anchor::Origin ? norm_order(b) : norm_degree(b);
  return sgn(n.certificate.evaluate(c)) != 0;
}

bool point_is_admissible(const CurveFamily& fam, const std::vector<CompositionTable>& tables,
                         std::span<const Rat> c) {
  for (const auto& b : fam.branches())
    if (!point_is_admissible(b, fam.anchor(), c)) return false;
  for (const auto& t : tables)
    for (const auto& f : t.ladder)
      if (sgn(f.multiplier.evaluate(c)) == 0) return false;
  return true;
}

struct Tracker {
  std::vector<std::vector<IncrementalSpan>> spans;
  std::vector<std::vector<std::size_t>> targets;
  std::size_t short_count = 0;
};

Tracker make_tracker(const std::vector<CompositionTable>& tables, Exec exec) {
  Tracker t;
  for (const auto& tab : tables) {
    t.spans.emplace_back();
    t.targets.emplace_back();
    for (const auto& f : tab.ladder) {
      t.spans.back().emplace_back(tab.columns);
      std::size_t r = target_rank(f, exec);
      t.targets.back().push_back(r);
      if (r > 0) ++t.short_count;
    }
  }
  return t;
}

// Adds the functionals at c; true if some rank grew.
bool absorb(Tracker& t, const std::vector<CompositionTable>& tables, std::span<const Rat> c) {
  bool grew = false;
  for (std::size_t b = 0; b < tables.size(); ++b) {
    for (std::size_t j = 0; j < tables[b].ladder.size(); ++j) {
      auto& span = t.spans[b][j];
      if (span.rank() >= t.targets[b][j]) continue;
      if (span.add(evaluate_functional(tables[b].ladder[j], c, tables[b].columns))) {
        grew = true;
        if (span.rank() == t.targets[b][j]) --t.short_count;
      }
    }
  }
  return grew;
}

std::vector<RankCertificate> certificates(const Tracker& t, const std::vector<CompositionTable>& tables) {
  std::vector<RankCertificate> out;
  for (std::size_t b = 0; b < tables.size(); ++b)
    for (std::size_t j = 0; j < tables[b].ladder.size(); ++j)
      out.push_back({tables[b].branch, tables[b].ladder[j].exponent, t.targets[b][j], t.spans[b][j].rank()});
  return out;
}

ReducedFamily assemble(const CurveFamily& fam, unsigned degree, std::vector<std::vector<Rat>> points,
                       std::vector<RankCertificate> certs) {
  std::vector<Branch> out;
  std::vector<std::size_t> source;
  for (std::size_t b = 0; b < fam.branches().size(); ++b) {
    const Branch& br = fam.branches()[b];
    for (const auto& c : points) {
      Branch nb;
      nb.name = br.name + "@(";
      for (std::size_t i = 0; i < c.size(); ++i) nb.name += (i ? "," : "") + to_string(c[i]);
      nb.name += ")";
      for (const auto& coord : br.coordinates) nb.coordinates.push_back(coord.specialize(c));
      nb.error_exponent = br.error_exponent;
      nb.truncation = br.truncation;
      out.push_back(std::move(nb));
      source.push_back(b);
    }
  }
  CurveFamily curves(fam.variables(), VarList(), fam.anchor(), std::move(out));
  ReducedFamily red{degree, std::move(points), std::move(curves), std::move(source), std::move(certs),
                    branch_bound(fam, degree), 0};
  return red;
}

}  // namespace

bool ReducedFamily::saturated() const {
  return std::all_of(certificates.begin(), certificates.end(),
                     [](const RankCertificate& c) { return c.achieved == c.target; });
}

CompositionTable build_table(const Branch& b, std::size_t nvars, unsigned degree) {
  if (b.coordinates.size() != nvars) throw InputError("branch dimension mismatch");
  const VarList& params = b.coordinates.front().params();
  const Anchor anchor = b.coordinates.front().anchor();
  unsigned q = 1;
  for (const auto& c : b.coordinates) q = std::lcm(q, c.ramification());
  std::vector<ParamPuiseux> coords;
  for (const auto& c : b.coordinates) coords.push_back(c.lifted(q));

  auto monos = monomials_up_to(nvars, degree);
  CompositionTable tab;
  tab.branch = b.name;
  tab.ramification = q;
  tab.degree = degree;
  tab.columns = monos.size();

  std::map<Exponent, ParamPuiseux> comp;
  std::map<std::int64_t, std::vector<std::pair<std::size_t, ParamCoeff>>> by_key;
  for (std::size_t col = 0; col < monos.size(); ++col) {
    const Exponent& a = monos[col];
    ParamPuiseux s;
    auto i = std::find_if(a.begin(), a.end(), [](auto v) { return v > 0; });
    if (i == a.end()) {
      s = ParamPuiseux::constant(params, anchor, ParamCoeff::constant(params, 1)).lifted(q);
    } else {
      Exponent prev = a;
      std::size_t idx = static_cast<std::size_t>(i - a.begin());
      --prev[idx];
      s = comp.at(prev) * coords[idx];
    }
    for (const auto& [k, c] : s.terms()) by_key[k].emplace_back(col, c);
    comp.emplace(a, std::move(s));
  }

  for (auto& [key, entries] : by_key) {
    Functional f;
    f.key = key;
    f.exponent = rat_from_int(key) / q;
    std::vector<Polynomial> dens;
    for (const auto& [col, c] : entries)
      if (!c.den().is_constant() && std::find(dens.begin(), dens.end(), c.den()) == dens.end())
        dens.push_back(c.den());
    f.multiplier = Polynomial::constant(params, 1);
    for (const auto& d : dens) f.multiplier *= d;
    std::map<Exponent, RatRow, PrintOrder> rows;
    for (const auto& [col, c] : entries) {
      Polynomial cleared = c.num();
      for (const auto& d : dens)
        if (!(d == c.den())) cleared *= d;
      for (const auto& [kappa, v] : cleared.terms()) {
        auto it = rows.try_emplace(kappa, RatRow(monos.size())).first;
        it->second[col] += v;
      }
    }
    for (auto& [kappa, row] : rows) {
      f.row_monomials.push_back(kappa);
      f.rows.push_back(std::move(row));
    }
    tab.ladder.push_back(std::move(f));
  }
  return tab;
}

std::vector<CompositionTable> build_tables(const CurveFamily& fam, unsigned degree, Exec exec) {
  const auto& branches = fam.branches();
  std::vector<CompositionTable> out(branches.size());
  const std::size_t n = fam.variables().size();
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < branches.size(); ++i) out[i] = build_table(branches[i], n, degree);
    return out;
  }
  std::vector<std::exception_ptr> errors(branches.size());
  const long nb = static_cast<long>(branches.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < nb; ++i) {
    try {
      out[i] = build_table(branches[i], n, degree);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::size_t target_rank(const Functional& f, Exec exec) { return rank(f.rows, exec); }

std::size_t branch_bound(const CurveFamily& fam, unsigned degree) {
  Rat spread = 0;
  for (const auto& b : fam.branches()) {
    ExtRat lo = ExtRat::plus_inf(), hi = ExtRat::minus_inf();
    for (const auto& c : b.coordinates) {
      lo = min(lo, c.min_exponent());
      hi = max(hi, c.max_exponent());
    }
    if (lo.is_finite() && hi.is_finite()) spread = std::max(spread, Rat(hi.value() - lo.value()));
  }
  std::size_t n = fam.variables().size();
  std::size_t big_n = fam.branches().size() * (static_cast<std::size_t>(ceil(spread).get_ui()) + 1);
  return std::max(degree, 1u) * binomial(static_cast<unsigned>(n) + degree, degree) * big_n;
}

bool PointEnumerator::advance() {
  // Odometer over [-r, r]^m in lexicographic order.
  for (std::size_t i = dim_; i-- > 0;) {
    if (current_[i] < radius_) {
      ++current_[i];
      return true;
    }
    current_[i] = -radius_;
  }
  return false;
}

bool PointEnumerator::next(std::vector<Rat>& out, unsigned max_radius) {
  auto on_shell = [&] {
    return std::any_of(current_.begin(), current_.end(), [&](long v) { return std::labs(v) == radius_; });
  };
  for (;;) {
    bool have;
    if (radius_ < 0) {
      radius_ = 0;
      current_.assign(dim_, 0);
      have = true;
    } else {
      have = advance();
      if (!have) {
        if (radius_ + 1 > static_cast<long>(max_radius)) return false;
        ++radius_;
        current_.assign(dim_, -radius_);
        have = true;
      }
    }
    if (have && (radius_ == 0 || on_shell())) {
      out.resize(dim_);
      for (std::size_t i = 0; i < dim_; ++i) out[i] = Rat(current_[i]);
      return true;
    }
  }
}

ReducedFamily select_parameters(const CurveFamily& fam, unsigned degree, const SelectionOptions& opts) {
  auto tables = build_tables(fam, degree, opts.exec);
  Tracker t = make_tracker(tables, opts.exec);
  const std::size_t m = fam.parameters().size();
  if (m == 0) {
    for (std::size_t b = 0; b < tables.size(); ++b)
      for (std::size_t j = 0; j < tables[b].ladder.size(); ++j)
        t.spans[b][j].add(tables[b].ladder[j].rows.front());
    std::vector<std::size_t> source(fam.branches().size());
    std::iota(source.begin(), source.end(), 0);
    return ReducedFamily{degree, {}, fam, std::move(source), certificates(t, tables), branch_bound(fam, degree), 0};
  }
  PointEnumerator en(m);
  std::vector<Rat> c;
  std::vector<std::vector<Rat>> kept;
  std::uint64_t examined = 0;
  while (t.short_count > 0) {
    if (!en.next(c, opts.max_radius)) {
      std::string what;
      for (const auto& cert : certificates(t, tables))
        if (cert.achieved < cert.target)
          what += " " + cert.branch + "@t^" + to_string(cert.exponent) + " (" + std::to_string(cert.achieved) +
                  "/" + std::to_string(cert.target) + ")";
      throw DomainError("parameter enumeration exhausted before saturation:" + what);
    }
    ++examined;
    if (!point_is_admissible(fam, tables, c)) continue;
    if (absorb(t, tables, c)) kept.push_back(c);
  }
  ReducedFamily red = assemble(fam, degree, std::move(kept), certificates(t, tables));
  red.points_examined = examined;
  return red;
}

ReducedFamily reduce_with_points(const CurveFamily& fam, unsigned degree,
                                 const std::vector<std::vector<Rat>>& points, Exec exec) {
  auto tables = build_tables(fam, degree, exec);
  Tracker t = make_tracker(tables, exec);
  for (const auto& c : points) {
    if (c.size() != fam.parameters().size()) throw InputError("parameter point has the wrong dimension");
    if (!point_is_admissible(fam, tables, c))
      throw DomainError("parameter point is not admissible for every branch");
    absorb(t, tables, c);
  }
  return assemble(fam, degree, points, certificates(t, tables));
}

VerificationReport verify_reduction(const CurveFamily& fam, const ReducedFamily& red, std::size_t trials,
                                    std::uint64_t seed, const std::vector<Polynomial>& extra, Exec exec) {
  VerificationReport rep;
  rep.trials = trials;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  const VarList& vars = fam.variables();
  auto monos = monomials_up_to(vars.size(), red.degree);
  std::vector<Polynomial> polys;
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1), nterms(1, 6);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (std::size_t i = 0; i < trials; ++i) {
    Polynomial p(vars);
    std::size_t k = nterms(rng);
    for (std::size_t j = 0; j < k; ++j) {
      int v = coeff(rng);
      p.add_term(monos[pick(rng)], Rat(v == 0 ? 1 : v));
    }
    if (p.is_zero()) p = Polynomial::constant(vars, 1);
    polys.push_back(std::move(p));
  }
  polys.insert(polys.end(), extra.begin(), extra.end());

  const bool origin = fam.anchor() == Anchor::Origin;
  std::vector<std::vector<Mismatch>> found(polys.size());
  std::vector<std::exception_ptr> errors(polys.size());
  auto check = [&](std::size_t i) {
    const Polynomial& f = polys[i];
    RelValue gen = rel_value(f, fam), conc = rel_value(f, red.curves);
    if (gen.value != conc.value) found[i].push_back({f.to_string(), "", gen.value, conc.value});
    for (std::size_t b = 0; b < fam.branches().size(); ++b) {
      ExtRat best = origin ? ExtRat::plus_inf() : ExtRat::minus_inf();
      bool any = false;
      for (std::size_t k = 0; k < red.source_branch.size(); ++k) {
        if (red.source_branch[k] != b) continue;
        const ExtRat& r = conc.per_branch[k].ratio;
        best = origin ? min(best, r) : max(best, r);
        any = true;
      }
      if (any && best != gen.per_branch[b].ratio)
        found[i].push_back({f.to_string(), fam.branches()[b].name, gen.per_branch[b].ratio, best});
    }
  };
  const long np = static_cast<long>(polys.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < np; ++i) {
      try {
        check(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (long i = 0; i < np; ++i) check(static_cast<std::size_t>(i));
  }
  for (const auto& list : found)
    for (const auto& mm : list) {
      (mm.branch.empty() ? rep.family_mismatches : rep.branch_mismatches)++;
      if (rep.examples.size() < 8) rep.examples.push_back(mm);
    }
  return rep;
}

}  // namespace tcurves
