#include "tcurves/curves.hpp"

#include <exception>
#include <numeric>

#include "tcurves/errors.hpp"

namespace tcurves {

namespace {

// Leading data of a branch norm: extreme coordinate exponent and the product
// of the attaining coordinates' leading numerators.
GenericValue branch_norm(const Branch& b, Anchor anchor) {
  bool origin = anchor == Anchor::Origin;
  ExtRat best = origin ? ExtRat::plus_inf() : ExtRat::minus_inf();
  for (const auto& c : b.coordinates) {
    ExtRat e = origin ? c.min_exponent() : c.max_exponent();
    best = origin ? min(best, e) : max(best, e);
  }
  if (!best.is_finite()) throw DomainError("branch '" + b.name + "' has only zero coordinates");
  const VarList& params = b.coordinates.front().params();
  Polynomial cert = Polynomial::constant(params, 1);
  for (const auto& c : b.coordinates) {
    if (c.is_zero()) continue;
    if ((origin ? c.min_exponent() : c.max_exponent()) != best) continue;
    cert *= origin ? c.terms().begin()->second.num() : c.terms().rbegin()->second.num();
  }
  return {best, cert};
}

struct BranchEval {
  GenericValue comp;
  GenericValue norm;
  ExtRat ratio;
};

BranchEval evaluate_branch(const Polynomial& f, const Branch& b, Anchor anchor) {
  BranchEval ev;
  ev.norm = branch_norm(b, anchor);
  ParamPuiseux s = compose(f, b.coordinates);
  ev.comp = anchor == Anchor::Origin ? generic_ord(s) : generic_deg(s);
  if (b.error_exponent && !f.is_constant()) {
    const Rat& err = *b.error_exponent;
    const Rat& n = ev.norm.value.value();
    Int d = f.degree().value().get_num();
    bool ok;
    if (anchor == Anchor::Infinity) {
      Rat floor_exp = err + Rat(d - 1) * n;
      ok = ev.comp.value > ExtRat(floor_exp);
    } else {
      ok = ev.comp.value < ExtRat(err);
    }
    if (!ok)
      throw TruncationError("branch '" + b.name + "' is truncated too early to decide the leading term of " +
                            f.to_string() + " (remainder O(t^" + to_string(err) +
                            ")); regenerate it with a larger truncation order");
  }
  ev.ratio = ev.comp.value.divided_by(ev.norm.value.value());
  return ev;
}

std::vector<BranchEval> evaluate_all(const Polynomial& f, const CurveFamily& fam, Exec exec) {
  if (!(f.variables() == fam.variables())) throw InputError("polynomial variables differ from family variables");
  const auto& branches = fam.branches();
  std::vector<BranchEval> out(branches.size());
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < branches.size(); ++i) out[i] = evaluate_branch(f, branches[i], fam.anchor());
    return out;
  }
  std::vector<std::exception_ptr> errors(branches.size());
  const long nb = static_cast<long>(branches.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < nb; ++i) {
    try {
      out[i] = evaluate_branch(f, branches[i], fam.anchor());
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

RelValue combine(const CurveFamily& fam, const std::vector<BranchEval>& evals) {
  bool origin = fam.anchor() == Anchor::Origin;
  RelValue r;
  r.value = origin ? ExtRat::plus_inf() : ExtRat::minus_inf();
  for (const auto& ev : evals) r.value = origin ? min(r.value, ev.ratio) : max(r.value, ev.ratio);
  r.certificate = Polynomial::constant(fam.parameters(), 1);
  bool identically = !r.value.is_finite();
  for (std::size_t i = 0; i < evals.size(); ++i) {
    const auto& ev = evals[i];
    BranchValue bv{fam.branches()[i].name, ev.comp.value, ev.norm.value, ev.ratio, ev.ratio == r.value};
    if (bv.attains && !identically) r.certificate *= ev.comp.certificate;
    r.certificate *= ev.norm.certificate;
    r.per_branch.push_back(std::move(bv));
  }
  return r;
}

}  // namespace

CurveFamily::CurveFamily(VarList variables, VarList parameters, Anchor anchor, std::vector<Branch> branches)
    : variables_(std::move(variables)),
      parameters_(std::move(parameters)),
      anchor_(anchor),
      branches_(std::move(branches)) {
  if (variables_.empty()) throw InputError("family needs at least one variable");
  if (branches_.empty()) throw InputError("family needs at least one branch");
  for (auto& b : branches_) {
    if (b.coordinates.size() != variables_.size())
      throw InputError("branch '" + b.name + "' has " + std::to_string(b.coordinates.size()) +
                       " coordinates, expected " + std::to_string(variables_.size()));
    for (const auto& c : b.coordinates) {
      if (c.anchor() != anchor_) throw InputError("branch '" + b.name + "' has a coordinate at the wrong anchor");
      if (!(c.params() == parameters_))
        throw InputError("branch '" + b.name + "' uses a different parameter list");
    }
    for (const auto& p : b.domain_excludes)
      if (!(p.variables() == parameters_))
        throw InputError("domain exclusion of branch '" + b.name + "' is not a polynomial in the parameters");
    GenericValue n = branch_norm(b, anchor_);
    if (anchor_ == Anchor::Origin && n.value <= ExtRat(0))
      throw DomainError("branch '" + b.name + "' does not tend to the origin");
    if (anchor_ == Anchor::Infinity && n.value <= ExtRat(0))
      throw DomainError("branch '" + b.name + "' does not tend to infinity");
    if (b.error_exponent) {
      bool ok = anchor_ == Anchor::Origin ? n.value < ExtRat(*b.error_exponent)
                                          : n.value > ExtRat(*b.error_exponent);
      if (!ok) throw TruncationError("branch '" + b.name + "' is truncated before its leading exponent");
    }
  }
  if (!parameters_.empty() && parameters_.size() >= variables_.size())
    warnings_.push_back("family uses " + std::to_string(parameters_.size()) + " parameters in dimension " +
                        std::to_string(variables_.size()) + "; testing families use fewer parameters than variables");
}

unsigned CurveFamily::ramification() const {
  unsigned q = 1;
  for (const auto& b : branches_)
    for (const auto& c : b.coordinates) q = std::lcm(q, c.ramification());
  return q;
}

void CurveFamily::check_domain(std::span<const Rat> c) const {
  if (c.size() != parameters_.size())
    throw InputError("parameter point has " + std::to_string(c.size()) + " entries, expected " +
                     std::to_string(parameters_.size()));
  for (const auto& b : branches_)
    for (const auto& p : b.domain_excludes)
      if (sgn(p.evaluate(c)) == 0)
        throw DomainError("parameter point lies on the excluded set " + p.to_string() + " = 0 of branch '" +
                          b.name + "'");
}

CurveFamily CurveFamily::specialize(std::span<const Rat> c) const {
  check_domain(c);
  std::string suffix = "@(";
  for (std::size_t i = 0; i < c.size(); ++i) suffix += (i ? "," : "") + to_string(c[i]);
  suffix += ")";
  std::vector<Branch> out;
  for (const auto& b : branches_) {
    Branch nb;
    nb.name = parameters_.empty() ? b.name : b.name + suffix;
    for (const auto& coord : b.coordinates) nb.coordinates.push_back(coord.specialize(c));
    nb.error_exponent = b.error_exponent;
    nb.truncation = b.truncation;
    out.push_back(std::move(nb));
  }
  return CurveFamily(variables_, VarList(), anchor_, std::move(out));
}

GenericValue norm_order(const Branch& b) { return branch_norm(b, Anchor::Origin); }
GenericValue norm_degree(const Branch& b) { return branch_norm(b, Anchor::Infinity); }

RelValue rel_mult(const Polynomial& f, const CurveFamily& fam, Exec exec) {
  if (fam.anchor() != Anchor::Origin) throw DomainError("relative multiplicity needs a family at the origin");
  return combine(fam, evaluate_all(f, fam, exec));
}

RelValue rel_deg(const Polynomial& f, const CurveFamily& fam, Exec exec) {
  if (fam.anchor() != Anchor::Infinity) throw DomainError("relative degree needs a family at infinity");
  return combine(fam, evaluate_all(f, fam, exec));
}

RelValue rel_value(const Polynomial& f, const CurveFamily& fam, Exec exec) {
  return fam.anchor() == Anchor::Origin ? rel_mult(f, fam, exec) : rel_deg(f, fam, exec);
}

Int integer_rel_deg(const Polynomial& f, const CurveFamily& fam) {
  RelValue r = rel_deg(f, fam);
  if (r.value.is_plus_inf()) throw DomainError("relative degree is +inf");
  if (r.value.is_minus_inf()) return 0;
  Int c = ceil(r.value.value());
  return c < 0 ? Int(0) : c;
}

ParameterCheck check_parameter(const CurveFamily& fam, const Polynomial& f, std::span<const Rat> c) {
  fam.check_domain(c);
  auto evals = evaluate_all(f, fam, Exec::Serial);
  RelValue r = combine(fam, evals);
  ParameterCheck out;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    const auto& name = fam.branches()[i].name;
    if (sgn(evals[i].norm.certificate.evaluate(c)) == 0)
      out.witnesses.push_back("branch '" + name + "': norm leading coefficient " +
                              evals[i].norm.certificate.to_string() + " vanishes");
    if (r.per_branch[i].attains && r.value.is_finite() && sgn(evals[i].comp.certificate.evaluate(c)) == 0)
      out.witnesses.push_back("branch '" + name + "': leading coefficient " +
                              evals[i].comp.certificate.to_string() + " vanishes");
  }
  out.generic = out.witnesses.empty();
  return out;
}

}  // namespace tcurves
