#include "tcurves/duality.hpp"

#include "tcurves/errors.hpp"

namespace tcurves {

namespace {

Polynomial squared_norm(const VarList& vars) {
  Polynomial n(vars);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    Exponent e(vars.size(), 0);
    e[i] = 2;
    n.add_term(e, 1);
  }
  return n;
}

}  // namespace

InvertedPolynomial invert_poly(const Polynomial& f) {
  if (f.is_zero()) throw DomainError("the zero polynomial has no inversion");
  unsigned d = static_cast<unsigned>(f.degree().value().get_num().get_ui());
  Polynomial norm2 = squared_norm(f.variables());
  Polynomial out(f.variables());
  for (const auto& [i, h] : f.homogeneous_parts()) out += norm2.pow(d - i) * h;
  return {f, d, out};
}

RelValue rdeg_via_duality(const Polynomial& f, const CurveFamily& fam, Exec exec) {
  if (fam.anchor() != Anchor::Origin) throw DomainError("duality needs a family at the origin");
  if (f.is_zero()) {
    RelValue r;
    r.value = ExtRat::minus_inf();
    r.certificate = Polynomial::constant(fam.parameters(), 1);
    for (const auto& b : fam.branches())
      r.per_branch.push_back({b.name, ExtRat::minus_inf(), norm_order(b).value, ExtRat::minus_inf(), true});
    return r;
  }
  InvertedPolynomial inv = invert_poly(f);
  RelValue m = rel_mult(inv.inverted, fam, exec);
  Rat two_d = 2 * inv.degree;
  RelValue r;
  r.value = ExtRat(two_d) - m.value;
  r.certificate = m.certificate;
  for (const auto& b : m.per_branch) {
    const Rat& n = b.denominator.value();
    r.per_branch.push_back({b.name, ExtRat(Rat(two_d * n)) - b.numerator, b.denominator,
                            ExtRat(two_d) - b.ratio, b.attains});
  }
  return r;
}

InvertedArc::InvertedArc(Branch b) : branch_(std::move(b)) {
  if (branch_.coordinates.empty() || branch_.coordinates.front().anchor() != Anchor::Origin)
    throw DomainError("only arcs at the origin can be pushed to infinity");
  norm_ = norm_order(branch_).value.value();
}

ExtRat InvertedArc::degree_of(const Polynomial& f) const {
  if (f.is_zero()) return ExtRat::minus_inf();
  InvertedPolynomial inv = invert_poly(f);
  ExtRat ord = generic_ord(compose(inv.inverted, branch_.coordinates)).value;
  return ExtRat(Rat(2 * inv.degree * norm_)) - ord;
}

ExtRat InvertedArc::ratio(const Polynomial& f) const { return degree_of(f).divided_by(norm_); }

InvertedArc push_arc_to_infinity(const Branch& b) { return InvertedArc(b); }

}  // namespace tcurves
