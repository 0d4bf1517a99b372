#include "tcurves/puiseux.hpp"

#include <numeric>

#include "tcurves/errors.hpp"

namespace tcurves {

std::string to_string(Anchor a) { return a == Anchor::Origin ? "origin" : "infinity"; }

Anchor parse_anchor(std::string_view text) {
  if (text == "origin") return Anchor::Origin;
  if (text == "infinity") return Anchor::Infinity;
  throw InputError("anchor must be 'origin' or 'infinity', got '" + std::string(text) + "'");
}

ParamPuiseux::ParamPuiseux(VarList params, unsigned ramification, Anchor anchor)
    : params_(std::move(params)), q_(ramification), anchor_(anchor) {
  if (q_ == 0) throw InputError("ramification must be positive");
}

ParamPuiseux ParamPuiseux::constant(const VarList& params, Anchor anchor, const ParamCoeff& c) {
  return monomial(params, 1, anchor, 0, c);
}

ParamPuiseux ParamPuiseux::monomial(const VarList& params, unsigned ramification, Anchor anchor,
                                    std::int64_t key, const ParamCoeff& c) {
  ParamPuiseux s(params, ramification, anchor);
  s.add_term(key, c);
  return s;
}

void ParamPuiseux::add_term(std::int64_t key, const ParamCoeff& c) {
  if (c.is_zero()) return;
  if (!(c.params() == params_)) throw InputError("coefficient parameters differ from series parameters");
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

ParamCoeff ParamPuiseux::coefficient(std::int64_t key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? ParamCoeff(params_) : it->second;
}

ParamPuiseux ParamPuiseux::lifted(unsigned new_ramification) const {
  if (new_ramification == q_) return *this;
  if (new_ramification % q_ != 0) throw DomainError("ramification can only be lifted to a multiple");
  std::int64_t f = new_ramification / q_;
  ParamPuiseux r(params_, new_ramification, anchor_);
  for (const auto& [k, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), k * f, c);
  return r;
}

ExtRat ParamPuiseux::min_exponent() const {
  if (is_zero()) return ExtRat::plus_inf();
  Rat r(rat_from_int(terms_.begin()->first) / q_);
  return ExtRat(r);
}

ExtRat ParamPuiseux::max_exponent() const {
  if (is_zero()) return ExtRat::minus_inf();
  Rat r(rat_from_int(terms_.rbegin()->first) / q_);
  return ExtRat(r);
}

void ParamPuiseux::require_compatible(const ParamPuiseux& o) const {
  if (anchor_ != o.anchor_) throw InputError("series anchored at different points");
  if (!(params_ == o.params_)) throw InputError("series over different parameter lists");
}

ParamPuiseux ParamPuiseux::operator-() const {
  ParamPuiseux r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

ParamPuiseux operator+(const ParamPuiseux& a, const ParamPuiseux& b) {
  a.require_compatible(b);
  unsigned q = std::lcm(a.q_, b.q_);
  ParamPuiseux r = a.lifted(q);
  ParamPuiseux bl = b.lifted(q);
  for (const auto& [k, c] : bl.terms_) r.add_term(k, c);
  return r;
}

ParamPuiseux operator*(const ParamPuiseux& a, const ParamPuiseux& b) {
  a.require_compatible(b);
  unsigned q = std::lcm(a.q_, b.q_);
  ParamPuiseux al = a.lifted(q), bl = b.lifted(q);
  ParamPuiseux r(a.params_, q, a.anchor_);
  for (const auto& [ka, ca] : al.terms_)
    for (const auto& [kb, cb] : bl.terms_) r.add_term(ka + kb, ca * cb);
  return r;
}

ParamPuiseux ParamPuiseux::scaled(const ParamCoeff& c) const {
  ParamPuiseux r(params_, q_, anchor_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), k, v * c);
  return r;
}

ParamPuiseux ParamPuiseux::pow(unsigned k) const {
  ParamPuiseux result = constant(params_, anchor_, ParamCoeff::constant(params_, 1));
  ParamPuiseux base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

ParamPuiseux ParamPuiseux::truncated(const Rat& bound) const {
  ParamPuiseux r(params_, q_, anchor_);
  for (const auto& [k, c] : terms_) {
    Rat e = rat_from_int(k) / q_;
    bool keep = anchor_ == Anchor::Infinity ? e >= bound : e <= bound;
    if (keep) r.terms_.emplace_hint(r.terms_.end(), k, c);
  }
  return r;
}

ParamPuiseux ParamPuiseux::specialize(std::span<const Rat> point) const {
  if (point.size() != params_.size())
    throw InputError("parameter point has " + std::to_string(point.size()) + " entries, expected " +
                     std::to_string(params_.size()));
  VarList none;
  ParamPuiseux r(none, q_, anchor_);
  for (const auto& [k, c] : terms_) {
    Rat v = c.evaluate(point);
    if (sgn(v) != 0) r.terms_.emplace_hint(r.terms_.end(), k, ParamCoeff::constant(none, v));
  }
  return r;
}

bool operator==(const ParamPuiseux& a, const ParamPuiseux& b) {
  if (a.anchor_ != b.anchor_ || !(a.params_ == b.params_)) return false;
  unsigned q = std::lcm(a.q_, b.q_);
  ParamPuiseux al = a.lifted(q), bl = b.lifted(q);
  if (al.terms_.size() != bl.terms_.size()) return false;
  auto it = bl.terms_.begin();
  for (const auto& [k, c] : al.terms_) {
    if (k != it->first || !(c == it->second)) return false;
    ++it;
  }
  return true;
}

std::string ParamPuiseux::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  // Print the dominant term first.
  auto emit = [&](std::int64_t k, const ParamCoeff& c) {
    std::string cs = c.to_string();
    if (!out.empty()) out += " + ";
    Rat e = rat_from_int(k) / q_;
    if (sgn(e) == 0) {
      out += cs;
      return;
    }
    out += "(" + cs + ")*" + var;
    if (e != 1) out += "^(" + tcurves::to_string(e) + ")";
  };
  if (anchor_ == Anchor::Infinity)
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) emit(it->first, it->second);
  else
    for (const auto& [k, c] : terms_) emit(k, c);
  return out;
}

GenericValue generic_ord(const ParamPuiseux& s) {
  if (s.anchor() != Anchor::Origin) throw DomainError("order is taken at the origin");
  if (s.is_zero()) return {ExtRat::plus_inf(), Polynomial::constant(s.params(), 1)};
  return {s.min_exponent(), s.terms().begin()->second.num()};
}

GenericValue generic_deg(const ParamPuiseux& s) {
  if (s.anchor() != Anchor::Infinity) throw DomainError("degree is taken at infinity");
  if (s.is_zero()) return {ExtRat::minus_inf(), Polynomial::constant(s.params(), 1)};
  return {s.max_exponent(), s.terms().rbegin()->second.num()};
}

ParamPuiseux compose(const Polynomial& f, std::span<const ParamPuiseux> arc) {
  if (arc.size() != f.nvars())
    throw InputError("arc has " + std::to_string(arc.size()) + " coordinates, polynomial has " +
                     std::to_string(f.nvars()) + " variables");
  if (arc.empty()) throw InputError("empty arc");
  const VarList& params = arc[0].params();
  Anchor anchor = arc[0].anchor();
  unsigned q = 1;
  for (const auto& c : arc) {
    if (c.anchor() != anchor || !(c.params() == params))
      throw InputError("arc coordinates disagree on anchor or parameters");
    q = std::lcm(q, c.ramification());
  }
  ParamCoeff one = ParamCoeff::constant(params, 1);
  // powers[i][k] = arc[i]^k, built on demand.
  std::vector<std::vector<ParamPuiseux>> powers(arc.size());
  for (std::size_t i = 0; i < arc.size(); ++i) {
    powers[i].push_back(ParamPuiseux::constant(params, anchor, one).lifted(q));
    if (f.degree_in(i) > 0) powers[i].push_back(arc[i].lifted(q));
    while (powers[i].size() <= f.degree_in(i)) powers[i].push_back(powers[i].back() * powers[i][1]);
  }
  ParamPuiseux result(params, q, anchor);
  for (const auto& [e, c] : f.terms()) {
    ParamPuiseux term = powers[0][e[0]];
    for (std::size_t i = 1; i < e.size(); ++i)
      if (e[i] > 0) term = term * powers[i][e[i]];
    ParamCoeff coeff = ParamCoeff::constant(params, c);
    for (const auto& [k, v] : term.terms()) result.add_term(k, v * coeff);
  }
  return result;
}

}  // namespace tcurves
