#include "tcurves/param_coeff.hpp"

#include <algorithm>

#include "tcurves/errors.hpp"

namespace tcurves {

namespace {

// Dense coefficients (index = power) of a polynomial in one variable.
std::vector<Rat> to_dense(const Polynomial& p, std::size_t var) {
  std::vector<Rat> c(p.is_zero() ? 0 : p.degree_in(var) + 1);
  for (const auto& [e, v] : p.terms()) c[e[var]] += v;
  return c;
}

Polynomial from_dense(const VarList& vars, const std::vector<Rat>& c, std::size_t var) {
  Polynomial p(vars);
  for (std::size_t i = 0; i < c.size(); ++i) {
    Exponent e(vars.size(), 0);
    e[var] = static_cast<std::uint32_t>(i);
    p.add_term(e, c[i]);
  }
  return p;
}

void trim(std::vector<Rat>& c) {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

// Index of the only variable used by p and q, -1 if none, -2 if several.
long single_variable(const Polynomial& p, const Polynomial& q) {
  long var = -1;
  for (const Polynomial* poly : {&p, &q}) {
    for (const auto& [e, c] : poly->terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (var == -1) var = static_cast<long>(i);
        else if (var != static_cast<long>(i)) return -2;
      }
    }
  }
  return var;
}

}  // namespace

Polynomial univariate_gcd(const Polynomial& a, const Polynomial& b, std::size_t var) {
  std::vector<Rat> x = to_dense(a, var), y = to_dense(b, var);
  trim(x);
  trim(y);
  while (!y.empty()) {
    // x mod y
    while (x.size() >= y.size() && !x.empty()) {
      Rat f = x.back() / y.back();
      std::size_t shift = x.size() - y.size();
      for (std::size_t i = 0; i < y.size(); ++i) x[i + shift] -= f * y[i];
      x.pop_back();
      trim(x);
    }
    std::swap(x, y);
  }
  if (x.empty()) return Polynomial(a.variables());
  Rat lead = x.back();
  for (auto& v : x) v /= lead;
  return from_dense(a.variables(), x, var);
}

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  Polynomial q(a.variables()), r = a;
  const auto& [lb_e, lb_c] = b.leading_term();
  while (!r.is_zero()) {
    const auto [lr_e, lr_c] = r.leading_term();
    Exponent e(lr_e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (lr_e[i] < lb_e[i]) return std::nullopt;
      e[i] = lr_e[i] - lb_e[i];
    }
    Polynomial t = Polynomial::monomial(a.variables(), e, lr_c / lb_c);
    q += t;
    r -= t * b;
  }
  return q;
}

Rat make_primitive(Polynomial& p) {
  if (p.is_zero()) return Rat(1);
  Int den_lcm = 1, num_gcd = 0;
  for (const auto& [e, c] : p.terms()) {
    den_lcm = lcm(den_lcm, c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
  }
  Rat factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (sgn(p.leading_term().second) < 0) factor = -factor;
  if (factor != 1) p = p.scaled(factor);
  return factor;
}

ParamCoeff::ParamCoeff(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (!(num_.variables() == den_.variables()))
    throw InputError("numerator and denominator use different parameter lists");
  if (den_.is_zero()) throw DomainError("rational coefficient with zero denominator");
  normalize();
}

ParamCoeff::ParamCoeff(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.variables(), 1)) {}

ParamCoeff ParamCoeff::constant(const VarList& params, const Rat& c) {
  return ParamCoeff(Polynomial::constant(params, c));
}

void ParamCoeff::normalize() {
  const VarList& vars = num_.variables();
  if (num_.is_zero()) {
    den_ = Polynomial::constant(vars, 1);
    return;
  }
  if (den_.is_constant()) {
    num_ = num_.scaled(1 / den_.constant_term());
    den_ = Polynomial::constant(vars, 1);
    return;
  }
  // Common monomial factor.
  Exponent common(vars.size(), ~0u);
  for (const Polynomial* p : {&num_, &den_})
    for (const auto& [e, c] : p->terms())
      for (std::size_t i = 0; i < e.size(); ++i) common[i] = std::min(common[i], e[i]);
  if (std::any_of(common.begin(), common.end(), [](auto v) { return v > 0; })) {
    auto strip = [&](const Polynomial& p) {
      Polynomial r(vars);
      for (const auto& [e, c] : p.terms()) {
        Exponent ne = e;
        for (std::size_t i = 0; i < ne.size(); ++i) ne[i] -= common[i];
        r.add_term(ne, c);
      }
      return r;
    };
    num_ = strip(num_);
    den_ = strip(den_);
  }
  long var = single_variable(num_, den_);
  if (var >= 0) {
    Polynomial g = univariate_gcd(num_, den_, static_cast<std::size_t>(var));
    if (!g.is_constant()) {
      num_ = *exact_divide(num_, g);
      den_ = *exact_divide(den_, g);
    }
  } else if (var == -2) {
    if (auto q = exact_divide(num_, den_)) {
      num_ = std::move(*q);
      den_ = Polynomial::constant(vars, 1);
    } else if (!num_.is_constant()) {
      if (auto q2 = exact_divide(den_, num_)) {
        den_ = std::move(*q2);
        num_ = Polynomial::constant(vars, 1);
      }
    }
  }
  if (den_.is_constant()) {
    num_ = num_.scaled(1 / den_.constant_term());
    den_ = Polynomial::constant(vars, 1);
    return;
  }
  Rat f = make_primitive(den_);
  if (f != 1) num_ = num_.scaled(f);
}

Rat ParamCoeff::constant_value() const {
  if (!is_constant()) throw DomainError("coefficient is not constant: " + to_string());
  return num_.constant_term() / den_.constant_term();
}

Rat ParamCoeff::evaluate(std::span<const Rat> point) const {
  Rat d = den_.evaluate(point);
  if (sgn(d) == 0) throw DomainError("denominator " + den_.to_string() + " vanishes at the parameter point");
  return num_.evaluate(point) / d;
}

ParamCoeff ParamCoeff::operator-() const {
  ParamCoeff r = *this;
  r.num_ = -r.num_;
  return r;
}

ParamCoeff operator+(const ParamCoeff& a, const ParamCoeff& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return ParamCoeff(a.num_ + b.num_, a.den_);
  if (a.den_.is_constant()) return ParamCoeff(a.num_ * b.den_ + b.num_, b.den_);
  if (b.den_.is_constant()) return ParamCoeff(a.num_ + b.num_ * a.den_, a.den_);
  return ParamCoeff(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ParamCoeff operator*(const ParamCoeff& a, const ParamCoeff& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  if (a.den_.is_constant() && b.den_.is_constant()) {
    ParamCoeff r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_;
    return r;
  }
  return ParamCoeff(a.num_ * b.num_, a.den_ * b.den_);
}

ParamCoeff operator/(const ParamCoeff& a, const ParamCoeff& b) {
  if (b.is_zero()) throw DomainError("division by a zero coefficient");
  return ParamCoeff(a.num_ * b.den_, a.den_ * b.num_);
}

ParamCoeff ParamCoeff::scaled(const Rat& c) const {
  if (sgn(c) == 0) return ParamCoeff(params());
  ParamCoeff r = *this;
  r.num_ = r.num_.scaled(c);
  return r;
}

ParamCoeff ParamCoeff::pow(unsigned k) const {
  ParamCoeff result = constant(params(), 1);
  ParamCoeff base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

bool operator==(const ParamCoeff& a, const ParamCoeff& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string ParamCoeff::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace tcurves
