#pragma once

#include <optional>
#include <span>
#include <string>

#include "tcurves/polynomial.hpp"

namespace tcurves {

// Rational function num/den in the parameter variables.
//
// Normal form: den is a primitive integer polynomial whose leading term (in
// print order) is positive; monomial factors common to num and den are
// cancelled, and so is any exact polynomial quotient.  With a single
// parameter the gcd is cancelled completely.  Zero is 0/1.
class ParamCoeff {
 public:
  ParamCoeff() = default;
  explicit ParamCoeff(const VarList& params) : num_(params), den_(Polynomial::constant(params, 1)) {}
  ParamCoeff(Polynomial num, Polynomial den);
  explicit ParamCoeff(Polynomial num);

  static ParamCoeff constant(const VarList& params, const Rat& c);

  const VarList& params() const { return num_.variables(); }
  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  // Constant value.  Precondition: is_constant().
  Rat constant_value() const;

  // Throws DomainError naming the denominator when it vanishes at the point.
  Rat evaluate(std::span<const Rat> point) const;

  ParamCoeff operator-() const;
  friend ParamCoeff operator+(const ParamCoeff& a, const ParamCoeff& b);
  friend ParamCoeff operator-(const ParamCoeff& a, const ParamCoeff& b) { return a + (-b); }
  friend ParamCoeff operator*(const ParamCoeff& a, const ParamCoeff& b);
  friend ParamCoeff operator/(const ParamCoeff& a, const ParamCoeff& b);
  ParamCoeff scaled(const Rat& c) const;
  ParamCoeff pow(unsigned k) const;

  friend bool operator==(const ParamCoeff& a, const ParamCoeff& b);

  std::string to_string() const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

// q with a == q*b, if b divides a exactly.
std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);
// gcd of two polynomials that only involve variable `var`; monic.
Polynomial univariate_gcd(const Polynomial& a, const Polynomial& b, std::size_t var);
// Scales p to a primitive integer polynomial with a positive leading term;
// returns the factor used.
Rat make_primitive(Polynomial& p);

}  // namespace tcurves
