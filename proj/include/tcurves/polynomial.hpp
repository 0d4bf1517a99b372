#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcurves/rational.hpp"

namespace tcurves {

using Exponent = std::vector<std::uint32_t>;

unsigned total_degree(const Exponent& e);

// Canonical print order: higher total degree first, then lexicographically
// larger exponent first (graded lex with the declared variable order).
struct PrintOrder {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

// Ordered, immutable list of variable names.  Copies share storage.
class VarList {
 public:
  VarList() : names_(std::make_shared<const std::vector<std::string>>()) {}
  VarList(std::vector<std::string> names);  // NOLINT
  VarList(std::initializer_list<std::string> names)
      : VarList(std::vector<std::string>(names)) {}

  const std::vector<std::string>& names() const { return *names_; }
  std::size_t size() const { return names_->size(); }
  bool empty() const { return names_->empty(); }
  const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
  // Index of a name, or -1.
  long index_of(std::string_view name) const;

  friend bool operator==(const VarList& a, const VarList& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

// Exact sparse multivariate polynomial over Q.  No zero coefficient is ever
// stored; the zero polynomial has an empty term map.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rat, PrintOrder>;

  Polynomial() = default;
  explicit Polynomial(VarList vars) : vars_(std::move(vars)) {}

  static Polynomial constant(const VarList& vars, const Rat& c);
  static Polynomial variable(const VarList& vars, std::size_t index);
  static Polynomial monomial(const VarList& vars, Exponent e, const Rat& c);

  const VarList& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Coefficient of the constant term (0 when absent).
  Rat constant_term() const;
  Rat coefficient(const Exponent& e) const;
  // First term in print order.  Precondition: nonzero.
  const std::pair<const Exponent, Rat>& leading_term() const;

  ExtRat degree() const;
  ExtRat order_at_origin() const;
  unsigned degree_in(std::size_t var) const;
  std::map<unsigned, Polynomial> homogeneous_parts() const;

  Rat evaluate(std::span<const Rat> point) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rat& c) const;
  Polynomial pow(unsigned k) const;

  // Adds c*x^e in place.
  void add_term(const Exponent& e, const Rat& c);

  // Re-expresses the polynomial over a list that contains all of its
  // variables (matched by name).  Throws InputError on a missing name.
  Polynomial embed(const VarList& target) const;

  // Partial derivative with respect to variable i.
  Polynomial derivative(std::size_t i) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void require_same_vars(const Polynomial& o, const char* op) const;
  VarList vars_;
  TermMap terms_;
};

// Grammar: signed terms joined by + / -; term = [rational][*]factor(*factor)*;
// factor = var[^natural] | (polynomial)[^natural]; rational = int[/posint].
Polynomial parse_polynomial(std::string_view text, const VarList& vars);

std::uint64_t binomial(unsigned n, unsigned k);

// Monomials of total degree <= d in coefficient-vector order: ascending total
// degree, print order inside each degree.  For (x,y), d=2:
// 1, x, y, x^2, x*y, y^2.
std::vector<Exponent> monomials_up_to(std::size_t nvars, unsigned d);
std::vector<Rat> coefficient_vector(const Polynomial& p, unsigned d);
Polynomial from_coefficient_vector(const VarList& vars, unsigned d, std::span<const Rat> coeffs);

}  // namespace tcurves
