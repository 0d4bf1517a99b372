#include "tcurves/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tcurves/errors.hpp"

namespace tcurves {

unsigned total_degree(const Exponent& e) {
  unsigned s = 0;
  for (auto v : e) s += v;
  return s;
}

bool PrintOrder::operator()(const Exponent& a, const Exponent& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

VarList::VarList(std::vector<std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j]) throw InputError("duplicate variable name '" + names[i] + "'");
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

long VarList::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return static_cast<long>(i);
  return -1;
}

Polynomial Polynomial::constant(const VarList& vars, const Rat& c) {
  Polynomial p(vars);
  p.add_term(Exponent(vars.size(), 0), c);
  return p;
}

Polynomial Polynomial::variable(const VarList& vars, std::size_t index) {
  Exponent e(vars.size(), 0);
  e.at(index) = 1;
  return monomial(vars, std::move(e), Rat(1));
}

Polynomial Polynomial::monomial(const VarList& vars, Exponent e, const Rat& c) {
  if (e.size() != vars.size()) throw InputError("exponent length does not match variable count");
  Polynomial p(vars);
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rat Polynomial::constant_term() const { return coefficient(Exponent(nvars(), 0)); }

Rat Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

const std::pair<const Exponent, Rat>& Polynomial::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return *terms_.begin();
}

ExtRat Polynomial::degree() const {
  if (terms_.empty()) return ExtRat::minus_inf();
  return ExtRat(static_cast<long>(total_degree(terms_.begin()->first)));
}

ExtRat Polynomial::order_at_origin() const {
  if (terms_.empty()) return ExtRat::plus_inf();
  return ExtRat(static_cast<long>(total_degree(terms_.rbegin()->first)));
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

std::map<unsigned, Polynomial> Polynomial::homogeneous_parts() const {
  std::map<unsigned, Polynomial> parts;
  for (const auto& [e, c] : terms_) {
    auto [it, inserted] = parts.try_emplace(total_degree(e), vars_);
    it->second.terms_.emplace(e, c);
  }
  return parts;
}

Rat Polynomial::evaluate(std::span<const Rat> point) const {
  if (point.size() != nvars()) throw InputError("evaluation point has wrong dimension");
  Rat acc = 0;
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Rat pw;
      mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), e[i]);
      t *= pw;
    }
    acc += t;
  }
  return acc;
}

void Polynomial::add_term(const Exponent& e, const Rat& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_vars(const Polynomial& o, const char* op) const {
  if (!(vars_ == o.vars_))
    throw InputError(std::string("variable-list mismatch in polynomial ") + op);
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_vars(o, "addition");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_vars(o, "subtraction");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_vars(b, "multiplication");
  Polynomial r(a.vars_);
  Exponent e(a.nvars());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::scaled(const Rat& c) const {
  Polynomial r(vars_);
  if (sgn(c) == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, v * c);
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(vars_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::embed(const VarList& target) const {
  if (vars_ == target) return *this;
  std::vector<std::size_t> map(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) {
    long j = target.index_of(vars_[i]);
    if (j < 0) {
      bool used = std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[i] != 0; });
      if (used) throw InputError("variable '" + vars_[i] + "' is not available in the target variable list");
      map[i] = target.size();
      continue;
    }
    map[i] = static_cast<std::size_t>(j);
  }
  Polynomial r(target);
  for (const auto& [e, c] : terms_) {
    Exponent ne(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) ne[map[i]] = e[i];
    r.add_term(ne, c);
  }
  return r;
}

Polynomial Polynomial::derivative(std::size_t i) const {
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent ne = e;
    --ne[i];
    r.add_term(ne, c * e[i]);
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool neg = sgn(c) < 0;
    Rat mag = abs(c);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool is_const = total_degree(e) == 0;
    bool wrote = false;
    if (is_const || mag != 1) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarList& vars) : s_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char ch) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == ch;
  }
  bool at_factor_start() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char ch = s_[pos_];
    return ch == '(' || std::isdigit(static_cast<unsigned char>(ch)) ||
           std::isalpha(static_cast<unsigned char>(ch)) || ch == '_';
  }

  Polynomial expr() {
    skip_ws();
    Polynomial acc(vars_);
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      if (sign < 0) acc -= t;
      else acc += t;
      first = false;
      skip_ws();
      if (!(peek('+') || peek('-'))) break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial t = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        t = t * factor();
      } else if (at_factor_start()) {
        t = t * factor();
      } else {
        break;
      }
    }
    return t;
  }

  unsigned natural() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 6) fail("exponent too large");
    return static_cast<unsigned>(std::stoul(digits));
  }

  Polynomial factor() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    Polynomial base(vars_);
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      base = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Int num(std::string(s_.substr(start, pos_ - start)));
      Int den = 1;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (ds == pos_) fail("expected a positive integer denominator");
        den = Int(std::string(s_.substr(ds, pos_ - ds)));
        if (den == 0) fail("zero denominator");
      }
      Rat r(num, den);
      r.canonicalize();
      base = Polynomial::constant(vars_, r);
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      long idx = vars_.index_of(name);
      if (idx < 0) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      base = Polynomial::variable(vars_, static_cast<std::size_t>(idx));
    } else {
      fail("unexpected character '" + std::string(1, ch) + "'");
    }
    if (peek('^')) {
      ++pos_;
      base = base.pow(natural());
    }
    return base;
  }

  std::string_view s_;
  const VarList& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VarList& vars) {
  return Parser(text, vars).parse();
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Exponent> monomials_up_to(std::size_t nvars, unsigned d) {
  std::vector<Exponent> out;
  for (unsigned deg = 0; deg <= d; ++deg) {
    // Exponents of total degree deg in decreasing lex order.
    std::vector<Exponent> level;
    Exponent e(nvars, 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
      if (nvars == 0) {
        if (remaining == 0) level.push_back(e);
        return;
      }
      if (i + 1 == nvars) {
        e[i] = remaining;
        level.push_back(e);
        return;
      }
      for (unsigned v = remaining + 1; v-- > 0;) {
        e[i] = v;
        self(self, i + 1, remaining - v);
      }
      e[i] = 0;
    };
    rec(rec, 0, deg);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<Rat> coefficient_vector(const Polynomial& p, unsigned d) {
  if (!p.is_zero() && p.degree() > ExtRat(static_cast<long>(d)))
    throw DomainError("polynomial degree exceeds the bound " + std::to_string(d));
  auto mons = monomials_up_to(p.nvars(), d);
  std::vector<Rat> v;
  v.reserve(mons.size());
  for (const auto& m : mons) v.push_back(p.coefficient(m));
  return v;
}

Polynomial from_coefficient_vector(const VarList& vars, unsigned d, std::span<const Rat> coeffs) {
  auto mons = monomials_up_to(vars.size(), d);
  if (mons.size() != coeffs.size()) throw InputError("coefficient vector has wrong length");
  Polynomial p(vars);
  for (std::size_t i = 0; i < mons.size(); ++i) p.add_term(mons[i], coeffs[i]);
  return p;
}

}  // namespace tcurves
