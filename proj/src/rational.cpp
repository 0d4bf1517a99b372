#include "tcurves/rational.hpp"

#include <cctype>

#include "tcurves/errors.hpp"

namespace tcurves {

std::string to_string(const Rat& r) { return r.get_str(); }

Rat parse_rat(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw InputError("empty rational literal");
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  bool seen_digit = false, seen_slash = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      seen_digit = true;
    } else if (s[i] == '/' && seen_digit && !seen_slash) {
      seen_slash = true;
      seen_digit = false;
    } else {
      throw InputError("malformed rational literal '" + s + "'");
    }
  }
  if (!seen_digit) throw InputError("malformed rational literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rat r;
  if (r.set_str(s, 10) != 0) throw InputError("malformed rational literal '" + s + "'");
  if (r.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

Rat rat_from_int(std::int64_t v) {
  Int z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
  return Rat(z);
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int ceil(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Int floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

const Rat& ExtRat::value() const {
  if (kind_ != Kind::Finite) throw DomainError("value of an infinite extended rational");
  return value_;
}

ExtRat ExtRat::operator-() const {
  switch (kind_) {
    case Kind::PlusInf: return minus_inf();
    case Kind::MinusInf: return plus_inf();
    default: return ExtRat(Rat(-value_));
  }
}

ExtRat operator+(const ExtRat& a, const ExtRat& b) {
  using K = ExtRat::Kind;
  if (a.kind_ == K::Finite && b.kind_ == K::Finite) return ExtRat(Rat(a.value_ + b.value_));
  if ((a.kind_ == K::PlusInf && b.kind_ == K::MinusInf) ||
      (a.kind_ == K::MinusInf && b.kind_ == K::PlusInf))
    throw DomainError("+inf + -inf is undefined");
  return a.kind_ != K::Finite ? a : b;
}

ExtRat ExtRat::divided_by(const Rat& positive) const {
  if (sgn(positive) <= 0) throw DomainError("division of an extended rational by a non-positive value");
  if (kind_ != Kind::Finite) return *this;
  return ExtRat(Rat(value_ / positive));
}

ExtRat ExtRat::times(const Rat& positive) const {
  if (sgn(positive) <= 0) throw DomainError("scaling of an extended rational by a non-positive value");
  if (kind_ != Kind::Finite) return *this;
  return ExtRat(Rat(value_ * positive));
}

bool operator==(const ExtRat& a, const ExtRat& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtRat::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (a.kind_ != ExtRat::Kind::Finite) return std::strong_ordering::equal;
  int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string ExtRat::to_string() const {
  switch (kind_) {
    case Kind::PlusInf: return "inf";
    case Kind::MinusInf: return "-inf";
    default: return tcurves::to_string(value_);
  }
}

ExtRat ExtRat::parse(std::string_view text) {
  if (text == "inf" || text == "+inf") return plus_inf();
  if (text == "-inf") return minus_inf();
  return ExtRat(parse_rat(text));
}

}  // namespace tcurves
