#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tcurves {

using Int = mpz_class;
using Rat = mpq_class;  // mpq_class keeps itself canonical: gcd 1, den > 0

std::string to_string(const Rat& r);
Rat parse_rat(std::string_view text);

Rat rat_from_int(std::int64_t v);
Int lcm(const Int& a, const Int& b);
Int ceil(const Rat& r);
Int floor(const Rat& r);

// Rationals extended by +inf and -inf.  Follows deg 0 = -inf = -mult 0.
class ExtRat {
 public:
  enum class Kind : std::uint8_t { MinusInf, Finite, PlusInf };

  ExtRat() : kind_(Kind::Finite), value_(0) {}
  ExtRat(const Rat& v) : kind_(Kind::Finite), value_(v) {}  // NOLINT
  ExtRat(long v) : kind_(Kind::Finite), value_(v) {}        // NOLINT
  ExtRat(int v) : kind_(Kind::Finite), value_(v) {}         // NOLINT

  static ExtRat plus_inf() { return ExtRat(Kind::PlusInf); }
  static ExtRat minus_inf() { return ExtRat(Kind::MinusInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_plus_inf() const { return kind_ == Kind::PlusInf; }
  bool is_minus_inf() const { return kind_ == Kind::MinusInf; }
  // Throws DomainError when infinite.
  const Rat& value() const;

  ExtRat operator-() const;
  friend ExtRat operator+(const ExtRat& a, const ExtRat& b);
  friend ExtRat operator-(const ExtRat& a, const ExtRat& b) { return a + (-b); }
  // Division by a strictly positive finite rational.
  ExtRat divided_by(const Rat& positive) const;
  ExtRat times(const Rat& positive) const;

  friend bool operator==(const ExtRat& a, const ExtRat& b);
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

  std::string to_string() const;
  static ExtRat parse(std::string_view text);

 private:
  explicit ExtRat(Kind k) : kind_(k), value_(0) {}
  Kind kind_;
  Rat value_;
};

inline const ExtRat& min(const ExtRat& a, const ExtRat& b) { return (b < a) ? b : a; }
inline const ExtRat& max(const ExtRat& a, const ExtRat& b) { return (a < b) ? b : a; }

}  // namespace tcurves
