/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <type_traits>

namespace bext {

using Integer = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.  There is deliberately no conversion from or to binary
/// floating point: every predicate in the library is decided on exact values.
class Rational {
public:
  Rational() = default;

  template <typename I>
    requires std::is_integral_v<I>
  Rational(I v) : q_(Integer(static_cast<long>(v))) {}

  Rational(const Integer& v) : q_(v) {}
  Rational(const Integer& num, const Integer& den);

  template <typename F>
    requires std::is_floating_point_v<F>
  Rational(F) = delete;

  /// Parses "n", "-n/d" or "n/d".  Throws SchemaError on malformed input or d = 0.
  static Rational parse(const std::string& text);

  /// 2^e for any signed exponent.
  static Rational pow2(long e);

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }

  Rational abs() const;
  Rational inverse() const;

  /// floor / ceil as integers.
  Integer floor() const;
  Integer ceil() const;

  /// floor(log2 |q|) for q != 0.
  long ilog2() const;

  std::string str() const;
  /// Decimal rendering with `digits` digits after the point, rounded toward
  /// -inf (`up == false`) or +inf (`up == true`).
  std::string decimal(int digits, bool up) const;

  const mpq_class& raw() const { return q_; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q);

private:
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  mpq_class q_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Largest dyadic m/2^e <= q with `bits` significant bits (relative rounding).
Rational round_down(const Rational& q, long bits);
/// Smallest dyadic >= q with `bits` significant bits.
Rational round_up(const Rational& q, long bits);

/// Largest multiple of 2^-frac_bits that is <= q (absolute rounding).
Rational floor_to_grid(const Rational& q, long frac_bits);
Rational ceil_to_grid(const Rational& q, long frac_bits);

/// Smallest p/2^frac_bits with (p/2^frac_bits)^2 >= q (q >= 0).
Rational sqrt_upper(const Rational& q, long frac_bits);
/// Largest p/2^frac_bits with (p/2^frac_bits)^2 <= q (q >= 0).
Rational sqrt_lower(const Rational& q, long frac_bits);

/// True iff q = n/d with n, d in {-m, ..., m} (decided on the reduced form).
bool bounded_by(const Rational& q, const Integer& m);

}  // namespace bext
