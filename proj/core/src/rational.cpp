/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/rational.hpp"

#include "bext/errors.hpp"

#include <ostream>

namespace bext {

namespace {

Integer parse_integer(const std::string& s) {
  if (s.empty()) throw SchemaError("empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw SchemaError("malformed integer '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') throw SchemaError("malformed integer '" + s + "'");
  Integer v;
  if (v.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw SchemaError("malformed integer '" + s + "'");
  return v;
}

// floor(a / b) for b > 0.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer shifted(const Integer& v, long e) {
  Integer r;
  if (e >= 0)
    mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpz_fdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

}  // namespace

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw SchemaError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

Rational Rational::pow2(long e) {
  Integer one = 1;
  if (e >= 0) return Rational(shifted(one, e));
  return Rational(one, shifted(one, -e));
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return Rational(den(), num());
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

Integer Rational::floor() const { return floor_div(num(), den()); }
Integer Rational::ceil() const { return ceil_div(num(), den()); }

long Rational::ilog2() const {
  if (is_zero()) throw DomainError("log2 of zero");
  const Integer n = ::abs(num());
  const Integer d = den();
  long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
  // 2^e <= n/d < 2^(e+2) at this point; fix up.
  const Rational a = abs();
  while (pow2(e) > a) --e;
  while (pow2(e + 1) <= a) ++e;
  return e;
}

std::string Rational::str() const { return q_.get_str(10); }

std::string Rational::decimal(int digits, bool up) const {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const Integer scaled_num = num() * scale;
  const Integer v = up ? ceil_div(scaled_num, den()) : floor_div(scaled_num, den());
  const bool neg = v < 0;
  std::string s = Integer(::abs(v)).get_str(10);
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return neg ? "-" + s : s;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational round_down(const Rational& q, long bits) {
  if (q.is_zero()) return q;
  const long e = q.ilog2();
  return floor_to_grid(q, bits - e);
}

Rational round_up(const Rational& q, long bits) {
  if (q.is_zero()) return q;
  const long e = q.ilog2();
  return ceil_to_grid(q, bits - e);
}

Rational floor_to_grid(const Rational& q, long frac_bits) {
  if (frac_bits >= 0) {
    const Integer p = floor_div(shifted(q.num(), frac_bits), q.den());
    return Rational(p, shifted(Integer(1), frac_bits));
  }
  const Integer p = floor_div(q.num(), shifted(q.den(), -frac_bits));
  return Rational(shifted(p, -frac_bits));
}

Rational ceil_to_grid(const Rational& q, long frac_bits) { return -floor_to_grid(-q, frac_bits); }

Rational sqrt_lower(const Rational& q, long frac_bits) {
  if (q.sign() < 0) throw DomainError("sqrt of negative rational");
  // floor(sqrt(q * 4^b)) / 2^b, with sqrt(n/d) = sqrt(n*d)/d.
  const Integer scaled = shifted(q.num() * q.den(), 2 * frac_bits);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  // s = floor(sqrt(n d 4^b)); floor(s / d) / 2^b is still a lower bound.
  Rational r(floor_div(s, q.den()), shifted(Integer(1), frac_bits));
  Rational step = Rational::pow2(-frac_bits);
  while ((r + step) * (r + step) <= q) r += step;
  return r;
}

Rational sqrt_upper(const Rational& q, long frac_bits) {
  Rational r = sqrt_lower(q, frac_bits);
  if (r * r < q) r += Rational::pow2(-frac_bits);
  return r;
}

bool bounded_by(const Rational& q, const Integer& m) {
  return abs(q.num()) <= m && q.den() <= m;
}

}  // namespace bext
