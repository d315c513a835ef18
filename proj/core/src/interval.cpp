/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/interval.hpp"

#include "bext/errors.hpp"

#include <algorithm>
#include <array>
#include <mutex>

namespace bext {

RationalInterval::RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (hi < lo) throw PreconditionError("interval with lo > hi");
}

// ---------------------------------------------------------------------------
// fixed-point series for the two master constants

namespace {

Integer pow2_int(long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return r;
}

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// atan(1/x) * 2^p, truncated.  Returns value v and error bound e (in ulps):
// true value lies in [v - e, v + e].
std::pair<Integer, Integer> atan_inv_fixed(unsigned long x, long p) {
  const Integer x2 = Integer(x) * x;
  Integer term = fdiv(pow2_int(p), Integer(x));
  Integer sum = 0;
  long n = 0;
  for (unsigned long j = 0; term != 0; ++j, ++n) {
    const Integer t = fdiv(term, Integer(2 * j + 1));
    if (j % 2 == 0) sum += t; else sum -= t;
    term = fdiv(term, x2);
  }
  return {sum, Integer(2 * n + 4)};
}

// atanh(1/x) * 2^p, truncated (all terms positive).
std::pair<Integer, Integer> atanh_inv_fixed(unsigned long x, long p) {
  const Integer x2 = Integer(x) * x;
  Integer term = fdiv(pow2_int(p), Integer(x));
  Integer sum = 0;
  long n = 0;
  for (unsigned long j = 0; term != 0; ++j, ++n) {
    sum += fdiv(term, Integer(2 * j + 1));
    term = fdiv(term, x2);
  }
  return {sum, Integer(2 * n + 4)};
}

struct Master {
  long precision = 0;
  RationalInterval value;
};

std::mutex g_master_mutex;
Master g_pi;
Master g_ln2;

RationalInterval compute_pi(long p) {
  // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
  const auto [a, ea] = atan_inv_fixed(5, p);
  const auto [b, eb] = atan_inv_fixed(239, p);
  const Integer v = 16 * a - 4 * b;
  const Integer e = 16 * ea + 4 * eb;
  const Integer den = pow2_int(p);
  return {Rational(v - e, den), Rational(v + e, den)};
}

RationalInterval compute_ln2(long p) {
  const auto [a, ea] = atanh_inv_fixed(3, p);
  const Integer den = pow2_int(p);
  return {Rational(2 * (a - ea), den), Rational(2 * (a + ea), den)};
}

// Master enclosures only ever shrink, so grid roundings taken from them are nested.
const RationalInterval& master(Master& m, long need, RationalInterval (*compute)(long)) {
  if (m.precision < need) {
    const long p = std::max(need, 2 * m.precision);
    RationalInterval fresh = compute(p + 16);
    if (m.precision > 0) {
      fresh.lo = max(fresh.lo, m.value.lo);
      fresh.hi = min(fresh.hi, m.value.hi);
    }
    m.value = fresh;
    m.precision = p;
  }
  return m.value;
}

RationalInterval master_pi(long need) {
  std::lock_guard lock(g_master_mutex);
  return master(g_pi, std::max(need, 256L), compute_pi);
}

RationalInterval master_ln2(long need) {
  std::lock_guard lock(g_master_mutex);
  return master(g_ln2, std::max(need, 256L), compute_ln2);
}

}  // namespace

RationalInterval pi_enclosure(long k) {
  const long grid = std::max(k, 0L) + 8;
  const RationalInterval m = master_pi(grid + 64);
  return {floor_to_grid(m.lo, grid), ceil_to_grid(m.hi, grid)};
}

RationalInterval ln_enclosure(const Rational& q, long k) {
  if (q.sign() <= 0) throw DomainError("ln of non-positive rational");
  if (q == 1) return {Rational(0), Rational(0)};
  // q = 2^e * y with 1 <= y < 2
  const long e = q.ilog2();
  const Rational y = q / Rational::pow2(e);
  const long ebits = e == 0 ? 0 : Rational(e).abs().ilog2() + 1;
  const long p = std::max(k, 0L) + ebits + 24;

  RationalInterval ln_y{Rational(0), Rational(0)};
  if (y != 1) {
    // ln y = 2 atanh(z), z = (y-1)/(y+1) in (0, 1/3); atanh is increasing, so
    // evaluating at grid roundings of z below and above keeps the operands small.
    const Rational z = (y - 1) / (y + 1);
    const Integer den = pow2_int(p);
    auto series = [&](const Rational& zz) {
      const Rational z2 = zz * zz;
      Integer x = (zz * Rational(den)).floor();
      Integer sum = 0;
      long n = 0;
      for (unsigned long j = 0; x != 0; ++j, ++n) {
        sum += fdiv(x, Integer(2 * j + 1));
        x = (Rational(x) * z2).floor();
      }
      return std::pair{sum, n};
    };
    const auto [lo_sum, lo_n] = series(floor_to_grid(z, p + 4));
    const auto [hi_sum, hi_n] = series(ceil_to_grid(z, p + 4));
    // each step loses < 1.2 ulps; the tail after x hits 0 is < 2 ulps
    const Integer err = 3 * hi_n + 3;
    ln_y = {Rational(2 * lo_sum, den), Rational(2 * (hi_sum + err), den)};
  }
  const RationalInterval l2 = master_ln2(p + 8);
  RationalInterval scaled = e >= 0 ? RationalInterval{l2.lo * e, l2.hi * e}
                                   : RationalInterval{l2.hi * e, l2.lo * e};
  return {floor_to_grid(scaled.lo + ln_y.lo, k + 2), ceil_to_grid(scaled.hi + ln_y.hi, k + 2)};
}

RationalInterval sqrt_enclosure(const Rational& q, long k) {
  if (q.sign() < 0) throw DomainError("sqrt of negative rational");
  return {sqrt_lower(q, k + 1), sqrt_upper(q, k + 1)};
}

// ---------------------------------------------------------------------------
// IntervalArith

RationalInterval IntervalArith::round(const RationalInterval& a) const {
  return {round_down(a.lo, bits_), round_up(a.hi, bits_)};
}

RationalInterval IntervalArith::add(const RationalInterval& a, const RationalInterval& b) const {
  return round({a.lo + b.lo, a.hi + b.hi});
}

RationalInterval IntervalArith::sub(const RationalInterval& a, const RationalInterval& b) const {
  return round({a.lo - b.hi, a.hi - b.lo});
}

RationalInterval IntervalArith::mul(const RationalInterval& a, const RationalInterval& b) const {
  const std::array<Rational, 4> p{a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  const auto [mn, mx] = std::minmax_element(p.begin(), p.end());
  return round({*mn, *mx});
}

RationalInterval IntervalArith::sqr(const RationalInterval& a) const {
  Rational l2 = a.lo * a.lo, h2 = a.hi * a.hi;
  if (a.lo.sign() >= 0) return round({l2, h2});
  if (a.hi.sign() <= 0) return round({h2, l2});
  return round({Rational(0), max(l2, h2)});
}

RationalInterval IntervalArith::div(const RationalInterval& a, const RationalInterval& b) const {
  if (b.lo.sign() <= 0 && b.hi.sign() >= 0) throw DomainError("interval division by an interval containing zero");
  return mul(a, round({b.hi.inverse(), b.lo.inverse()}));
}

RationalInterval IntervalArith::sqrt(const RationalInterval& a) const {
  if (a.lo.sign() < 0) throw DomainError("interval sqrt of negative values");
  const long frac = bits_ + 4 + (a.hi.is_zero() ? 0 : std::max(0L, -a.hi.ilog2() / 2));
  return {sqrt_lower(a.lo, frac), sqrt_upper(a.hi, frac)};
}

RationalInterval IntervalArith::hull(const RationalInterval& a, const RationalInterval& b) const {
  return {min(a.lo, b.lo), max(a.hi, b.hi)};
}

std::pair<RationalInterval, RationalInterval> IntervalArith::sincos(const Rational& x) const {
  if (x.is_zero()) return {RationalInterval(Rational(0)), RationalInterval(Rational(1))};
  // halve until |s| <= 1/8, run Taylor series, then double back up
  long r = 0;
  if (x.abs() > Rational(1, 8)) r = x.abs().ilog2() + 4;
  const IntervalArith w(bits_ + r + 12);
  const Rational s_exact = x / Rational::pow2(r);
  const RationalInterval s = w.round(RationalInterval(s_exact));
  const RationalInterval s2 = w.sqr(s);

  RationalInterval sin_sum = s, cos_sum(Rational(1));
  RationalInterval sin_term = s, cos_term(Rational(1));
  const long target = w.bits() + 4;
  long j = 1;
  for (;; ++j) {
    // sin_term_j = (-1)^j s^(2j+1)/(2j+1)!, cos_term_j = (-1)^j s^(2j)/(2j)!
    cos_term = w.neg(w.div(w.mul(cos_term, s2), RationalInterval(Rational((2 * j - 1) * (2 * j)))));
    sin_term = w.neg(w.div(w.mul(sin_term, s2), RationalInterval(Rational((2 * j) * (2 * j + 1)))));
    cos_sum = w.add(cos_sum, cos_term);
    sin_sum = w.add(sin_sum, sin_term);
    const Rational mag = max(sin_term.lo.abs(), sin_term.hi.abs());
    if (mag.is_zero() || mag < Rational::pow2(-target)) break;
  }
  // alternating series with decreasing terms: remainder bounded by the first omitted term,
  // which is <= the last term's magnitude.
  const Rational rem_s = max(sin_term.lo.abs(), sin_term.hi.abs());
  const Rational rem_c = max(cos_term.lo.abs(), cos_term.hi.abs());
  RationalInterval sn{sin_sum.lo - rem_s, sin_sum.hi + rem_s};
  RationalInterval cs{cos_sum.lo - rem_c, cos_sum.hi + rem_c};
  for (long i = 0; i < r; ++i) {
    const RationalInterval sn2 = w.mul(RationalInterval(Rational(2)), w.mul(sn, cs));
    const RationalInterval cs2 = w.sub(RationalInterval(Rational(1)), w.mul(RationalInterval(Rational(2)), w.sqr(sn)));
    sn = sn2;
    cs = cs2;
  }
  auto clamp = [](RationalInterval v) {
    v.lo = max(v.lo, Rational(-1));
    v.hi = min(v.hi, Rational(1));
    return v;
  };
  return {round(clamp(sn)), round(clamp(cs))};
}

RationalInterval IntervalArith::sin(const Rational& x) const { return sincos(x).first; }
RationalInterval IntervalArith::cos(const Rational& x) const { return sincos(x).second; }

RationalInterval IntervalArith::atan(const Rational& x) const {
  if (x.is_zero()) return RationalInterval(Rational(0));
  if (x.sign() < 0) return neg(atan(-x));
  const IntervalArith w(bits_ + 12);
  const RationalInterval pi = pi_enclosure(bits_ + 12);
  if (x > 1) {
    const RationalInterval half_pi{pi.lo / 2, pi.hi / 2};
    return round(w.sub(half_pi, atan(x.inverse())));
  }
  RationalInterval base(Rational(0));
  Rational t = x;
  if (x > Rational(1, 2)) {
    base = {pi.lo / 4, pi.hi / 4};
    t = (x - 1) / (x + 1);
  }
  // atan t = sum (-1)^j t^(2j+1)/(2j+1), |t| <= 1/2
  const RationalInterval tt = w.round(RationalInterval(t));
  const RationalInterval t2 = w.sqr(tt);
  RationalInterval power = tt, sum = tt;
  const long target = w.bits() + 4;
  for (long j = 1;; ++j) {
    power = w.neg(w.mul(power, t2));
    const RationalInterval term = w.div(power, RationalInterval(Rational(2 * j + 1)));
    sum = w.add(sum, term);
    const Rational mag = max(term.lo.abs(), term.hi.abs());
    if (mag.is_zero() || mag < Rational::pow2(-target)) {
      sum = {sum.lo - mag, sum.hi + mag};
      break;
    }
  }
  return round(w.add(base, sum));
}

RationalInterval IntervalArith::atan2(const Rational& y, const Rational& x) const {
  const RationalInterval pi = pi_enclosure(bits_ + 12);
  if (x.is_zero()) {
    if (y.is_zero()) throw DomainError("atan2 of the origin");
    return y.sign() > 0 ? RationalInterval{pi.lo / 2, pi.hi / 2} : RationalInterval{-pi.hi / 2, -pi.lo / 2};
  }
  const RationalInterval a = atan(y / x);
  if (x.sign() > 0) return a;
  if (y.sign() >= 0) return add(a, pi);
  return sub(a, pi);
}

}  // namespace bext
