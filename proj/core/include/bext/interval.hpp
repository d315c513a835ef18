/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "bext/rational.hpp"

#include <optional>

namespace bext {

/// Closed interval [lo, hi] of rationals.  Used to enclose irrational
/// quantities (logarithms, pi, angles, square roots).
struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval() = default;
  RationalInterval(Rational point) : lo(point), hi(std::move(point)) {}
  RationalInterval(Rational l, Rational h);

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool certainly_positive() const { return lo.sign() > 0; }
  bool certainly_negative() const { return hi.sign() < 0; }

  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

/// Interval arithmetic with outward rounding of every result to `bits`
/// significant binary digits.  Rounding keeps rational sizes bounded; every
/// operation returns an interval containing the exact image.
class IntervalArith {
public:
  explicit IntervalArith(long bits) : bits_(bits) {}
  long bits() const { return bits_; }

  RationalInterval round(const RationalInterval& a) const;
  RationalInterval add(const RationalInterval& a, const RationalInterval& b) const;
  RationalInterval sub(const RationalInterval& a, const RationalInterval& b) const;
  RationalInterval mul(const RationalInterval& a, const RationalInterval& b) const;
  RationalInterval div(const RationalInterval& a, const RationalInterval& b) const;
  RationalInterval sqr(const RationalInterval& a) const;
  RationalInterval neg(const RationalInterval& a) const { return {-a.hi, -a.lo}; }
  RationalInterval sqrt(const RationalInterval& a) const;
  RationalInterval hull(const RationalInterval& a, const RationalInterval& b) const;

  RationalInterval sin(const Rational& x) const;
  RationalInterval cos(const Rational& x) const;
  /// Both at once; cheaper than two calls.
  std::pair<RationalInterval, RationalInterval> sincos(const Rational& x) const;
  RationalInterval atan(const Rational& x) const;
  /// Argument of (x, y) != (0,0) in (-pi, pi].
  RationalInterval atan2(const Rational& y, const Rational& x) const;

private:
  long bits_;
};

/// Interval of width <= 2^-k containing ln q.  Throws DomainError for q <= 0.
RationalInterval ln_enclosure(const Rational& q, long k);

/// Interval of width <= 2^-k containing pi; enclosure(k+1) is inside enclosure(k).
RationalInterval pi_enclosure(long k);

/// Square root enclosure of a rational with width <= 2^-k.
RationalInterval sqrt_enclosure(const Rational& q, long k);

}  // namespace bext
