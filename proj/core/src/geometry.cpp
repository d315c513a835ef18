/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/geometry.hpp"

#include "bext/errors.hpp"

#include <algorithm>
#include <set>

namespace bext {

namespace {

// Refinement schedule for predicates that need pi or arctangents.
constexpr long kFirstBits = 48;
constexpr long kMaxBits = 3072;

Rational gap(const Rational& lo1, const Rational& hi1, const Rational& lo2, const Rational& hi2) {
  if (hi1 < lo2) return lo2 - hi1;
  if (hi2 < lo1) return lo1 - hi2;
  return Rational(0);
}

// Max |v| over [lo, hi], and min |v| (0 when the range straddles 0).
Rational abs_max(const Rational& lo, const Rational& hi) { return max(lo.abs(), hi.abs()); }
Rational abs_min(const Rational& lo, const Rational& hi) {
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  return min(lo.abs(), hi.abs());
}

}  // namespace

RationalPoint operator+(const RationalPoint& a, const RationalPoint& b) { return {a.x + b.x, a.y + b.y}; }
RationalPoint operator-(const RationalPoint& a, const RationalPoint& b) { return {a.x - b.x, a.y - b.y}; }
RationalPoint operator*(const Rational& s, const RationalPoint& p) { return {s * p.x, s * p.y}; }

RationalRect::RationalRect(Rational x_lo, Rational x_hi, Rational y_lo, Rational y_hi)
    : x_lo_(std::move(x_lo)), x_hi_(std::move(x_hi)), y_lo_(std::move(y_lo)), y_hi_(std::move(y_hi)) {
  if (!(x_lo_ < x_hi_) || !(y_lo_ < y_hi_)) throw PreconditionError("degenerate rectangle");
}

RationalRect RationalRect::around(const RationalPoint& c, const Rational& half) {
  return RationalRect(c.x - half, c.x + half, c.y - half, c.y + half);
}

bool RationalRect::contains(const RationalPoint& p) const {
  return x_lo_ < p.x && p.x < x_hi_ && y_lo_ < p.y && p.y < y_hi_;
}

bool RationalRect::closure_contains(const RationalPoint& p) const {
  return x_lo_ <= p.x && p.x <= x_hi_ && y_lo_ <= p.y && p.y <= y_hi_;
}

bool RationalRect::contains(const RationalRect& o) const {
  return x_lo_ <= o.x_lo_ && o.x_hi_ <= x_hi_ && y_lo_ <= o.y_lo_ && o.y_hi_ <= y_hi_;
}

RationalRect RationalRect::expanded(const Rational& by) const {
  return RationalRect(x_lo_ - by, x_hi_ + by, y_lo_ - by, y_hi_ + by);
}

std::optional<RationalRect> intersect(const RationalRect& a, const RationalRect& b) {
  Rational xl = max(a.x_lo(), b.x_lo()), xh = min(a.x_hi(), b.x_hi());
  Rational yl = max(a.y_lo(), b.y_lo()), yh = min(a.y_hi(), b.y_hi());
  if (!(xl < xh) || !(yl < yh)) return std::nullopt;
  return RationalRect(std::move(xl), std::move(xh), std::move(yl), std::move(yh));
}

RationalRect bounding_box(const RationalRect& a, const RationalRect& b) {
  return RationalRect(min(a.x_lo(), b.x_lo()), max(a.x_hi(), b.x_hi()), min(a.y_lo(), b.y_lo()),
                      max(a.y_hi(), b.y_hi()));
}

RationalRect bounding_box(std::span<const RationalRect> rects) {
  if (rects.empty()) throw PreconditionError("bounding box of nothing");
  RationalRect box = rects.front();
  for (const auto& r : rects.subspan(1)) box = bounding_box(box, r);
  return box;
}

RationalDisk::RationalDisk(RationalPoint c, Rational r) : center(std::move(c)), radius(std::move(r)) {
  if (radius.sign() <= 0) throw PreconditionError("disk radius must be positive");
}

CarlesonRect::CarlesonRect(Rational r1, Rational r2, Rational theta1, Rational theta2)
    : r1_(std::move(r1)), r2_(std::move(r2)), theta1_(std::move(theta1)), theta2_(std::move(theta2)) {
  if (!(r1_.sign() > 0 && r1_ < r2_ && r2_ < Rational(1))) throw PreconditionError("Carleson radii need 0 < r1 < r2 < 1");
  if (!(theta1_ < theta2_)) throw PreconditionError("Carleson angles need theta1 < theta2");
  const RationalInterval pi = pi_enclosure(64);
  if (!(theta2_ - theta1_ < 2 * pi.lo)) throw PreconditionError("Carleson angular width must be below 2 pi");
}

Rational rect_distance_sq(const RationalRect& a, const RationalRect& b) {
  const Rational dx = gap(a.x_lo(), a.x_hi(), b.x_lo(), b.x_hi());
  const Rational dy = gap(a.y_lo(), a.y_hi(), b.y_lo(), b.y_hi());
  return dx * dx + dy * dy;
}

Rational point_rect_distance_sq(const RationalPoint& p, const RationalRect& r) {
  const Rational dx = gap(p.x, p.x, r.x_lo(), r.x_hi());
  const Rational dy = gap(p.y, p.y, r.y_lo(), r.y_hi());
  return dx * dx + dy * dy;
}

Rational rect_diameter_sq(const RationalRect& a) {
  const Rational w = a.width(), h = a.height();
  return w * w + h * h;
}

bool neighborhood_distance_test(const RationalRect& a, long m_a, const RationalRect& b, long m_b) {
  const Rational reach = Rational::pow2(-m_a) + Rational::pow2(-m_b);
  return rect_distance_sq(a, b) < reach * reach;
}

std::vector<Rational> rationals_bounded_by(long m) {
  if (m < 1) throw PreconditionError("rationals_bounded_by needs m >= 1 (no admissible denominator)");
  std::set<Rational> seen;
  for (long d = 1; d <= m; ++d)
    for (long n = -m; n <= m; ++n) seen.insert(Rational(Integer(n), Integer(d)));
  return {seen.begin(), seen.end()};
}

bool bounded_by(const RationalRect& r, const Integer& m) {
  return bounded_by(r.x_lo(), m) && bounded_by(r.x_hi(), m) && bounded_by(r.y_lo(), m) && bounded_by(r.y_hi(), m);
}

Rational rect_min_norm_sq(const RationalRect& r) {
  const Rational x = abs_min(r.x_lo(), r.x_hi()), y = abs_min(r.y_lo(), r.y_hi());
  return x * x + y * y;
}

Rational rect_max_norm_sq(const RationalRect& r) {
  const Rational x = abs_max(r.x_lo(), r.x_hi()), y = abs_max(r.y_lo(), r.y_hi());
  return x * x + y * y;
}

RationalInterval arg_range(const RationalRect& box, long bits) {
  if (rect_min_norm_sq(box).is_zero()) throw DomainError("argument range of a box touching the origin");
  const IntervalArith ia(bits);
  const bool wraps = box.x_lo().sign() < 0 && box.y_lo().sign() <= 0 && box.y_hi().sign() >= 0;
  const RationalInterval two_pi = ia.add(pi_enclosure(bits + 8), pi_enclosure(bits + 8));
  std::optional<RationalInterval> hull;
  for (const Rational* x : {&box.x_lo(), &box.x_hi()})
    for (const Rational* y : {&box.y_lo(), &box.y_hi()}) {
      if (x->is_zero() && y->is_zero()) continue;  // unreachable: the origin is excluded
      RationalInterval a = ia.atan2(*y, *x);
      if (wraps && y->sign() < 0) a = ia.add(a, two_pi);
      hull = hull ? ia.hull(*hull, a) : a;
    }
  return *hull;
}

Certainty angle_in_open_range(const RationalInterval& theta, const Rational& lo, const Rational& hi) {
  if (theta.lo == theta.hi && theta.lo.is_zero()) {
    // theta = 0 exactly; the j = 0 shift is decided exactly, other shifts are irrational.
    if (lo.sign() < 0 && hi.sign() > 0) return Certainty::yes;
  }
  for (long bits = kFirstBits; bits <= kMaxBits; bits *= 2) {
    const RationalInterval pi = pi_enclosure(bits);
    const Rational two_lo = 2 * pi.lo, two_hi = 2 * pi.hi;
    const Integer j_lo = ((lo - theta.hi) / two_lo).floor() - 1;
    const Integer j_hi = ((hi - theta.lo) / two_lo).ceil() + 1;
    bool all_out = true, undecided = false;
    for (Integer j = j_lo; j <= j_hi; ++j) {
      const Rational jq{j};
      Rational s_lo, s_hi;
      if (j >= 0) {
        s_lo = theta.lo + jq * two_lo;
        s_hi = theta.hi + jq * two_hi;
      } else {
        s_lo = theta.lo + jq * two_hi;
        s_hi = theta.hi + jq * two_lo;
      }
      if (j == 0) {
        s_lo = theta.lo;
        s_hi = theta.hi;
      }
      if (lo < s_lo && s_hi < hi) return Certainty::yes;
      if (s_hi <= lo || s_lo >= hi) continue;
      all_out = false;
      undecided = true;
    }
    if (all_out) return Certainty::no;
    if (!undecided) break;
    if (theta.width() > Rational::pow2(-bits)) break;  // the theta enclosure limits us, not pi
  }
  return Certainty::unknown;
}

Certainty angle_range_inside(const RationalInterval& a, const Rational& lo, const Rational& hi) {
  for (long bits = kFirstBits; bits <= kMaxBits; bits *= 2) {
    const RationalInterval pi = pi_enclosure(bits);
    const Rational two_lo = 2 * pi.lo, two_hi = 2 * pi.hi;
    const Integer j_lo = ((lo - a.hi) / two_lo).floor() - 1;
    const Integer j_hi = ((hi - a.lo) / two_lo).ceil() + 1;
    bool undecided = false;
    for (Integer j = j_lo; j <= j_hi; ++j) {
      const Rational jq{j};
      const Rational s_lo = j == 0 ? a.lo : a.lo + jq * (j > 0 ? two_lo : two_hi);
      const Rational s_hi = j == 0 ? a.hi : a.hi + jq * (j > 0 ? two_hi : two_lo);
      if (lo < s_lo && s_hi < hi) return Certainty::yes;
      if (s_hi <= lo || s_lo >= hi) continue;
      undecided = true;
    }
    if (!undecided) return Certainty::no;
    if (a.width() > Rational::pow2(-bits)) break;
  }
  return Certainty::unknown;
}

Certainty carleson_contains(const CarlesonRect& c, const RationalPoint& p) {
  const Rational n = p.norm_sq();
  if (!(c.r1() * c.r1() < n && n < c.r2() * c.r2())) return Certainty::no;
  for (long bits = kFirstBits; bits <= kMaxBits; bits *= 4) {
    const IntervalArith ia(bits);
    const Certainty r = angle_in_open_range(ia.atan2(p.y, p.x), c.theta1(), c.theta2());
    if (r != Certainty::unknown) return r;
    if (p.y.is_zero() && p.x.sign() > 0) break;  // exact angle already used
  }
  return Certainty::unknown;
}

Certainty carleson_contains(const CarlesonRect& c, const RationalRect& box) {
  if (!(c.r1() * c.r1() < rect_min_norm_sq(box) && rect_max_norm_sq(box) < c.r2() * c.r2())) return Certainty::no;
  for (long bits = kFirstBits; bits <= kMaxBits; bits *= 4) {
    const Certainty r = angle_range_inside(arg_range(box, bits), c.theta1(), c.theta2());
    if (r != Certainty::unknown) return r;
    if (bits == kFirstBits) {
      // A corner certainly outside settles it.
      for (const Rational* x : {&box.x_lo(), &box.x_hi()})
        for (const Rational* y : {&box.y_lo(), &box.y_hi()})
          if (carleson_contains(c, RationalPoint{*x, *y}) == Certainty::no) return Certainty::no;
    }
  }
  return Certainty::unknown;
}

std::vector<RationalRect> carleson_corner_boxes(const CarlesonRect& c, long bits) {
  const IntervalArith ia(bits);
  std::vector<RationalRect> out;
  for (const Rational* t : {&c.theta1(), &c.theta2()}) {
    const auto [s, co] = ia.sincos(*t);
    for (const Rational* r : {&c.r1(), &c.r2()}) {
      const RationalInterval x = ia.mul(co, *r), y = ia.mul(s, *r);
      const Rational pad = Rational::pow2(-bits);
      out.emplace_back(x.lo - pad, x.hi + pad, y.lo - pad, y.hi + pad);
    }
  }
  return out;
}

RationalRect carleson_bounding_box(const CarlesonRect& c, long bits) {
  const IntervalArith ia(bits);
  const Rational pad = Rational::pow2(-bits);
  auto boxes = carleson_corner_boxes(c, bits);
  // Axis directions k pi / 2 inside [theta1, theta2] make r2 e^{ik pi/2} an extreme point.
  const RationalInterval pi = pi_enclosure(bits + 4);
  const Integer k_lo = (2 * c.theta1() / pi.hi).floor() - 1;
  const Integer k_hi = (2 * c.theta2() / pi.lo).ceil() + 1;
  for (Integer k = k_lo; k <= k_hi; ++k) {
    const Rational kq{k};
    const RationalInterval ang = kq.sign() >= 0 ? RationalInterval{kq * pi.lo / 2, kq * pi.hi / 2}
                                                : RationalInterval{kq * pi.hi / 2, kq * pi.lo / 2};
    if (ang.hi < c.theta1() || ang.lo > c.theta2()) continue;
    Integer km = k % 4;
    if (km < 0) km += 4;
    const Rational& r = c.r2();
    if (km == 0) boxes.emplace_back(r - pad, r + pad, -pad, pad);
    if (km == 1) boxes.emplace_back(-pad, pad, r - pad, r + pad);
    if (km == 2) boxes.emplace_back(-r - pad, -r + pad, -pad, pad);
    if (km == 3) boxes.emplace_back(-pad, pad, -r - pad, -r + pad);
  }
  return bounding_box(boxes);
}

Certainty carleson_meets_segment(const CarlesonRect& c, const Rational& s, const Rational& r) {
  if (!(c.r1() < r && s < c.r2())) return Certainty::no;
  return angle_in_open_range(RationalInterval(Rational(0)), c.theta1(), c.theta2());
}

}  // namespace bext
