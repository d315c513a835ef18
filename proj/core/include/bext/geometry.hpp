/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "bext/interval.hpp"
#include "bext/rational.hpp"

#include <optional>
#include <tuple>
#include <span>
#include <vector>

namespace bext {

/// Three-valued outcome of predicates that involve irrational quantities
/// (angles, pi).  `unknown` is returned when refinement hits its cap; callers
/// treat it as "not certified".
enum class Certainty { no, yes, unknown };

inline bool certainly(Certainty c) { return c == Certainty::yes; }

/// Complex number x + iy with rational coordinates.
struct RationalPoint {
  Rational x;
  Rational y;

  Rational norm_sq() const { return x * x + y * y; }
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

RationalPoint operator+(const RationalPoint& a, const RationalPoint& b);
RationalPoint operator-(const RationalPoint& a, const RationalPoint& b);
RationalPoint operator*(const Rational& s, const RationalPoint& p);

/// Open axis-aligned rectangle (x_lo, x_hi) x (y_lo, y_hi).
class RationalRect {
public:
  RationalRect(Rational x_lo, Rational x_hi, Rational y_lo, Rational y_hi);

  /// Square of side 2*half centered at c.
  static RationalRect around(const RationalPoint& c, const Rational& half);

  const Rational& x_lo() const { return x_lo_; }
  const Rational& x_hi() const { return x_hi_; }
  const Rational& y_lo() const { return y_lo_; }
  const Rational& y_hi() const { return y_hi_; }

  Rational width() const { return x_hi_ - x_lo_; }
  Rational height() const { return y_hi_ - y_lo_; }
  RationalPoint center() const { return {(x_lo_ + x_hi_) / 2, (y_lo_ + y_hi_) / 2}; }

  /// Open containment of a point.
  bool contains(const RationalPoint& p) const;
  /// Closure containment of a point.
  bool closure_contains(const RationalPoint& p) const;
  /// this ⊇ other (as open sets).
  bool contains(const RationalRect& other) const;

  RationalRect expanded(const Rational& by) const;

  friend bool operator==(const RationalRect&, const RationalRect&) = default;
  friend auto operator<=>(const RationalRect& a, const RationalRect& b) {
    return std::tie(a.x_lo_, a.x_hi_, a.y_lo_, a.y_hi_) <=> std::tie(b.x_lo_, b.x_hi_, b.y_lo_, b.y_hi_);
  }

private:
  Rational x_lo_, x_hi_, y_lo_, y_hi_;
};

/// Open intersection, or nothing when the open rectangles are disjoint.
std::optional<RationalRect> intersect(const RationalRect& a, const RationalRect& b);
/// Smallest rectangle containing both.
RationalRect bounding_box(const RationalRect& a, const RationalRect& b);
RationalRect bounding_box(std::span<const RationalRect> rects);

struct RationalDisk {
  RationalPoint center;
  Rational radius;

  RationalDisk(RationalPoint c, Rational r);
  bool contains(const RationalPoint& p) const { return (p - center).norm_sq() < radius * radius; }
  friend bool operator==(const RationalDisk&, const RationalDisk&) = default;
};

/// Polar box {r e^{i theta} : r1 < r < r2, theta1 < theta < theta2}.
class CarlesonRect {
public:
  CarlesonRect(Rational r1, Rational r2, Rational theta1, Rational theta2);

  const Rational& r1() const { return r1_; }
  const Rational& r2() const { return r2_; }
  const Rational& theta1() const { return theta1_; }
  const Rational& theta2() const { return theta2_; }

  friend bool operator==(const CarlesonRect&, const CarlesonRect&) = default;

private:
  Rational r1_, r2_, theta1_, theta2_;
};

/// Exact squared Euclidean distance between the closures of two rectangles.
Rational rect_distance_sq(const RationalRect& a, const RationalRect& b);
/// Exact squared distance from a point to the closure of a rectangle.
Rational point_rect_distance_sq(const RationalPoint& p, const RationalRect& r);
/// (x_hi - x_lo)^2 + (y_hi - y_lo)^2.
Rational rect_diameter_sq(const RationalRect& a);
/// True iff D_{2^-m_a}(a) ∩ D_{2^-m_b}(b) is nonempty.
bool neighborhood_distance_test(const RationalRect& a, long m_a, const RationalRect& b, long m_b);

/// Every rational n/d with n, d in {-m..m}, d != 0, ascending and without duplicates.
std::vector<Rational> rationals_bounded_by(long m);

bool bounded_by(const RationalRect& r, const Integer& m);

// ---------------------------------------------------------------------------
// angle helpers (used by Carleson-piece predicates)

/// Interval enclosing the argument of every point of the closed rectangle.
/// Requires the closed rectangle to avoid the origin.  The branch is (-pi, pi]
/// unless the rectangle meets the negative real axis, in which case it is (0, 2pi).
RationalInterval arg_range(const RationalRect& box, long bits);

/// Is theta + 2 pi j inside the open interval (lo, hi) for some integer j?
Certainty angle_in_open_range(const RationalInterval& theta, const Rational& lo, const Rational& hi);
/// Does some 2 pi j shift of [a.lo, a.hi] lie inside [lo, hi]?
Certainty angle_range_inside(const RationalInterval& a, const Rational& lo, const Rational& hi);

/// Open membership of a rational point in a Carleson rectangle.
Certainty carleson_contains(const CarlesonRect& c, const RationalPoint& p);
/// Closed box ⊆ open Carleson rectangle.
Certainty carleson_contains(const CarlesonRect& c, const RationalRect& box);
/// Rational bounding box of the closure of a Carleson rectangle (outward).
RationalRect carleson_bounding_box(const CarlesonRect& c, long bits);
/// Four small boxes, each containing one corner r_i e^{i theta_j} of the closure.
/// Distances between these boxes give lower bounds for diameters.
std::vector<RationalRect> carleson_corner_boxes(const CarlesonRect& c, long bits);

/// Certified test of [s, r] ∩ C != ∅ for a segment of the positive real axis.
Certainty carleson_meets_segment(const CarlesonRect& c, const Rational& s, const Rational& r);

/// min / max of x^2 + y^2 over the closed rectangle.
Rational rect_min_norm_sq(const RationalRect& r);
Rational rect_max_norm_sq(const RationalRect& r);

}  // namespace bext
