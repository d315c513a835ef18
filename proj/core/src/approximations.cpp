/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/approximations.hpp"

#include "bext/errors.hpp"

#include <algorithm>

namespace bext {

namespace {

constexpr long kPieceBits = 64;

// Closed box [r1, r2] x [t1, t2] in polar coordinates.
struct PolarBox {
  Rational r1, r2, t1, t2;
  bool contains(const PolarBox& o) const { return r1 <= o.r1 && o.r2 <= r2 && t1 <= o.t1 && o.t2 <= t2; }
};

std::vector<Rational> breakpoints(const Rational& lo, const Rational& hi, std::vector<Rational> cuts) {
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::erase_if(cuts, [&](const Rational& c) { return c < lo || c > hi; });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// Closed-union coverage by cell decomposition: every open cell of the grid spanned
// by all box edges is either inside a cover box or misses its interior.
bool polar_covered(const PolarBox& target, const std::vector<PolarBox>& covers) {
  std::vector<Rational> rc, tc;
  for (const auto& c : covers) {
    rc.push_back(c.r1);
    rc.push_back(c.r2);
    tc.push_back(c.t1);
    tc.push_back(c.t2);
  }
  const auto rs = breakpoints(target.r1, target.r2, std::move(rc));
  const auto ts = breakpoints(target.t1, target.t2, std::move(tc));
  for (std::size_t i = 0; i + 1 < rs.size(); ++i)
    for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
      const PolarBox cell{rs[i], rs[i + 1], ts[j], ts[j + 1]};
      if (std::none_of(covers.begin(), covers.end(), [&](const PolarBox& c) { return c.contains(cell); })) return false;
    }
  return true;
}

// Exact cross product (b - a) x (c - a).
Rational cross(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

std::vector<RationalPoint> convex_hull(std::vector<RationalPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<RationalPoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p).sign() <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]).sign() <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

CompactApprox::CompactApprox(std::vector<RationalRect> r) : rects(std::move(r)) {
  if (rects.empty()) throw PreconditionError("compact approximation needs at least one rectangle");
}

DomainPiece::DomainPiece(CarlesonRect c) : v_(std::move(c)) {}

DomainPiece DomainPiece::origin_disk(Rational radius) {
  if (!(radius < Rational(1))) throw PreconditionError("origin disk must lie inside the unit disk");
  return DomainPiece(RationalDisk({Rational(0), Rational(0)}, std::move(radius)));
}

Certainty DomainPiece::contains(const RationalPoint& p) const {
  if (is_disk()) return disk().contains(p) ? Certainty::yes : Certainty::no;
  return carleson_contains(carleson(), p);
}

Certainty DomainPiece::contains(const RationalRect& box) const {
  if (is_disk()) return rect_max_norm_sq(box) <= disk().radius * disk().radius ? Certainty::yes : Certainty::no;
  return carleson_contains(carleson(), box);
}

RationalRect DomainPiece::bounding_box(long bits) const {
  if (is_disk()) {
    const Rational& r = disk().radius;
    return RationalRect(-r, r, -r, r);
  }
  return carleson_bounding_box(carleson(), bits);
}

std::vector<RationalRect> DomainPiece::witness_boxes(long bits) const {
  if (!is_disk()) return carleson_corner_boxes(carleson(), bits);
  const Rational& r = disk().radius;
  const Rational pad = Rational::pow2(-bits);
  return {RationalRect(r - pad, r + pad, -pad, pad), RationalRect(-r - pad, -r + pad, -pad, pad),
          RationalRect(-pad, pad, r - pad, r + pad), RationalRect(-pad, pad, -r - pad, -r + pad)};
}

Certainty DomainPiece::meets_segment(const Rational& s, const Rational& r) const {
  if (is_disk()) return s < disk().radius ? Certainty::yes : Certainty::no;
  return carleson_meets_segment(carleson(), s, r);
}

std::optional<std::pair<Rational, Rational>> DomainPiece::positive_axis_interval() const {
  if (is_disk()) return std::pair{-disk().radius, disk().radius};
  const auto& c = carleson();
  if (!certainly(angle_in_open_range(RationalInterval(Rational(0)), c.theta1(), c.theta2()))) return std::nullopt;
  return std::pair{c.r1(), c.r2()};
}

Certainty DomainPiece::closure_meets_tail(const Rational& s) const {
  if (is_disk()) return s <= disk().radius ? Certainty::yes : Certainty::no;
  const auto& c = carleson();
  if (c.r2() < s) return Certainty::no;
  if (c.theta1().sign() <= 0 && c.theta2().sign() >= 0) return Certainty::yes;
  // Only nonzero multiples of 2 pi remain; those are irrational, so open and closed tests agree.
  return angle_in_open_range(RationalInterval(Rational(0)), c.theta1(), c.theta2());
}

bool FunctionApprox::in_range(const RationalRect& r) const {
  return std::any_of(pairs.begin(), pairs.end(), [&](const FunctionPair& p) { return p.value == r; });
}

Rational compact_diameter_bound(const CompactApprox& c) {
  Rational d2(0);
  for (const auto& r : c.rects) d2 = max(d2, rect_diameter_sq(r));
  // Twenty fractional bits below the leading bit of the diameter.
  const long q = std::max(20L, 21 - d2.ilog2() / 2);
  return sqrt_upper(d2, q);
}

Rational union_diameter_sq(std::span<const RationalRect> rects) {
  std::vector<RationalPoint> corners;
  corners.reserve(4 * rects.size());
  for (const auto& r : rects)
    for (const Rational* x : {&r.x_lo(), &r.x_hi()})
      for (const Rational* y : {&r.y_lo(), &r.y_hi()}) corners.push_back({*x, *y});
  const auto hull = convex_hull(std::move(corners));
  Rational best(0);
  const std::size_t n = hull.size();
  if (n < 3) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) best = max(best, (hull[i] - hull[j]).norm_sq());
    return best;
  }
  // Rotating calipers over the strictly convex counter-clockwise hull: every antipodal pair is visited.
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const RationalPoint& a = hull[i];
    const RationalPoint& b = hull[(i + 1) % n];
    while (cross(a, b, hull[(j + 1) % n]) > cross(a, b, hull[j])) j = (j + 1) % n;
    best = max(best, max((a - hull[j]).norm_sq(), (b - hull[j]).norm_sq()));
  }
  return best;
}

Rational union_diameter_sq(const CompactApprox& c) { return union_diameter_sq(std::span<const RationalRect>(c.rects)); }

bool function_approx_no_worse(const FunctionApprox& a, const FunctionApprox& b) {
  const RationalInterval pi = pi_enclosure(kPieceBits);
  const Rational two_lo = 2 * pi.lo, two_hi = 2 * pi.hi;
  for (const auto& [u, v] : b.pairs) {
    PolarBox target = u.is_disk() ? PolarBox{Rational(0), u.disk().radius, Rational(0), two_hi}
                                  : PolarBox{u.carleson().r1(), u.carleson().r2(), u.carleson().theta1(),
                                             u.carleson().theta2()};
    std::vector<PolarBox> covers;
    bool done = false;
    for (const auto& [ui, vi] : a.pairs) {
      if (!v.contains(vi)) continue;
      if (ui.is_disk()) {
        const Rational& rad = ui.disk().radius;
        if (rad < target.r1) continue;
        if (u.is_disk() && u.disk().radius <= rad) {
          done = true;
          break;
        }
        covers.push_back({Rational(0), rad, target.t1, target.t2});
        continue;
      }
      const auto& c = ui.carleson();
      if (c.r2() < target.r1 || c.r1() > target.r2) continue;
      covers.push_back({c.r1(), c.r2(), c.theta1(), c.theta2()});
      if (c.theta1() + two_hi < c.theta2() + two_lo)
        covers.push_back({c.r1(), c.r2(), c.theta1() + two_hi, c.theta2() + two_lo});
      if (c.theta1() - two_lo < c.theta2() - two_hi)
        covers.push_back({c.r1(), c.r2(), c.theta1() - two_lo, c.theta2() - two_hi});
    }
    if (done) continue;
    if (!polar_covered(target, covers)) return false;
  }
  return true;
}

bool compact_approx_no_worse(const CompactApprox& a, const CompactApprox& b) {
  const auto inside_some = [](const RationalRect& r, const std::vector<RationalRect>& in) {
    return std::any_of(in.begin(), in.end(), [&](const RationalRect& s) { return s.contains(r); });
  };
  const auto holds_some = [](const RationalRect& r, const std::vector<RationalRect>& in) {
    return std::any_of(in.begin(), in.end(), [&](const RationalRect& s) { return r.contains(s); });
  };
  return std::all_of(a.rects.begin(), a.rects.end(), [&](const auto& r) { return inside_some(r, b.rects); }) &&
         std::all_of(b.rects.begin(), b.rects.end(), [&](const auto& r) { return holds_some(r, a.rects); });
}

bool ulac_extends(const ULACApprox& g, const ULACApprox& h) {
  return h.values.size() <= g.values.size() && std::equal(h.values.begin(), h.values.end(), g.values.begin());
}

std::optional<long> ulac_lookup(const ULACApprox& g, long m) {
  if (m < 0 || static_cast<std::size_t>(m) >= g.values.size()) return std::nullopt;
  return g.values[static_cast<std::size_t>(m)];
}

}  // namespace bext
