/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/chains.hpp"

#include "bext/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace bext {

namespace {

Rational pad_of(const WitnessingChain& w) { return Rational::pow2(-w.m); }

Rational sqrt_bound(const Rational& d2) {
  if (d2.is_zero()) return d2;
  return sqrt_upper(d2, std::max(20L, 21 - d2.ilog2() / 2));
}

Rational cross(const RationalPoint& o, const RationalPoint& a, const RationalPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const RationalPoint& p, const RationalPoint& a, const RationalPoint& b) {
  return min(a.x, b.x) <= p.x && p.x <= max(a.x, b.x) && min(a.y, b.y) <= p.y && p.y <= max(a.y, b.y);
}

// Squared distance to the closure of r, as a point function.
Rational dist_sq(const RationalPoint& p, const RationalRect& r) { return point_rect_distance_sq(p, r); }

Rational min_dist_sq(const WitnessingChain& w, const RationalPoint& p) {
  Rational best = dist_sq(p, w.rects.front());
  for (const auto& r : w.rects) best = min(best, dist_sq(p, r));
  return best;
}

// ----- goes_straight_through helpers

struct Event {
  Rational lo, hi;
};

// Linear piece of the x- or y-gap function on [ta, tb]: c0 + c1 t.
struct Lin {
  Rational c0, c1;
};

Lin gap_piece(const Rational& a, const Rational& d, const Rational& lo, const Rational& hi, const Rational& tm) {
  const Rational v = a + tm * d;
  if (v < lo) return {lo - a, -d};
  if (v > hi) return {a - hi, d};
  return {Rational(0), Rational(0)};
}

void crossings(const RationalPoint& a, const RationalPoint& d, const RationalRect& r, const Rational& eps2, long bits,
               std::vector<Event>& out) {
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  auto add_cut = [&](const Rational& a0, const Rational& d0, const Rational& v) {
    if (d0.is_zero()) return;
    const Rational t = (v - a0) / d0;
    if (t.sign() > 0 && t < Rational(1)) cuts.push_back(t);
  };
  add_cut(a.x, d.x, r.x_lo());
  add_cut(a.x, d.x, r.x_hi());
  add_cut(a.y, d.y, r.y_lo());
  add_cut(a.y, d.y, r.y_hi());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational& ta = cuts[i];
    const Rational& tb = cuts[i + 1];
    const Rational tm = (ta + tb) / 2;
    const Lin gx = gap_piece(a.x, d.x, r.x_lo(), r.x_hi(), tm);
    const Lin gy = gap_piece(a.y, d.y, r.y_lo(), r.y_hi(), tm);
    const Rational A = gx.c1 * gx.c1 + gy.c1 * gy.c1;
    const Rational B = 2 * (gx.c0 * gx.c1 + gy.c0 * gy.c1);
    const Rational C = gx.c0 * gx.c0 + gy.c0 * gy.c0 - eps2;
    if (A.is_zero()) {
      if (!B.is_zero()) {
        const Rational t = -C / B;
        if (ta <= t && t <= tb) out.push_back({t, t});
      }
      continue;
    }
    const Rational disc = B * B - 4 * A * C;
    if (disc.sign() < 0) continue;
    const Rational s_lo = sqrt_lower(disc, bits), s_hi = sqrt_upper(disc, bits);
    const Rational two_a = 2 * A;
    const Event roots[2] = {{(-B - s_hi) / two_a, (-B - s_lo) / two_a}, {(-B + s_lo) / two_a, (-B + s_hi) / two_a}};
    for (const auto& e : roots)
      if (!(e.hi < ta || e.lo > tb)) out.push_back(e);
  }
}

// Rational probe parameters strictly between separated crossing events, or nothing if
// two events cannot be told apart.
std::optional<std::vector<Rational>> segment_probes(const RationalPoint& a, const RationalPoint& b,
                                                    const std::vector<WitnessingChain>& links) {
  const RationalPoint d = b - a;
  for (long bits = 128; bits <= 2048; bits *= 4) {
    std::vector<Event> ev;
    for (const auto& w : links) {
      const Rational eps = pad_of(w);
      for (const auto& r : w.rects) crossings(a, d, r, eps * eps, bits, ev);
    }
    std::sort(ev.begin(), ev.end(), [](const Event& x, const Event& y) { return x.lo < y.lo; });
    std::vector<Event> merged;
    bool clash = false;
    for (auto& e : ev) {
      if (!merged.empty()) {
        Event& last = merged.back();
        if (last.lo == last.hi && e.lo == e.hi && last.lo == e.lo) continue;
        if (!(last.hi < e.lo)) {
          clash = true;
          break;
        }
      }
      merged.push_back(e);
    }
    if (clash) continue;
    std::vector<Rational> probes;
    Rational prev(0);
    for (const auto& e : merged) {
      if (prev < e.lo) probes.push_back((prev + e.lo) / 2);
      prev = max(prev, e.hi);
    }
    if (prev < Rational(1)) probes.push_back((prev + Rational(1)) / 2);
    return probes;
  }
  return std::nullopt;
}

}  // namespace

WitnessingChain::WitnessingChain(long m_, std::vector<RationalRect> r) : m(m_), rects(std::move(r)) {
  if (rects.empty()) throw PreconditionError("witnessing chain needs at least one rectangle");
}

Polyline::Polyline(std::vector<RationalPoint> v) : v_(std::move(v)) {
  if (v_.size() < 2) throw PreconditionError("polyline needs two vertices");
  for (std::size_t i = 0; i + 1 < v_.size(); ++i)
    if (v_[i] == v_[i + 1]) throw PreconditionError("polyline has repeated consecutive vertices");
  const std::size_t n = v_.size() - 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1) {
        // Adjacent segments may only share their common vertex.
        const auto& p = v_[i];
        const auto& q = v_[i + 1];
        const auto& s = v_[i + 2];
        if (cross(q, p, s).is_zero() && ((p - q).x * (s - q).x + (p - q).y * (s - q).y).sign() > 0)
          throw PreconditionError("polyline folds back on itself");
        continue;
      }
      if (segments_intersect(v_[i], v_[i + 1], v_[j], v_[j + 1])) throw PreconditionError("polyline self-intersects");
    }
}

Polyline Polyline::reversed() const {
  std::vector<RationalPoint> r(v_.rbegin(), v_.rend());
  return Polyline(std::move(r));
}

bool segments_intersect(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c, const RationalPoint& d) {
  const int d1 = cross(c, d, a).sign(), d2 = cross(c, d, b).sign();
  const int d3 = cross(a, b, c).sign(), d4 = cross(a, b, d).sign();
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

bool link_contains(const WitnessingChain& w, const RationalPoint& p) {
  const Rational e = pad_of(w);
  return min_dist_sq(w, p) < e * e;
}

bool link_closure_contains(const WitnessingChain& w, const RationalPoint& p) {
  const Rational e = pad_of(w);
  return min_dist_sq(w, p) <= e * e;
}

bool link_contains(const WitnessingChain& w, const RationalRect& rect, int depth) {
  const Rational e2 = pad_of(w) * pad_of(w);
  // Each padded rectangle is convex: closed corners strictly inside put the closed box inside.
  const auto inside_one = [&](const RationalRect& box) {
    return std::any_of(w.rects.begin(), w.rects.end(), [&](const RationalRect& r) {
      for (const Rational* x : {&box.x_lo(), &box.x_hi()})
        for (const Rational* y : {&box.y_lo(), &box.y_hi()})
          if (dist_sq({*x, *y}, r) >= e2) return false;
      return true;
    });
  };
  std::function<bool(const RationalRect&, int)> rec = [&](const RationalRect& box, int left) {
    if (inside_one(box)) return true;
    if (left == 0) return false;
    const RationalPoint c = box.center();
    return rec(RationalRect(box.x_lo(), c.x, box.y_lo(), c.y), left - 1) &&
           rec(RationalRect(c.x, box.x_hi(), box.y_lo(), c.y), left - 1) &&
           rec(RationalRect(box.x_lo(), c.x, c.y, box.y_hi()), left - 1) &&
           rec(RationalRect(c.x, box.x_hi(), c.y, box.y_hi()), left - 1);
  };
  return rec(rect, depth);
}

bool link_intersects(const WitnessingChain& a, const WitnessingChain& b) {
  for (const auto& ra : a.rects)
    for (const auto& rb : b.rects)
      if (neighborhood_distance_test(ra, a.m, rb, b.m)) return true;
  return false;
}

bool is_chain(const std::vector<WitnessingChain>& links) {
  if (links.empty()) throw PreconditionError("empty chain");
  for (std::size_t i = 0; i + 1 < links.size(); ++i)
    if (!link_intersects(links[i], links[i + 1])) return false;
  return true;
}

bool is_simple_chain(const std::vector<WitnessingChain>& links) {
  if (links.empty()) throw PreconditionError("empty chain");
  for (std::size_t i = 0; i < links.size(); ++i)
    for (std::size_t j = i + 1; j < links.size(); ++j)
      if (link_intersects(links[i], links[j]) != (j == i + 1)) return false;
  return true;
}

bool is_circular_chain(const std::vector<WitnessingChain>& links) {
  const std::size_t k = links.size();
  if (k < 3) throw PreconditionError("circular chain needs at least three links");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == k - 1);
      if (link_intersects(links[i], links[j]) != adjacent) return false;
    }
  return true;
}

Rational link_diameter_bound(const WitnessingChain& w) {
  return sqrt_bound(union_diameter_sq(std::span<const RationalRect>(w.rects))) + 2 * pad_of(w);
}

Rational arc_chain_diameter_bound(const ArcChain& p) {
  if (p.chains.empty()) throw PreconditionError("empty arc chain");
  Rational best(0);
  for (const auto& w : p.chains) best = max(best, link_diameter_bound(w));
  return best;
}

bool goes_straight_through(const Polyline& a, const std::vector<WitnessingChain>& links) {
  if (!is_simple_chain(links)) throw PreconditionError("goes_straight_through needs a simple chain");
  const auto& v = a.vertices();
  const bool ends_ok = (link_contains(links.front(), v.front()) && link_contains(links.back(), v.back())) ||
                       (link_contains(links.front(), v.back()) && link_contains(links.back(), v.front()));
  if (!ends_ok) return false;
  const std::size_t n = links.size();
  if (n == 1) return true;

  // Per adjacent pair j: progress of the patterns (A B A) and (B A B), where
  // A = in V_j outside cl V_{j+1}, B = in V_{j+1} outside cl V_j.
  std::vector<int> aba(n - 1, 0), bab(n - 1, 0);
  for (std::size_t s = 0; s + 1 < v.size(); ++s) {
    const auto probes = segment_probes(v[s], v[s + 1], links);
    if (!probes) return false;
    const RationalPoint d = v[s + 1] - v[s];
    for (const auto& t : *probes) {
      const RationalPoint p = v[s] + t * d;
      std::vector<char> in(n), cl(n);
      for (std::size_t j = 0; j < n; ++j) {
        const Rational e = pad_of(links[j]);
        const Rational dd = min_dist_sq(links[j], p);
        in[j] = dd < e * e;
        cl[j] = dd <= e * e;
      }
      for (std::size_t j = 0; j + 1 < n; ++j) {
        const bool A = in[j] && !cl[j + 1];
        const bool B = in[j + 1] && !cl[j];
        if (A) {
          if (aba[j] == 2) return false;
          if (aba[j] == 0) aba[j] = 1;
          if (bab[j] == 1) bab[j] = 2;
        }
        if (B) {
          if (bab[j] == 2) return false;
          if (bab[j] == 0) bab[j] = 1;
          if (aba[j] == 1) aba[j] = 2;
        }
      }
    }
  }
  return true;
}

bool substantiate_point_value(const FunctionApprox& phi, const RationalPoint& z, const RationalRect& v) {
  if (!(z.norm_sq() < Rational(1))) throw DomainError("point outside the unit disk");
  return std::any_of(phi.pairs.begin(), phi.pairs.end(),
                     [&](const FunctionPair& p) { return p.value == v && certainly(p.piece.contains(z)); });
}

namespace {

struct AxisPiece {
  Rational lo, hi;
  std::size_t index;
};

std::vector<AxisPiece> axis_candidates(const FunctionApprox& phi, const Rational& s, const Rational& r,
                                       const std::function<bool(const FunctionPair&)>& keep) {
  std::vector<AxisPiece> out;
  for (std::size_t i = 0; i < phi.pairs.size(); ++i) {
    const auto& p = phi.pairs[i];
    if (!keep(p) || !certainly(p.piece.meets_segment(s, r))) continue;
    if (auto iv = p.piece.positive_axis_interval()) out.push_back({iv->first, iv->second, i});
  }
  return out;
}

// Greedy sweep over open intervals covering the closed segment [s, r].
std::optional<std::vector<std::size_t>> sweep_cover(std::vector<AxisPiece> pieces, const Rational& s, const Rational& r) {
  std::sort(pieces.begin(), pieces.end(), [](const AxisPiece& a, const AxisPiece& b) { return a.lo < b.lo; });
  std::vector<std::size_t> chosen;
  Rational pos = s;  // the point that still needs covering
  while (true) {
    const AxisPiece* best = nullptr;
    for (const auto& p : pieces)
      if (p.lo < pos && pos < p.hi && (!best || best->hi < p.hi)) best = &p;
    if (!best) return std::nullopt;
    chosen.push_back(best->index);
    if (r < best->hi) return chosen;
    pos = best->hi;
  }
}

void check_segment(const Rational& s, const Rational& r) {
  if (!(s.sign() >= 0 && s < r && r < Rational(1))) throw PreconditionError("segment needs 0 <= s < r < 1");
}

}  // namespace

std::optional<CompactApprox> substantiate_segment_image(const FunctionApprox& phi, const Rational& s, const Rational& r) {
  check_segment(s, r);
  const auto chosen = sweep_cover(axis_candidates(phi, s, r, [](const FunctionPair&) { return true; }), s, r);
  if (!chosen) return std::nullopt;
  std::vector<RationalRect> values;
  for (const auto i : *chosen)
    if (std::find(values.begin(), values.end(), phi.pairs[i].value) == values.end()) values.push_back(phi.pairs[i].value);
  return CompactApprox(std::move(values));
}

bool segment_image_substantiated(const FunctionApprox& phi, const Rational& s, const Rational& r,
                                 const CompactApprox& values) {
  check_segment(s, r);
  const auto in_values = [&](const FunctionPair& p) {
    return std::find(values.rects.begin(), values.rects.end(), p.value) != values.rects.end();
  };
  const auto cands = axis_candidates(phi, s, r, in_values);
  for (const auto& v : values.rects)
    if (std::none_of(cands.begin(), cands.end(), [&](const AxisPiece& c) { return phi.pairs[c.index].value == v; }))
      return false;
  return sweep_cover(cands, s, r).has_value();
}

bool substantiate_restricted_witnessing_chain(const FunctionApprox& /*phi*/, const CompactApprox& bd,
                                              const ULACApprox& g, const WitnessingChain& w) {
  const auto gm = ulac_lookup(g, w.m);
  if (!gm) return false;
  const Rational limit = Rational::pow2(-2 * *gm);
  for (const auto& r : w.rects)
    if (!(rect_diameter_sq(r) < limit)) return false;
  for (std::size_t j = 0; j + 1 < w.rects.size(); ++j) {
    const auto meet = intersect(w.rects[j], w.rects[j + 1]);
    if (!meet) return false;
    if (std::none_of(bd.rects.begin(), bd.rects.end(), [&](const RationalRect& b) { return meet->contains(b); }))
      return false;
  }
  return true;
}

bool substantiate_sigma(const FunctionApprox& phi, const CompactApprox& bd, const ULACApprox& g, const ArcChain& sigma) {
  if (sigma.chains.empty()) return false;
  for (const auto& w : sigma.chains)
    if (!substantiate_restricted_witnessing_chain(phi, bd, g, w)) return false;
  for (std::size_t j = 0; j + 1 < sigma.chains.size(); ++j) {
    const auto meet = intersect(sigma.chains[j].rects.back(), sigma.chains[j + 1].rects.front());
    if (!meet) return false;
    if (std::none_of(bd.rects.begin(), bd.rects.end(), [&](const RationalRect& b) { return meet->contains(b); }))
      return false;
  }
  return true;
}

bool substantiate_cut_arc(const FunctionApprox& phi, const CompactApprox& bd, const ArcChain& c, ArcSide side) {
  if (c.chains.empty()) return false;
  const std::size_t end = side == ArcSide::last ? c.chains.size() - 1 : 0;
  const auto in_bd = [&](const RationalRect& r) { return std::find(bd.rects.begin(), bd.rects.end(), r) != bd.rects.end(); };
  for (std::size_t i = 0; i < c.chains.size(); ++i)
    for (const auto& r : c.chains[i].rects) {
      if (phi.in_range(r)) continue;
      if (i == end && in_bd(r)) continue;
      return false;
    }
  return true;
}

// ----- lambda arcs

RationalPoint lambda_point(const Rational& s0, const Rational& u) {
  const Rational den = 1 + u * u;
  return {1 - s0 * (1 - u * u) / den, -2 * s0 * u / den};
}

RationalRect lambda_box(const Rational& s0, const Rational& ua, const Rational& ub) {
  // x grows with u^2 and y falls with u on [-1, 1].
  const Rational u2_min = (ua.sign() <= 0 && ub.sign() >= 0) ? Rational(0) : min(ua * ua, ub * ub);
  const Rational u2_max = max(ua * ua, ub * ub);
  const auto x_of = [&](const Rational& u2) { return 1 - s0 * (1 - u2) / (1 + u2); };
  const auto y_of = [&](const Rational& u) { return -2 * s0 * u / (1 + u * u); };
  Rational xl = x_of(u2_min), xh = x_of(u2_max), yl = y_of(ub), yh = y_of(ua);
  // Keep the box nondegenerate; the open box must contain its own arc piece.
  const Rational pad = Rational::pow2(-200) * s0;
  return RationalRect(xl - pad, xh + pad, yl - pad, yh + pad);
}

namespace {

constexpr long kLambdaBits = 96;

// Enclosure of tan(i * gamma / (2k)), gamma = arccos(s0 / 2).
RationalInterval tan_step(const Rational& s0, long k, long i) {
  if (i == 0) return RationalInterval(Rational(0));
  const IntervalArith ia(kLambdaBits);
  const Rational h = s0 / 2;
  const RationalInterval w = sqrt_enclosure(1 - h * h, kLambdaBits);
  // gamma = pi/2 - atan(h / w), atan increasing.
  const RationalInterval at{ia.atan(h / w.hi).lo, ia.atan(h / w.lo).hi};
  const RationalInterval pi = pi_enclosure(kLambdaBits);
  const RationalInterval gamma{pi.lo / 2 - at.hi, pi.hi / 2 - at.lo};
  const Rational scale(Integer(i), Integer(2 * k));
  const Rational a_lo = gamma.lo * scale, a_hi = gamma.hi * scale;
  const auto [s1, c1] = ia.sincos(a_lo);
  const auto [s2, c2] = ia.sincos(a_hi);
  return {s1.lo / c1.hi, s2.hi / c2.lo};
}

}  // namespace

LambdaRange lambda_range(const Rational& s0, long k, long j) {
  if (k < 1 || j == 0 || j < -k || j > k) throw PreconditionError("lambda index out of range");
  const long a = std::abs(j);
  const RationalInterval t0 = tan_step(s0, k, a - 1), t1 = tan_step(s0, k, a);
  if (j < 0) return {t0.lo, t1.hi, t0.hi, t1.lo};
  return {-t1.hi, -t0.lo, -t1.lo, -t0.hi};
}

std::optional<std::vector<std::size_t>> lambda_cover(const FunctionApprox& phi, const std::vector<std::size_t>& candidates,
                                                     const Rational& s0, long k, long j, int depth_cap) {
  const LambdaRange lr = lambda_range(s0, k, j);
  const RationalRect whole = lambda_box(s0, lr.outer_lo, lr.outer_hi);
  std::vector<std::size_t> near;
  for (const auto i : candidates) {
    const RationalRect bb = phi.pairs[i].piece.bounding_box(64);
    if (intersect(bb, whole)) near.push_back(i);
  }
  // Bisect the parameter range; each leaf box must sit inside one piece of `pool`.
  std::vector<std::pair<Rational, Rational>> leaves;
  std::vector<std::vector<std::size_t>> leaf_pieces;
  const auto bisect = [&](const std::vector<std::size_t>& pool) {
    leaves.clear();
    leaf_pieces.clear();
    std::function<bool(const Rational&, const Rational&, int)> rec = [&](const Rational& ua, const Rational& ub,
                                                                         int left) {
      const RationalRect box = lambda_box(s0, ua, ub);
      std::vector<std::size_t> holders;
      // One argument enclosure serves every Carleson piece.
      std::optional<RationalInterval> args;
      for (const auto i : pool) {
        const DomainPiece& u = phi.pairs[i].piece;
        if (u.is_disk()) {
          if (certainly(u.contains(box))) holders.push_back(i);
          continue;
        }
        const CarlesonRect& c = u.carleson();
        if (!(c.r1() * c.r1() < rect_min_norm_sq(box) && rect_max_norm_sq(box) < c.r2() * c.r2())) continue;
        if (!args) args = arg_range(box, 64);
        // Undecided boxes are bisected further rather than refined.
        if (certainly(angle_range_inside(*args, c.theta1(), c.theta2()))) holders.push_back(i);
      }
      if (!holders.empty()) {
        leaves.emplace_back(ua, ub);
        leaf_pieces.push_back(std::move(holders));
        return true;
      }
      if (left == 0) return false;
      const Rational mid = (ua + ub) / 2;
      return rec(ua, mid, left - 1) && rec(mid, ub, left - 1);
    };
    return rec(lr.outer_lo, lr.outer_hi, depth_cap);
  };
  if (!bisect(near)) return std::nullopt;
  // Pieces holding a leaf that reaches into the inner range certainly meet lambda_j.
  std::set<std::size_t> meeting;
  for (std::size_t l = 0; l < leaves.size(); ++l) {
    const auto& [ua, ub] = leaves[l];
    if (ub < lr.inner_lo || ua > lr.inner_hi) continue;
    meeting.insert(leaf_pieces[l].begin(), leaf_pieces[l].end());
  }
  const std::vector<std::size_t> pool(meeting.begin(), meeting.end());
  if (pool.size() != near.size() && !bisect(pool)) return std::nullopt;
  return pool;
}

std::optional<std::vector<std::vector<RationalRect>>> tau_link_values(const FunctionApprox& phi,
                                                                     const std::vector<RationalRect>& piece_boxes,
                                                                     const Rational& s0, long k, long kp,
                                                                     long max_rects) {
  std::vector<std::vector<RationalRect>> out;
  for (long c = 0; c < 2 * kp; ++c) {
    const long j = c < kp ? -(kp - c) : c - kp + 1;
    const LambdaRange lr = lambda_range(s0, k, j);
    const RationalRect arc_box = lambda_box(s0, lr.outer_lo, lr.outer_hi);
    std::vector<std::size_t> cands;
    for (std::size_t i = 0; i < phi.pairs.size(); ++i)
      if (intersect(piece_boxes[i], arc_box)) cands.push_back(i);
    const auto cover = lambda_cover(phi, cands, s0, k, j);
    if (!cover) return std::nullopt;
    std::vector<RationalRect> vals;
    for (const auto i : *cover)
      if (std::find(vals.begin(), vals.end(), phi.pairs[i].value) == vals.end()) vals.push_back(phi.pairs[i].value);
    if (static_cast<long>(vals.size()) > max_rects) return std::nullopt;
    out.push_back(std::move(vals));
  }
  return out;
}

bool substantiate_tau(const FunctionApprox& phi, const CompactApprox& /*bd*/, const Rational& s0, const Integer& k0,
                      const ArcChain& tau, std::optional<long> k_hint) {
  const std::size_t len = tau.chains.size();
  if (len == 0 || len % 2 != 0) return false;
  if (!(s0.sign() > 0 && s0 < Rational(1))) throw PreconditionError("tau needs 0 < s0 < 1");
  const long kp = static_cast<long>(len / 2);
  std::vector<long> ks;
  if (k_hint) {
    ks.push_back(*k_hint);
  } else {
    for (long k = kp + 1; k <= kp + 64; ++k) ks.push_back(k);
  }
  for (const long k : ks) {
    if (!(kp < k) || Integer(k) > k0) continue;
    bool ok = true;
    for (std::size_t c = 0; c < len && ok; ++c) {
      const long j = c < static_cast<std::size_t>(kp) ? -(kp - static_cast<long>(c)) : static_cast<long>(c) - kp + 1;
      const auto& want = tau.chains[c].rects;
      std::vector<std::size_t> cands;
      for (std::size_t i = 0; i < phi.pairs.size(); ++i)
        if (std::find(want.begin(), want.end(), phi.pairs[i].value) != want.end()) cands.push_back(i);
      const auto cover = lambda_cover(phi, cands, s0, k, j);
      if (!cover) {
        ok = false;
        break;
      }
      for (const auto& r : want)
        if (std::none_of(cover->begin(), cover->end(), [&](std::size_t i) { return phi.pairs[i].value == r; })) {
          ok = false;
          break;
        }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace bext
