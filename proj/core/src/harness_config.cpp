/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/errors.hpp"
#include "bext/harness.hpp"

#include <algorithm>

namespace bext {

namespace {

std::optional<std::size_t> covering_rect(const CompactApprox& bd, const RationalPoint& p) {
  for (std::size_t i = 0; i < bd.rects.size(); ++i)
    if (bd.rects[i].contains(p)) return i;
  return std::nullopt;
}

Rational angle_of(const RationalPoint& p) { return IntervalArith(96).atan2(p.y, p.x).mid(); }

// Smallest value rectangle among pieces certainly containing z.
std::optional<RationalRect> best_value(const FunctionApprox& phi, const RationalPoint& z) {
  std::optional<RationalRect> best;
  std::optional<RationalInterval> arg;
  const Rational r2 = z.norm_sq();
  for (const auto& [u, v] : phi.pairs) {
    if (best && !(rect_diameter_sq(v) < rect_diameter_sq(*best))) continue;
    bool in = false;
    if (u.is_disk()) {
      in = certainly(u.contains(z));
    } else {
      const CarlesonRect& c = u.carleson();
      if (!(c.r1() * c.r1() < r2 && r2 < c.r2() * c.r2())) continue;
      if (!arg) arg = IntervalArith(64).atan2(z.y, z.x);
      const Certainty a = angle_in_open_range(*arg, c.theta1(), c.theta2());
      in = a == Certainty::unknown ? certainly(u.contains(z)) : certainly(a);
    }
    if (in) best = v;
  }
  return best;
}

// Value rectangles met along the segment from a to b, consecutive duplicates removed and
// thinned so each kept rectangle meets the next kept one when possible.
std::vector<RationalRect> segment_values(const FunctionApprox& phi, const RationalPoint& a, const RationalPoint& b,
                                         long steps) {
  std::vector<RationalRect> seq;
  for (long i = 0; i <= steps; ++i) {
    const Rational t{Integer(i), Integer(steps)};
    const auto v = best_value(phi, a + t * (b - a));
    if (v && (seq.empty() || seq.back() != *v)) seq.push_back(*v);
  }
  std::vector<RationalRect> out;
  std::size_t i = 0;
  while (i < seq.size()) {
    out.push_back(seq[i]);
    std::size_t j = i + 1;
    while (j + 1 < seq.size() && intersect(seq[i], seq[j + 1])) ++j;
    i = j;
  }
  return out;
}

ArcChain singles(const std::vector<RationalRect>& rects, long m) {
  ArcChain a;
  for (const auto& r : rects) a.chains.emplace_back(m, std::vector<RationalRect>{r});
  return a;
}

RationalPoint rotate(const RationalPoint& w, const RationalPoint& z) {
  return {w.x * z.x - w.y * z.y, w.x * z.y + w.y * z.x};
}

}  // namespace

ArcChain generate_arc_chain(const Polyline& arc, const ULACApprox& g, const Rational& eps, const CompactApprox& bd) {
  if (g.values.empty()) throw CapabilityError("empty dom(g): no witnessing chain can be restricted");
  if (eps.sign() <= 0) throw PreconditionError("eps must be positive");
  // Consecutive samples lie in consecutive links (links are convex hulls), so the step only
  // controls link size.  Clipped cover rects can be very thin; use their long sides.
  Rational h = max(bd.rects.front().width(), bd.rects.front().height());
  for (const auto& r : bd.rects) h = min(h, max(r.width(), r.height()));
  h = h / 4;

  std::vector<std::size_t> seq;
  const auto& v = arc.vertices();
  const auto visit = [&](const RationalPoint& p, bool vertex) {
    if (!seq.empty() && bd.rects[seq.back()].contains(p)) return;
    const auto i = covering_rect(bd, p);
    if (!i) {
      if (vertex) throw PreconditionError("arc vertex outside the boundary cover");
      return;
    }
    seq.push_back(*i);
  };
  visit(v.front(), true);
  for (std::size_t e = 0; e + 1 < v.size(); ++e) {
    const RationalPoint d = v[e + 1] - v[e];
    const Integer steps = max((d.x.abs() + d.y.abs()) / h, Rational(1)).ceil();
    for (Integer i = 1; i < steps; ++i) visit(v[e] + Rational(i, steps) * d, false);
    visit(v[e + 1], true);
  }

  // b_0, hull(b_0, b_1), ..., hull(b_{L-1}, b_L), b_L: neighbours meet in a whole bd rectangle.
  std::vector<RationalRect> links{bd.rects[seq.front()]};
  for (std::size_t j = 0; j + 1 < seq.size(); ++j) links.push_back(bounding_box(bd.rects[seq[j]], bd.rects[seq[j + 1]]));
  if (seq.size() > 1) links.push_back(bd.rects[seq.back()]);

  // Pads of 2^-m <= eps/8 keep padded links below eps and let a grouped chain of
  // diameter about eps/2 separate its two neighbours (simplicity).
  std::optional<long> m;
  for (long k = 0; k < static_cast<long>(g.values.size()); ++k)
    if (8 * Rational::pow2(-k) <= eps) {
      m = k;
      break;
    }
  if (!m) throw CapabilityError("eps is below what dom(g) supports");
  const Rational limit = Rational::pow2(-2 * g.values[static_cast<std::size_t>(*m)]);
  for (const auto& r : links)
    if (!(rect_diameter_sq(r) < limit))
      throw CapabilityError("boundary cover too coarse for g(" + std::to_string(*m) + ")");

  ArcChain out;
  const Rational reach = eps - 2 * Rational::pow2(-*m), group = reach * reach;
  std::vector<RationalRect> cur{links.front()};
  RationalRect hull = links.front();
  for (std::size_t j = 1; j < links.size(); ++j) {
    const RationalRect next = bounding_box(hull, links[j]);
    if (rect_diameter_sq(next) <= group) {
      cur.push_back(links[j]);
      hull = next;
      continue;
    }
    out.chains.emplace_back(*m, std::move(cur));
    cur = {links[j]};
    hull = links[j];
  }
  out.chains.emplace_back(*m, std::move(cur));
  return out;
}

namespace {

GuidedResult assemble(const AnalyticTestMap& map, const AlgorithmInputs& in, const Integer& k1, const Integer& k2,
                      const std::optional<std::pair<Rational, Rational>>& rotation, bool check) {
  GuidedResult res;
  if (!(Integer(2) <= k1 && k1 < k2)) {
    res.notes.push_back("needs 2 <= k1 < k2");
    return res;
  }
  const Constants k = derive_constants(in);
  const Rational one(1), s0(Integer(1), k1), r0 = one - Rational(Integer(1), k2);
  const auto seg = substantiate_segment_image(in.phi, one - s0, r0);
  if (!seg) {
    res.notes.push_back("phi[1-s0, r0] has no cover by pieces of phi");
    return res;
  }
  const auto phi_r0 = best_value(in.phi, {r0, Rational(0)});
  const auto phi_1ms = best_value(in.phi, {one - s0, Rational(0)});
  if (!phi_r0 || !phi_1ms) {
    res.notes.push_back("no piece contains r0 or 1-s0");
    return res;
  }
  std::vector<DomainPiece> u_cover;
  for (const auto& p : in.phi.pairs)
    if (p.piece.closure_meets_tail(one - s0) == Certainty::no && p.piece.positive_axis_interval() &&
        std::find(u_cover.begin(), u_cover.end(), p.piece) == u_cover.end())
      u_cover.push_back(p.piece);

  // tau: lambda covers, smallest (k, k') that admits a cover; m chosen for simplicity if possible.
  std::vector<RationalRect> boxes;
  for (const auto& p : in.phi.pairs) boxes.push_back(p.piece.bounding_box(64));
  std::optional<std::vector<std::vector<RationalRect>>> tau_vals;
  long kk = 0, kp = 0;
  for (long a = 3; a <= 12 && !tau_vals; ++a)
    for (long b = 2; b < a && b <= 3 && !tau_vals; ++b)
      if ((tau_vals = tau_link_values(in.phi, boxes, s0, a, b, 16))) kk = a, kp = b;
  if (!tau_vals) {
    res.notes.push_back("no lambda cover found for k <= 12");
    return res;
  }
  ArcChain tau;
  long m_tau = 1;
  bool simple = false;
  for (long m = 1; m <= 40; ++m) {
    ArcChain t;
    for (const auto& v : *tau_vals) t.chains.emplace_back(m, v);
    bool mid = false;
    for (std::size_t i = 1; i + 1 < t.chains.size() && !mid; ++i) mid = link_contains(t.chains[i], *phi_1ms);
    if (is_simple_chain(t.chains) && mid) {
      m_tau = m;
      simple = true;
      break;
    }
  }
  for (const auto& v : *tau_vals) tau.chains.emplace_back(m_tau, v);
  if (!simple) res.notes.push_back("tau chain is not simple for any m <= 40");

  // Cross cuts from the ends of tau radially to the circle.
  const auto end_point = [&](long j) {
    const LambdaRange lr = lambda_range(s0, kk, j);
    return lambda_point(s0, (lr.inner_lo + lr.inner_hi) / 2);
  };
  const RationalPoint z_up = end_point(kp), z_down = end_point(-kp);
  const Rational th_up = angle_of(z_up), th_down = angle_of(z_down);
  const RationalPoint w_up = unit_point(th_up, 64), w_down = unit_point(th_down, 64);
  const RationalPoint omega = rotation ? unit_point((rotation->first + rotation->second) / 2, 64)
                                       : RationalPoint{Rational(1), Rational(0)};

  // sigma: image of the boundary arc from w_up down to w_down.
  std::vector<RationalPoint> verts;
  constexpr long kSigmaSteps = 32;
  for (long i = 0; i <= kSigmaSteps; ++i) {
    const Rational th = th_up + (th_down - th_up) * Rational(i) / Rational(kSigmaSteps);
    const RationalPoint w = i == 0 ? w_up : i == kSigmaSteps ? w_down : unit_point(th, 64);
    verts.push_back(map(rotate(omega, w)));
  }
  // Finest m whose restriction the cover still meets.
  std::optional<ArcChain> sigma_opt;
  std::string sigma_err;
  const Polyline arc(verts);
  for (long m = static_cast<long>(in.g.values.size()) - 1; m >= 0 && !sigma_opt; --m) {
    try {
      sigma_opt = generate_arc_chain(arc, in.g, 8 * Rational::pow2(-m), in.bd);
    } catch (const CapabilityError& e) {
      sigma_err = e.what();
    }
  }
  if (!sigma_opt) {
    res.notes.push_back("sigma: " + sigma_err);
    return res;
  }
  const ArcChain& sigma = *sigma_opt;

  const auto cut = [&](const RationalPoint& z, const RationalRect& tau_end_rect, const RationalRect& bd_rect) {
    std::vector<RationalRect> r{tau_end_rect};
    const RationalPoint w = z == z_up ? w_up : w_down;
    for (const auto& v : segment_values(in.phi, z, w, 64))
      if (v != r.back()) r.push_back(v);
    r.push_back(bd_rect);
    return r;
  };
  const auto tau_rect_at = [&](const WitnessingChain& w, const RationalPoint& z) {
    for (const auto& r : w.rects)
      for (const auto& [u, v] : in.phi.pairs)
        if (v == r && certainly(u.contains(z))) return r;
    return w.rects.front();
  };
  const std::vector<RationalRect> c1r =
      cut(z_up, tau_rect_at(tau.chains.back(), z_up), sigma.chains.front().rects.front());
  std::vector<RationalRect> c2r = cut(z_down, tau_rect_at(tau.chains.front(), z_down), sigma.chains.back().rects.back());
  std::reverse(c2r.begin(), c2r.end());

  Configuration cfg{k1, k2, singles(c1r, m_tau), singles(c2r, m_tau), sigma, tau, 0, u_cover, *phi_1ms, *seg, *phi_r0,
                    kk};
  const Rational sd = arc_chain_diameter_bound(sigma);
  cfg.t = std::max(0L, -sd.ilog2() - 1);
  while (cfg.t > 0 && !(sd < Rational::pow2(-cfg.t))) --cfg.t;
  res.attempt = cfg;
  if (check && check_configuration(in, k.k0, k.N0, cfg, &res.clauses)) res.config = cfg;
  return res;
}

}  // namespace

GuidedResult build_guided_configuration(const AnalyticTestMap& map, const AlgorithmInputs& in, const Integer& k1,
                                        const Integer& k2,
                                        const std::optional<std::pair<Rational, Rational>>& rotation) {
  return assemble(map, in, k1, k2, rotation, true);
}

GuidedResult build_guided_configuration(const GroundTruth& gt, const Integer& k1, const Integer& k2, long ulac_length) {
  return build_guided_configuration(gt.map, generate_inputs(gt, ulac_length), k1, k2);
}

CandidateGuide make_guide(const AnalyticTestMap& map, long max_k) {
  return [map, max_k](const AlgorithmInputs& in, const AlgorithmOptions& opt) {
    std::vector<Configuration> out;
    for (long a = 2; a < max_k; ++a)
      for (long b = a + 1; b <= max_k; ++b) {
        if (opt.r0_limit && !(Rational(1) - Rational(Integer(1), Integer(b)) < *opt.r0_limit)) continue;
        auto r = assemble(map, in, Integer(a), Integer(b), opt.rotation, false);
        if (r.attempt) out.push_back(std::move(*r.attempt));
      }
    return out;
  };
}

}  // namespace bext
