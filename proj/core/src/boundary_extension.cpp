/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/boundary_extension.hpp"

#include "bext/errors.hpp"
#include "search.hpp"

#include <algorithm>
#include <sstream>

namespace bext {

namespace {

constexpr long kAngleBits = 96;

Rational sqrt_bound(const Rational& d2) {
  if (d2.is_zero()) return d2;
  return sqrt_upper(d2, std::max(20L, 21 - d2.ilog2() / 2));
}

// Exact ceil(sqrt(q)) for q >= 0.
Integer ceil_sqrt(const Rational& q) {
  Integer c = sqrt_lower(q, 0).floor();
  while (Rational(c) * Rational(c) < q) ++c;
  return c;
}

bool shares_rect(const WitnessingChain& a, const WitnessingChain& b) {
  return std::any_of(a.rects.begin(), a.rects.end(),
                     [&](const RationalRect& r) { return std::find(b.rects.begin(), b.rects.end(), r) != b.rects.end(); });
}

std::vector<RationalRect> all_rects(std::initializer_list<const ArcChain*> arcs) {
  std::vector<RationalRect> out;
  for (const auto* a : arcs)
    for (const auto& w : a->chains) out.insert(out.end(), w.rects.begin(), w.rects.end());
  return out;
}

Rational max_pad(std::initializer_list<const ArcChain*> arcs) {
  Rational best(0);
  for (const auto* a : arcs)
    for (const auto& w : a->chains) best = max(best, Rational::pow2(-w.m));
  return best;
}

Rational min_distance_sq(const std::vector<RationalRect>& a, const std::vector<RationalRect>& b) {
  std::optional<Rational> best;
  for (const auto& x : a)
    for (const auto& y : b) {
      const Rational d = rect_distance_sq(x, y);
      if (!best || d < *best) best = d;
    }
  return best.value_or(Rational(0));
}

std::string decimal_str(const Rational& q) { return q.decimal(8, true); }

// Do the pieces cover the real segment [0, b] (b >= 0)?
bool covers_initial_segment(const std::vector<DomainPiece>& pieces, const Rational& b) {
  struct Iv {
    Rational lo, hi;
  };
  std::vector<Iv> ivs;
  for (const auto& p : pieces)
    if (auto iv = p.positive_axis_interval()) ivs.push_back({iv->first, iv->second});
  Rational pos(0);
  while (true) {
    const Iv* best = nullptr;
    for (const auto& iv : ivs)
      if (iv.lo < pos && pos < iv.hi && (!best || best->hi < iv.hi)) best = &iv;
    if (!best) return false;
    if (b < best->hi) return true;
    pos = best->hi;
  }
}

Rational union_diameter_lower(const std::vector<DomainPiece>& pieces) {
  std::vector<RationalRect> boxes;
  for (const auto& p : pieces) {
    auto w = p.witness_boxes(kAngleBits);
    boxes.insert(boxes.end(), w.begin(), w.end());
  }
  Rational best(0);
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = i + 1; j < boxes.size(); ++j) best = max(best, rect_distance_sq(boxes[i], boxes[j]));
  return sqrt_lower(best, kAngleBits);
}

}  // namespace

Constants derive_constants(const AlgorithmInputs& in) {
  const Rational diam = compact_diameter_bound(in.bd);
  const Integer k0 = diam.inverse().ceil();
  const Rational d2 = union_diameter_sq(in.bd);
  const Rational N0 = pi_enclosure(64).hi * d2;
  const Integer c = std::max(Integer(1), ceil_sqrt(d2));
  const Rational cq(c);
  return {k0, N0, c, RationalRect(-cq, cq, -cq, cq)};
}

std::vector<WitnessingChain> Configuration::circular_links() const {
  std::vector<WitnessingChain> out;
  for (const auto* a : {&c1, &sigma, &c2, &tau}) out.insert(out.end(), a->chains.begin(), a->chains.end());
  return out;
}

Rational circular_diameter_bound(const Configuration& c) {
  const auto rects = all_rects({&c.c1, &c.sigma, &c.c2, &c.tau});
  return sqrt_bound(union_diameter_sq(std::span<const RationalRect>(rects))) +
         2 * max_pad({&c.c1, &c.sigma, &c.c2, &c.tau});
}

RationalRect config_output_rect(const Configuration& c, const Rational& bound) {
  if (bound.sign() <= 0) throw PreconditionError("circular diameter bound must be positive");
  // Largest m with bound < 2^-m is m = -(floor(log2 bound) + 1).
  const Rational pad = Rational::pow2(bound.ilog2() + 1);
  return c.phi_r0.expanded(pad);
}

bool check_configuration(const AlgorithmInputs& in, const Integer& k0, const Rational& N0, const Configuration& c,
                         ClauseLog* log, long precision) {
  bool all = true;
  const auto record = [&](const std::string& name, bool ok, std::string detail = {}) {
    all = all && ok;
    if (log) log->push_back({name, ok, std::move(detail)});
    return ok;
  };
  const auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      return record(name, false, e.what());
    }
  };

  const bool params_ok =
      record("parameters", Integer(2) <= c.k1 && c.k1 < c.k2 && c.k2 <= k0,
             "need 2 <= k1 < k2 <= k0 (k1=" + c.k1.get_str() + ", k2=" + c.k2.get_str() + ", k0=" + k0.get_str() + ")");
  const bool shape_ok = record("structure", !c.c1.chains.empty() && !c.c2.chains.empty() && !c.sigma.chains.empty() &&
                                                c.tau.chains.size() >= 2,
                               "C1, C2, sigma nonempty and tau with at least two witnessing chains");
  if (!params_ok || !shape_ok) return false;
  const Rational s0 = c.s0(), r0 = c.r0(), one(1);

  // substantiation
  guarded("substantiate sigma", [&] { return record("substantiate sigma", substantiate_sigma(in.phi, in.bd, in.g, c.sigma)); });
  guarded("substantiate C1", [&] {
    return record("substantiate C1", substantiate_cut_arc(in.phi, in.bd, c.c1, ArcSide::last));
  });
  guarded("substantiate C2", [&] {
    return record("substantiate C2", substantiate_cut_arc(in.phi, in.bd, c.c2, ArcSide::first));
  });
  guarded("substantiate tau", [&] {
    return record("substantiate tau", substantiate_tau(in.phi, in.bd, s0, k0, c.tau, c.tau_k));
  });
  guarded("substantiate phi(1-s0)", [&] {
    return record("substantiate phi(1-s0)", substantiate_point_value(in.phi, {one - s0, Rational(0)}, c.phi_1_minus_s0));
  });
  guarded("substantiate phi(r0)", [&] {
    return record("substantiate phi(r0)", substantiate_point_value(in.phi, {r0, Rational(0)}, c.phi_r0));
  });
  guarded("substantiate phi[1-s0,r0]", [&] {
    return record("substantiate phi[1-s0,r0]", segment_image_substantiated(in.phi, one - s0, r0, c.phi_seg));
  });

  // (1) boundedness
  {
    bool ok = true;
    for (const auto* a : {&c.sigma, &c.c1, &c.c2, &c.tau})
      for (const auto& w : a->chains)
        for (const auto& r : w.rects) ok = ok && bounded_by(r, k0);
    record("(1) rectangles bounded by k0", ok);
  }
  // (2)-(5) endpoint sharing
  record("(2) last of C1 shares with first of sigma", shares_rect(c.c1.chains.back(), c.sigma.chains.front()));
  record("(3) first of C2 shares with last of sigma", shares_rect(c.c2.chains.front(), c.sigma.chains.back()));
  record("(4) first of C1 shares with last of tau", shares_rect(c.c1.chains.front(), c.tau.chains.back()));
  record("(5) last of C2 shares with first of tau", shares_rect(c.c2.chains.back(), c.tau.chains.front()));
  // (6)
  {
    bool ok = false;
    for (std::size_t i = 1; i + 1 < c.tau.chains.size() && !ok; ++i) ok = link_contains(c.tau.chains[i], c.phi_1_minus_s0);
    record("(6) phi(1-s0) inside an intermediate link of tau", ok);
  }
  // (7)
  guarded("(7) circular chain", [&] {
    const auto links = c.circular_links();
    return record("(7) circular chain", links.size() >= 3 && is_circular_chain(links));
  });
  // (8)
  guarded("(8) separation by t", [&] {
    std::ostringstream why;
    bool ok = c.t >= 0 && Integer(c.t) <= k0;
    if (!ok) why << "t outside [0, k0]; ";
    const auto gt = ulac_lookup(in.g, c.t);
    if (!gt) {
      ok = false;
      why << "t not in dom(g); ";
    }
    const Rational sigma_diam = arc_chain_diameter_bound(c.sigma);
    if (!(sigma_diam < Rational::pow2(-c.t))) {
      ok = false;
      why << "diam(sigma) <= " << decimal_str(sigma_diam) << " not below 2^-t; ";
    }
    const auto sig = all_rects({&c.sigma});
    std::vector<RationalRect> c1s, c2s;
    for (const auto& r : all_rects({&c.c1}))
      if (std::find(sig.begin(), sig.end(), r) != sig.end()) c1s.push_back(r);
    for (const auto& r : all_rects({&c.c2}))
      if (std::find(sig.begin(), sig.end(), r) != sig.end()) c2s.push_back(r);
    if (c1s.empty() || c2s.empty()) {
      ok = false;
      why << "C1 or C2 shares no rectangle with sigma; ";
    } else if (gt && !(min_distance_sq(c1s, c2s) < Rational::pow2(-2 * *gt))) {
      ok = false;
      why << "d(C1 ∩ sigma, C2 ∩ sigma) not below 2^-g(t); ";
    }
    bool in_dom = true, tail_free = true;
    for (const auto& u : c.u_cover) {
      in_dom = in_dom && std::any_of(in.phi.pairs.begin(), in.phi.pairs.end(),
                                     [&](const FunctionPair& p) { return p.piece == u; });
      tail_free = tail_free && u.closure_meets_tail(one - s0) == Certainty::no;
    }
    if (c.u_cover.empty() || !in_dom) {
      ok = false;
      why << "U pieces missing from dom(phi); ";
    }
    if (!tail_free) {
      ok = false;
      why << "a U piece meets [1-s0, 1]; ";
    }
    if (!covers_initial_segment(c.u_cover, one - 2 * s0)) {
      ok = false;
      why << "U pieces do not cover [0, 1-2s0]; ";
    }
    if (!c.u_cover.empty()) {
      const auto cut = all_rects({&c.c1, &c.c2, &c.tau});
      const Rational lhs = Rational::pow2(-c.t) + sqrt_bound(union_diameter_sq(std::span<const RationalRect>(cut))) +
                           2 * max_pad({&c.c1, &c.c2, &c.tau});
      const Rational rhs = union_diameter_lower(c.u_cover);
      if (!(lhs < rhs)) {
        ok = false;
        why << "2^-t + diam(C1 ∪ C2 ∪ tau) <= " << decimal_str(lhs) << " not below diam(∪U) >= " << decimal_str(rhs) << "; ";
      }
    }
    return record("(8) separation by t", ok, why.str());
  });
  // (9)
  guarded("(9) margin", [&] {
    const Rational M = margin_upper(MarginParams(s0, N0, r0), precision);
    const Rational d2 = min_distance_sq(c.phi_seg.rects, all_rects({&c.c1, &c.c2}));
    std::ostringstream why;
    why << "d^2 = " << decimal_str(d2) << ", m <= " << decimal_str(M);
    return record("(9) margin", d2 > M * M, why.str());
  });
  return all;
}

RunReport algorithm1(const AlgorithmInputs& in, const SearchBudget& budget, const AlgorithmOptions& opt) {
  const Constants k = derive_constants(in);
  RunReport report{k.fallback, 0, {}, false, false, {}};
  std::vector<Configuration> candidates;
  if (budget.mode == SearchMode::guided) {
    candidates = budget.candidates;
    if (budget.guide) {
      auto more = budget.guide(in, opt);
      candidates.insert(candidates.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    }
  } else {
    candidates = detail::exhaustive_candidates(in, k, budget, opt, report.notes);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Configuration& a, const Configuration& b) {
    return std::tie(a.k1, a.k2) < std::tie(b.k1, b.k2);
  });
  std::optional<RationalRect> acc;
  for (const auto& c : candidates) {
    ConfigReport cr{c.k1, c.k2, false, {}, std::nullopt};
    if (opt.r0_limit && !(c.r0() < *opt.r0_limit)) {
      cr.clauses.push_back({"r0 restriction", false, "r0 not below the point-dependent bound"});
      report.configs.push_back(std::move(cr));
      continue;
    }
    cr.accepted = check_configuration(in, k.k0, k.N0, c, &cr.clauses, opt.precision);
    if (cr.accepted) {
      cr.output = config_output_rect(c, circular_diameter_bound(c));
      ++report.configurations_found;
      if (!acc) {
        acc = cr.output;
      } else {
        acc = intersect(*acc, *cr.output);
        if (!acc) throw InconsistencyError("accepted configurations produced disjoint output rectangles");
      }
    }
    report.configs.push_back(std::move(cr));
  }
  if (acc) {
    report.output_rect = *acc;
  } else {
    report.fallback = true;
  }
  return report;
}

FunctionApprox rotate_function_approx(const FunctionApprox& phi, const Rational& alpha1, const Rational& alpha2) {
  if (alpha2 < alpha1) throw PreconditionError("rotation needs alpha1 <= alpha2");
  if (!(alpha2 - alpha1 < pi_enclosure(64).lo / 2)) throw PreconditionError("rotation range must be below pi/2");
  FunctionApprox out;
  for (const auto& [u, v] : phi.pairs) {
    if (u.is_disk()) {
      out.pairs.push_back({u, v});
      continue;
    }
    const auto& c = u.carleson();
    const Rational t1 = c.theta1() - alpha1, t2 = c.theta2() - alpha2;
    if (!(t1 < t2)) continue;
    out.pairs.push_back({DomainPiece(CarlesonRect(c.r1(), c.r2(), t1, t2)), v});
  }
  return out;
}

std::optional<std::pair<Rational, Rational>> boundary_angle_bounds(const RationalRect& box, long bits) {
  if (rect_min_norm_sq(box).is_zero()) return std::nullopt;
  const RationalInterval a = arg_range(box, bits);
  return std::pair{a.lo, a.hi};
}

RunReport algorithm2(const AlgorithmInputs& in, const PointApprox& p, const SearchBudget& budget,
                     const AlgorithmOptions& opt) {
  const Rational one(1);
  if (rect_max_norm_sq(p.rect) < one || rect_min_norm_sq(p.rect) > one)
    throw DomainError("point approximation misses the unit circle");
  const Constants k = derive_constants(in);
  const auto fallback = [&](std::string why) {
    RunReport r{k.fallback, 0, {}, false, false, {}};
    r.fallback = true;
    r.notes.push_back(std::move(why));
    return r;
  };
  const auto ab = boundary_angle_bounds(p.rect, kAngleBits);
  if (!ab) return fallback("point approximation contains the origin; its arc has diameter at least sqrt 2");
  // An arc of angular width below pi/2 has chord diameter below sqrt 2.
  if (!(ab->second - ab->first < pi_enclosure(kAngleBits).lo / 2))
    return fallback("arc of the point approximation cannot be certified shorter than a quarter turn");
  const AlgorithmInputs rotated{rotate_function_approx(in.phi, ab->first, ab->second), in.bd, in.g};
  AlgorithmOptions o = opt;
  o.rotation = *ab;
  RunReport r = algorithm1(rotated, budget, o);
  r.notes.push_back("rotation range [" + ab->first.decimal(12, false) + ", " + ab->second.decimal(12, true) + "]");
  return r;
}

RunReport algorithm3(const AlgorithmInputs& in, const PointApprox& p, const SearchBudget& budget,
                     const AlgorithmOptions& opt) {
  const Rational one(1);
  const Constants k = derive_constants(in);
  const bool misses_circle = rect_max_norm_sq(p.rect) < one || rect_min_norm_sq(p.rect) > one;
  // Open rectangle: it meets the circle iff the closed extremes straddle 1 strictly.
  const bool open_misses = rect_max_norm_sq(p.rect) <= one || rect_min_norm_sq(p.rect) >= one;
  if (open_misses) {
    RunReport r{k.fallback, 0, {}, false, false, {}};
    r.fast_path = true;
    if (!misses_circle) {
      r.fallback = true;
      r.notes.push_back("closure of the point approximation touches the unit circle");
      return r;
    }
    std::optional<RationalRect> acc;
    for (const auto& [u, v] : in.phi.pairs) {
      if (!certainly(u.contains(p.rect))) continue;
      if (!acc) {
        acc = v;
      } else {
        acc = intersect(*acc, v);
        if (!acc) throw InconsistencyError("value rectangles of pieces containing the point are disjoint");
      }
    }
    if (!acc) {
      r.fallback = true;
      r.notes.push_back("point approximation lies in no piece");
      return r;
    }
    r.output_rect = *acc;
    return r;
  }
  // Boundary case: Algorithm 2 with r0 restricted below min Re(e^{i theta} z).
  AlgorithmOptions o = opt;
  if (const auto ab = boundary_angle_bounds(p.rect, kAngleBits)) {
    const IntervalArith ia(kAngleBits);
    const Rational w = ab->second - ab->first;
    if (w < pi_enclosure(kAngleBits).lo / 2) {
      // Angles of e^{i theta} z lie in [-w, w]; cos is smallest at the ends.
      const RationalInterval c = ia.cos(w);
      const Rational rmin = sqrt_lower(rect_min_norm_sq(p.rect), kAngleBits);
      const Rational limit = rmin * c.lo;
      o.r0_limit = opt.r0_limit ? min(*opt.r0_limit, limit) : limit;
    }
  }
  RunReport r = algorithm2(in, p, budget, o);
  return r;
}

}  // namespace bext
