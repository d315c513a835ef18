/* SPDX-License-Identifier: Apache-2.0 */

#include "search.hpp"

#include "bext/errors.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <set>

namespace bext::detail {

namespace {

constexpr long kMaxPad = 60;

struct Pool {
  std::vector<RationalRect> rects;  // ran(phi) ∪ bd, bounded by k0, deduplicated
  std::vector<char> in_range;       // member of ran(phi)
  std::optional<RationalRect> box;  // bounding box of all rects
};

Pool make_pool(const AlgorithmInputs& in, const Integer& k0) {
  std::set<RationalRect> ran, all;
  for (const auto& p : in.phi.pairs) ran.insert(p.value);
  all = ran;
  all.insert(in.bd.rects.begin(), in.bd.rects.end());
  Pool pool;
  for (const auto& r : all) {
    if (!bounded_by(r, k0)) continue;
    pool.rects.push_back(r);
    pool.in_range.push_back(ran.count(r) ? 1 : 0);
    pool.box = pool.box ? bounding_box(*pool.box, r) : r;
  }
  return pool;
}

// Upper bound of the squared distance from any seg rectangle to any point of the box.
Rational farthest_sq(const std::vector<RationalRect>& seg, const RationalRect& box) {
  Rational best(0);
  for (const auto& s : seg) {
    const RationalRect hull = bounding_box(s, box);
    best = max(best, rect_diameter_sq(hull));
  }
  return best;
}

// Shortest path (as node indices) in an implicit graph, from any source to any target.
std::optional<std::vector<std::size_t>> bfs(std::size_t n, const std::vector<std::size_t>& sources,
                                            const std::function<bool(std::size_t)>& is_target,
                                            const std::function<bool(std::size_t)>& may_pass,
                                            const std::function<bool(std::size_t, std::size_t)>& edge, long max_len) {
  std::vector<long> depth(n, -1);
  std::vector<std::size_t> parent(n, n);
  std::deque<std::size_t> q;
  for (const auto s : sources) {
    if (depth[s] >= 0) continue;
    depth[s] = 1;
    q.push_back(s);
  }
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop_front();
    if (is_target(u)) {
      std::vector<std::size_t> path;
      for (std::size_t v = u; v != n; v = parent[v]) path.push_back(v);
      std::reverse(path.begin(), path.end());
      return path;
    }
    if (depth[u] >= max_len || !may_pass(u)) continue;
    for (std::size_t v = 0; v < n; ++v) {
      if (depth[v] >= 0 || !edge(u, v)) continue;
      depth[v] = depth[u] + 1;
      parent[v] = u;
      q.push_back(v);
    }
  }
  return std::nullopt;
}

ArcChain single_rect_chain(const std::vector<RationalRect>& rects, const std::vector<std::size_t>& path, long m) {
  ArcChain a;
  for (const auto i : path) a.chains.emplace_back(m, std::vector<RationalRect>{rects[i]});
  return a;
}

}  // namespace

std::vector<Configuration> exhaustive_candidates(const AlgorithmInputs& in, const Constants& k,
                                                 const SearchBudget& budget, const AlgorithmOptions& opt,
                                                 std::vector<std::string>& notes) {
  std::vector<Configuration> out;
  const Rational one(1);
  const Pool pool = make_pool(in, k.k0);
  if (pool.rects.empty()) {
    notes.push_back("exhaustive: no rectangle of ran(phi) ∪ bd is bounded by k0");
    return out;
  }
  std::vector<RationalRect> piece_boxes;
  for (const auto& p : in.phi.pairs) piece_boxes.push_back(p.piece.bounding_box(64));

  long pairs = 0, no_segment = 0, margin_pruned = 0, no_assembly = 0;
  const Integer k1_max = k.k0 < budget.max_k1 ? k.k0 : Integer(budget.max_k1);
  for (Integer k1 = 2; k1 <= k1_max; ++k1) {
    const Integer k2_max = k.k0 < k1 + budget.max_k1 ? k.k0 : Integer(k1 + budget.max_k1);
    for (Integer k2 = k1 + 1; k2 <= k2_max; ++k2) {
      ++pairs;
      const Rational s0(Integer(1), k1), r0 = one - Rational(Integer(1), k2);
      if (opt.r0_limit && !(r0 < *opt.r0_limit)) continue;
      const auto seg = substantiate_segment_image(in.phi, one - s0, r0);
      if (!seg) {
        ++no_segment;
        continue;
      }
      const Rational M = margin_upper(MarginParams(s0, k.N0, r0), opt.precision);
      const Rational M2 = M * M;
      if (!(farthest_sq(seg->rects, *pool.box) > M2)) {
        ++margin_pruned;
        continue;
      }
      std::vector<char> allowed(pool.rects.size(), 0);
      bool any = false;
      for (std::size_t i = 0; i < pool.rects.size(); ++i) {
        bool far = true;
        for (const auto& s : seg->rects) far = far && rect_distance_sq(pool.rects[i], s) > M2;
        allowed[i] = far;
        any = any || far;
      }
      if (!any) {
        ++margin_pruned;
        continue;
      }

      // Point values and the U cover.
      std::optional<RationalRect> phi_r0;
      std::vector<RationalRect> phi_1ms_all;
      for (const auto& p : in.phi.pairs) {
        if (certainly(p.piece.contains(RationalPoint{r0, Rational(0)})) &&
            (!phi_r0 || rect_diameter_sq(p.value) < rect_diameter_sq(*phi_r0)))
          phi_r0 = p.value;
        if (certainly(p.piece.contains(RationalPoint{one - s0, Rational(0)}))) phi_1ms_all.push_back(p.value);
      }
      std::vector<DomainPiece> u_cover;
      for (const auto& p : in.phi.pairs)
        if (p.piece.closure_meets_tail(one - s0) == Certainty::no && p.piece.positive_axis_interval() &&
            std::find(u_cover.begin(), u_cover.end(), p.piece) == u_cover.end())
          u_cover.push_back(p.piece);
      if (!phi_r0 || phi_1ms_all.empty() || u_cover.empty()) {
        ++no_assembly;
        continue;
      }

      bool found = false;
      const long kk_max = std::min<long>(budget.max_k1, k.k0 > Integer(budget.max_k1) ? budget.max_k1 : k.k0.get_si());
      for (long kk = 2; kk <= kk_max && !found; ++kk)
        for (long kp = 1; kp < kk && 2 * kp <= budget.max_chain_length && !found; ++kp) {
          const auto links = tau_link_values(in.phi, piece_boxes, s0, kk, kp, budget.max_rects_per_chain);
          if (!links) continue;
          const auto& tau_rects = *links;

          for (long m_tau = 1; m_tau <= kMaxPad && !found; ++m_tau) {
            ArcChain tau;
            for (const auto& v : tau_rects) tau.chains.emplace_back(m_tau, v);
            if (!is_simple_chain(tau.chains)) continue;
            std::optional<RationalRect> p1ms;
            for (const auto& v : phi_1ms_all)
              for (std::size_t i = 1; i + 1 < tau.chains.size() && !p1ms; ++i)
                if (link_contains(tau.chains[i], v)) p1ms = v;
            if (!p1ms) continue;

            const auto index_of = [&](const RationalRect& r) -> std::optional<std::size_t> {
              const auto it = std::find(pool.rects.begin(), pool.rects.end(), r);
              if (it == pool.rects.end()) return std::nullopt;
              return static_cast<std::size_t>(it - pool.rects.begin());
            };
            std::vector<std::size_t> start_c1, end_c2;
            for (const auto& r : tau.chains.back().rects)
              if (auto i = index_of(r); i && allowed[*i]) start_c1.push_back(*i);
            for (const auto& r : tau.chains.front().rects)
              if (auto i = index_of(r); i && allowed[*i]) end_c2.push_back(*i);
            if (start_c1.empty() || end_c2.empty()) continue;

            for (std::size_t gi = 0; gi < in.g.values.size() && !found; ++gi) {
              const long m_sigma = static_cast<long>(gi);
              const Rational lim = Rational::pow2(-2 * in.g.values[gi]);
              std::vector<char> sigma_node(pool.rects.size(), 0);
              for (std::size_t i = 0; i < pool.rects.size(); ++i) sigma_node[i] = rect_diameter_sq(pool.rects[i]) < lim;
              const auto sigma_edge = [&](std::size_t a, std::size_t b) {
                if (!sigma_node[a] || !sigma_node[b] || a == b) return false;
                const auto meet = intersect(pool.rects[a], pool.rects[b]);
                return meet && std::any_of(in.bd.rects.begin(), in.bd.rects.end(),
                                           [&](const RationalRect& r) { return meet->contains(r); });
              };
              for (long m_c = m_tau; m_c <= std::min(kMaxPad, m_tau + 8) && !found; ++m_c) {
                const auto c_edge = [&](std::size_t a, std::size_t b) {
                  return a != b && allowed[b] && neighborhood_distance_test(pool.rects[a], m_c, pool.rects[b], m_c);
                };
                const auto c_pass = [&](std::size_t a) { return pool.in_range[a] != 0; };
                const auto hits_sigma = [&](std::size_t a) { return sigma_node[a] != 0; };
                const auto c1 = bfs(pool.rects.size(), start_c1, hits_sigma, c_pass, c_edge, budget.max_chain_length);
                if (!c1) continue;
                const auto c2_rev = bfs(pool.rects.size(), end_c2, hits_sigma, c_pass, c_edge, budget.max_chain_length);
                if (!c2_rev) continue;
                std::vector<std::size_t> c2p(c2_rev->rbegin(), c2_rev->rend());
                const std::size_t from = c1->back(), to = c2p.front();
                const auto sig = bfs(
                    pool.rects.size(), {from}, [&](std::size_t a) { return a == to; }, [](std::size_t) { return true; },
                    sigma_edge, budget.max_chain_length);
                if (!sig) continue;

                Configuration cfg{k1,
                                  k2,
                                  single_rect_chain(pool.rects, *c1, m_c),
                                  single_rect_chain(pool.rects, c2p, m_c),
                                  single_rect_chain(pool.rects, *sig, m_sigma),
                                  tau,
                                  0,
                                  u_cover,
                                  *p1ms,
                                  *seg,
                                  *phi_r0,
                                  kk};
                const Rational sd = arc_chain_diameter_bound(cfg.sigma);
                cfg.t = std::max(0L, -sd.ilog2() - 1);
                out.push_back(std::move(cfg));
                found = true;
              }
            }
          }
        }
      if (!found) ++no_assembly;
    }
  }
  notes.push_back("exhaustive: " + std::to_string(pairs) + " (k1, k2) pairs, " + std::to_string(no_segment) +
                  " without a segment cover, " + std::to_string(margin_pruned) +
                  " pruned because the margin m exceeds every distance to ran(phi) ∪ bd, " +
                  std::to_string(no_assembly) + " without an assembled chain set");
  return out;
}

}  // namespace bext::detail
