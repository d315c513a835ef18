/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "bext/approximations.hpp"

#include <optional>
#include <vector>

namespace bext {

/// (m, R_1, ..., R_k).  Its link is the union of the 2^-m neighborhoods of the R_j.
struct WitnessingChain {
  long m;
  std::vector<RationalRect> rects;

  WitnessingChain(long m_, std::vector<RationalRect> r);
  friend bool operator==(const WitnessingChain&, const WitnessingChain&) = default;
};

/// Witnessing chains whose links form a simple chain (checked by is_simple_chain).
struct ArcChain {
  std::vector<WitnessingChain> chains;
  friend bool operator==(const ArcChain&, const ArcChain&) = default;
};

/// Witnessing chains whose links meet exactly when cyclically adjacent.
struct CircularChain {
  std::vector<WitnessingChain> chains;
};

/// Simple polygonal arc with rational vertices.
class Polyline {
public:
  explicit Polyline(std::vector<RationalPoint> v);
  const std::vector<RationalPoint>& vertices() const { return v_; }
  Polyline reversed() const;

private:
  std::vector<RationalPoint> v_;
};

/// Exact segment intersection test (closed segments).
bool segments_intersect(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c, const RationalPoint& d);

/// Is p in the link of w (open), or in its closure?
bool link_contains(const WitnessingChain& w, const RationalPoint& p);
bool link_closure_contains(const WitnessingChain& w, const RationalPoint& p);
/// Sufficient test for rect ⊆ link(w), by subdivision (each piece inside one padded rectangle).
bool link_contains(const WitnessingChain& w, const RationalRect& rect, int depth = 10);

bool link_intersects(const WitnessingChain& a, const WitnessingChain& b);
bool is_chain(const std::vector<WitnessingChain>& links);
bool is_simple_chain(const std::vector<WitnessingChain>& links);
/// Throws PreconditionError for fewer than three links.
bool is_circular_chain(const std::vector<WitnessingChain>& links);

/// Upper bound of diam(link) = diam(∪ R_j) + 2 * 2^-m, within 2^-20 relative to its size.
Rational link_diameter_bound(const WitnessingChain& w);
Rational arc_chain_diameter_bound(const ArcChain& p);

/// The polyline has one endpoint in the first link, the other in the last, and never
/// backtracks between consecutive links (neither j, j+1, j nor j+1, j, j+1 patterns occur).
/// Throws PreconditionError when the links are not a simple chain.  Returns false when the
/// crossing points cannot be separated.
bool goes_straight_through(const Polyline& a, const std::vector<WitnessingChain>& links);

// ---------------------------------------------------------------------------
// substantiation

enum class ArcSide { first, last };

/// Some pair (U, V) has z ∈ U and V = v.  Throws DomainError unless |z| < 1.
bool substantiate_point_value(const FunctionApprox& phi, const RationalPoint& z, const RationalRect& v);

/// Value rectangles of pairs whose pieces tightly cover the real segment [s, r], or nothing.
std::optional<CompactApprox> substantiate_segment_image(const FunctionApprox& phi, const Rational& s, const Rational& r);
/// Are `values` exactly the values of a family of pairs tightly covering [s, r]?
bool segment_image_substantiated(const FunctionApprox& phi, const Rational& s, const Rational& r,
                                 const CompactApprox& values);

bool substantiate_restricted_witnessing_chain(const FunctionApprox& phi, const CompactApprox& bd, const ULACApprox& g,
                                              const WitnessingChain& w);
bool substantiate_sigma(const FunctionApprox& phi, const CompactApprox& bd, const ULACApprox& g, const ArcChain& sigma);
bool substantiate_cut_arc(const FunctionApprox& phi, const CompactApprox& bd, const ArcChain& c, ArcSide side);

/// Parameter range of one lambda arc of |z - 1| = s0 inside the unit disk, in the rational
/// parametrization z(u) = 1 - s0 ((1 - u^2) + 2iu) / (1 + u^2).  `outer` encloses the arc,
/// `inner` is enclosed by it (inner may be empty when the arc is tiny).
struct LambdaRange {
  Rational outer_lo, outer_hi;
  Rational inner_lo, inner_hi;
};

/// Range for lambda_j, j in {-k..-1, 1..k}; negative j lie below the real axis.
LambdaRange lambda_range(const Rational& s0, long k, long j);
RationalPoint lambda_point(const Rational& s0, const Rational& u);
/// Exact bounding box of {z(u) : u in [ua, ub]} for |u| <= 1.
RationalRect lambda_box(const Rational& s0, const Rational& ua, const Rational& ub);

/// Indices (into phi.pairs) of a tight cover of lambda_j drawn from `candidates`, or nothing.
std::optional<std::vector<std::size_t>> lambda_cover(const FunctionApprox& phi, const std::vector<std::size_t>& candidates,
                                                     const Rational& s0, long k, long j, int depth_cap = 24);

/// Value rectangles of lambda covers for j = -kp..-1, 1..kp, one list per link, each of at
/// most `max_rects` entries.  `piece_boxes[i]` bounds the piece of phi.pairs[i].
std::optional<std::vector<std::vector<RationalRect>>> tau_link_values(const FunctionApprox& phi,
                                                                     const std::vector<RationalRect>& piece_boxes,
                                                                     const Rational& s0, long k, long kp,
                                                                     long max_rects);

/// Chains of tau are ordered lambda_{-k'}, ..., lambda_{-1}, lambda_1, ..., lambda_{k'}.
/// `k_hint` fixes k; otherwise k is searched from k'+1 up to min(k0, k'+64).
bool substantiate_tau(const FunctionApprox& phi, const CompactApprox& bd, const Rational& s0, const Integer& k0,
                      const ArcChain& tau, std::optional<long> k_hint = std::nullopt);

}  // namespace bext
