/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "bext/geometry.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace bext {

/// A rectangle known to contain one point.
struct PointApprox {
  RationalRect rect;
  friend bool operator==(const PointApprox&, const PointApprox&) = default;
};

/// Finite cover of a compact set; intended to be tight (every rectangle meets the set).
struct CompactApprox {
  std::vector<RationalRect> rects;

  explicit CompactApprox(std::vector<RationalRect> r);
  friend bool operator==(const CompactApprox&, const CompactApprox&) = default;
};

/// Open set on which a function approximation constrains the map: either a
/// Carleson rectangle or an origin-centered disk, in both cases with closure in the unit disk.
class DomainPiece {
public:
  DomainPiece(CarlesonRect c);  // NOLINT(google-explicit-constructor)
  static DomainPiece origin_disk(Rational radius);

  bool is_disk() const { return std::holds_alternative<RationalDisk>(v_); }
  const CarlesonRect& carleson() const { return std::get<CarlesonRect>(v_); }
  const RationalDisk& disk() const { return std::get<RationalDisk>(v_); }

  Certainty contains(const RationalPoint& p) const;
  /// Closed box inside the open piece.
  Certainty contains(const RationalRect& box) const;
  /// Outward rational bounding box of the closure.
  RationalRect bounding_box(long bits) const;
  /// Small boxes each containing a point of the closure (lower bounds for diameters).
  std::vector<RationalRect> witness_boxes(long bits) const;
  /// Does the piece meet the real segment [s, r] (0 <= s < r < 1)?
  Certainty meets_segment(const Rational& s, const Rational& r) const;
  /// Open interval of the real axis covered by the piece (on the side x >= 0),
  /// or nothing if the piece misses the positive real axis.
  std::optional<std::pair<Rational, Rational>> positive_axis_interval() const;
  /// Does the closure of the piece meet the real segment [s, 1]?
  Certainty closure_meets_tail(const Rational& s) const;

  friend bool operator==(const DomainPiece&, const DomainPiece&) = default;

private:
  explicit DomainPiece(RationalDisk d) : v_(std::move(d)) {}
  std::variant<CarlesonRect, RationalDisk> v_;
};

struct FunctionPair {
  DomainPiece piece;
  RationalRect value;
  friend bool operator==(const FunctionPair&, const FunctionPair&) = default;
};

/// Finite set of (U, V) pairs; f approximates-by this when f[closure U] ⊆ V for every pair.
struct FunctionApprox {
  std::vector<FunctionPair> pairs;

  /// Does `r` equal the value rectangle of some pair?
  bool in_range(const RationalRect& r) const;
  friend bool operator==(const FunctionApprox&, const FunctionApprox&) = default;
};

/// Initial segment g(0), ..., g(L-1) of a ULAC function.
struct ULACApprox {
  std::vector<long> values;
  friend bool operator==(const ULACApprox&, const ULACApprox&) = default;
};

/// Rational upper bound of the largest rectangle diameter in the cover.
Rational compact_diameter_bound(const CompactApprox& c);
/// Exact squared diameter of the union of the closed rectangles.
Rational union_diameter_sq(const CompactApprox& c);
Rational union_diameter_sq(std::span<const RationalRect> rects);

/// Sufficient test that every function approximated by `a` is approximated by `b`.
/// A false answer is inconclusive.
bool function_approx_no_worse(const FunctionApprox& a, const FunctionApprox& b);

/// Sufficient test that every set tightly covered by `a` is tightly covered by `b`:
/// each rectangle of `a` lies in one of `b`, and each rectangle of `b` holds one of `a`.
bool compact_approx_no_worse(const CompactApprox& a, const CompactApprox& b);

/// ĝ extends the initial segment h (h is a prefix of g).
bool ulac_extends(const ULACApprox& g, const ULACApprox& h);

std::optional<long> ulac_lookup(const ULACApprox& g, long m);

}  // namespace bext
