/* SPDX-License-Identifier: Apache-2.0 */

// Ground-truth test maps and certified input generation.

#pragma once

#include "bext/boundary_extension.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bext {

struct ComplexRational {
  Rational re;
  Rational im;
  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

enum class UnivalenceCertificate { identity, bounded_second_coefficient, externally_asserted };

/// phi(z) = sum_{k>=1} c_k z^k with rational complex coefficients.
class AnalyticTestMap {
 public:
  AnalyticTestMap(std::vector<ComplexRational> coefficients, UnivalenceCertificate cert);

  static AnalyticTestMap identity();
  /// z + c2 z^2; requires |c2| <= 1/2.
  static AnalyticTestMap quadratic(const Rational& c2);
  /// "identity" or "quad:NUM/DEN".  Throws SchemaError on unknown names.
  static AnalyticTestMap parse(const std::string& name);

  const std::vector<ComplexRational>& coefficients() const { return c_; }
  UnivalenceCertificate certificate() const { return cert_; }
  std::size_t degree() const { return c_.size(); }
  std::string name() const;

  /// Exact value at a rational point.
  RationalPoint operator()(const RationalPoint& z) const;
  /// Closed box [re] x [im] containing phi of every point of the closed input box.
  std::pair<RationalInterval, RationalInterval> eval_box(const RationalInterval& x, const RationalInterval& y) const;
  /// Same for phi'.
  std::pair<RationalInterval, RationalInterval> eval_derivative_box(const RationalInterval& x,
                                                                    const RationalInterval& y) const;

 private:
  std::vector<ComplexRational> c_;
  UnivalenceCertificate cert_;
};

struct GroundTruth {
  AnalyticTestMap map;
  long resolution;
  GroundTruth(AnalyticTestMap m, long res);
};

/// Open rectangle V with phi[closure(piece)] ⊆ V, by subdivided interval evaluation.
RationalRect eval_interval(const AnalyticTestMap& map, const DomainPiece& piece, long k);

/// Origin disk of radius 1/2 plus Carleson bands b = 1..n.  Band b starts at level b with 2^b
/// pieces of angular width 1.5 * 2pi/2^b; each further level splits every piece into three
/// overlapping pieces of half its width, so any angle interval shorter than 1.5 * pi/2^n lies
/// inside one piece.
FunctionApprox generate_phi_approx(const GroundTruth& gt);
/// Tight cover of phi[unit circle] by rectangles of diameter below 2^-n.
CompactApprox generate_boundary_approx(const GroundTruth& gt);
/// g(m) = m + c, m < length.  Throws CapabilityError when phi' may vanish on the closed disk.
ULACApprox generate_ulac(const GroundTruth& gt, long length);
/// Certified ULAC constant c.
long ulac_constant(const AnalyticTestMap& map);

AlgorithmInputs generate_inputs(const GroundTruth& gt, long ulac_length);

/// Rectangle of diameter at most 2^-k containing phi(p), |p| <= 1.
RationalRect true_value(const AnalyticTestMap& map, const RationalPoint& p, long k);

/// Arc chain following `arc` whose links have diameter at most eps.  Throws CapabilityError
/// when no m in dom(g) fits, PreconditionError when the arc leaves the cover.
ArcChain generate_arc_chain(const Polyline& arc, const ULACApprox& g, const Rational& eps, const CompactApprox& bd);

/// Rational point on the unit circle close to angle theta (error below 2^-bits).
RationalPoint unit_point(const Rational& theta, long bits);

struct GuidedResult {
  std::optional<Configuration> config;   ///< set iff every clause holds
  std::optional<Configuration> attempt;  ///< the assembled candidate, when assembly got that far
  ClauseLog clauses;
  std::vector<std::string> notes;
};

/// Builds the configuration for (k1, k2) from the known map.  `rotation` is the angular
/// range applied by Algorithm 2 (the inputs are then already rotated).
GuidedResult build_guided_configuration(const AnalyticTestMap& map, const AlgorithmInputs& in, const Integer& k1,
                                        const Integer& k2,
                                        const std::optional<std::pair<Rational, Rational>>& rotation = std::nullopt);
GuidedResult build_guided_configuration(const GroundTruth& gt, const Integer& k1, const Integer& k2,
                                        long ulac_length = 16);

/// Guide producing assembled candidates for all 2 <= k1 < k2 <= max_k (Algorithm 1 checks them).
CandidateGuide make_guide(const AnalyticTestMap& map, long max_k = 6);

}  // namespace bext
