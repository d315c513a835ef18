/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "bext/chains.hpp"
#include "bext/estimation.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace bext {

struct AlgorithmInputs {
  FunctionApprox phi;
  CompactApprox bd;
  ULACApprox g;
};

struct Constants {
  Integer k0;           ///< ceil(1 / rational upper bound of the largest cover diameter)
  Rational N0;          ///< upper bound of pi times the squared union diameter
  Integer c;            ///< ceil of an upper bound of the union diameter
  RationalRect fallback;  ///< (-c, c)^2
};

Constants derive_constants(const AlgorithmInputs& in);

/// One candidate tuple examined by Algorithm 1.  s0 = 1/k1 and r0 = 1 - 1/k2.
struct Configuration {
  Integer k1;
  Integer k2;
  ArcChain c1;
  ArcChain c2;
  ArcChain sigma;
  ArcChain tau;
  long t = 0;
  std::vector<DomainPiece> u_cover;
  RationalRect phi_1_minus_s0;
  CompactApprox phi_seg;
  RationalRect phi_r0;
  /// Number k of lambda arcs per side used to substantiate tau, when known.
  std::optional<long> tau_k;

  Rational s0() const { return Rational(Integer(1), k1); }
  Rational r0() const { return 1 - Rational(Integer(1), k2); }
  /// Witnessing chains of (C1, sigma, C2, tau) in circular order.
  std::vector<WitnessingChain> circular_links() const;
};

struct ClauseOutcome {
  std::string name;
  bool passed;
  std::string detail;
};
using ClauseLog = std::vector<ClauseOutcome>;

struct AlgorithmOptions {
  long precision = 20;  ///< enclosure parameter k for margins and diameters
  /// Only configurations with r0 below this bound are considered (Algorithm 3).
  std::optional<Rational> r0_limit;
  /// Angular range [a1, a2] of the rotation applied by Algorithm 2, if any.
  std::optional<std::pair<Rational, Rational>> rotation;
};

enum class SearchMode { guided, exhaustive };

/// Produces guided candidates for the (possibly rotated) inputs Algorithm 1 receives.
using CandidateGuide = std::function<std::vector<Configuration>(const AlgorithmInputs&, const AlgorithmOptions&)>;

struct SearchBudget {
  long max_chain_length = 6;     ///< witnessing chains per arc chain
  long max_rects_per_chain = 4;  ///< rectangles per witnessing chain
  long max_k1 = 64;              ///< largest k1 (and k2 - k1 gap) tried by the exhaustive search
  SearchMode mode = SearchMode::guided;
  std::vector<Configuration> candidates;
  CandidateGuide guide;
};


/// Checks conditions (1)-(9) and all substantiation clauses.  Every clause is
/// evaluated and recorded in `log` when one is given.
bool check_configuration(const AlgorithmInputs& in, const Integer& k0, const Rational& N0, const Configuration& c,
                         ClauseLog* log = nullptr, long precision = 20);

/// Upper bound of diam(∪ J) over all links of the circular chain.
Rational circular_diameter_bound(const Configuration& c);

/// phi_r0 expanded by 2^-m where m is the largest integer with bound < 2^-m.
RationalRect config_output_rect(const Configuration& c, const Rational& circular_diam_bound);

struct ConfigReport {
  Integer k1, k2;
  bool accepted = false;
  ClauseLog clauses;
  std::optional<RationalRect> output;
};

struct RunReport {
  RationalRect output_rect;
  std::size_t configurations_found = 0;
  std::vector<ConfigReport> configs;
  bool fallback = false;
  bool fast_path = false;
  std::vector<std::string> notes;
};

/// Approximation to phi(1).  Throws InconsistencyError when accepted outputs are disjoint.
RunReport algorithm1(const AlgorithmInputs& in, const SearchBudget& budget, const AlgorithmOptions& opt = {});

/// {(C_{r1, r2, nu1 - a1, nu2 - a2}, V)}; origin disks pass through, emptied pieces are dropped.
FunctionApprox rotate_function_approx(const FunctionApprox& phi, const Rational& alpha1, const Rational& alpha2);

/// Certified angular bounds a1 <= every angle of the box, a2 >= every angle, in one branch.
std::optional<std::pair<Rational, Rational>> boundary_angle_bounds(const RationalRect& box, long bits);

/// Approximation to phi(p) for a point p on the unit circle.
RunReport algorithm2(const AlgorithmInputs& in, const PointApprox& p, const SearchBudget& budget,
                     const AlgorithmOptions& opt = {});

/// Approximation to phi(p) for p in the closed disk.
RunReport algorithm3(const AlgorithmInputs& in, const PointApprox& p, const SearchBudget& budget,
                     const AlgorithmOptions& opt = {});

}  // namespace bext
