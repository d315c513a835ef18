/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/errors.hpp"
#include "bext/harness.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace bext;
using bext::testing::uniform;

namespace {

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

// Exact rational point on the unit circle: stereographic image of t.
RationalPoint circle_point(const Rational& t) {
  const Rational d = 1 + t * t;
  return {(1 - t * t) / d, 2 * t / d};
}

// Rational sample certainly inside the open piece, by rejection from its bounding box.
std::optional<RationalPoint> sample_in(const DomainPiece& u, std::mt19937_64& rng) {
  const RationalRect b = u.bounding_box(64);
  for (int tries = 0; tries < 200; ++tries) {
    const RationalPoint z{uniform(rng, b.x_lo(), b.x_hi(), 30), uniform(rng, b.y_lo(), b.y_hi(), 30)};
    if (u.contains(z) == Certainty::yes) return z;
  }
  return std::nullopt;
}

Rational max_dist_sq(const std::vector<RationalPoint>& pts) {
  Rational best(0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = max(best, (pts[i] - pts[j]).norm_sq());
  return best;
}

const AnalyticTestMap& quad() {
  static const AnalyticTestMap m = AnalyticTestMap::quadratic(q(1, 3));
  return m;
}

}  // namespace

TEST_CASE("test maps") {
  CHECK(AnalyticTestMap::parse("identity").name() == "identity");
  CHECK(AnalyticTestMap::parse("quad:1/3").coefficients() == quad().coefficients());
  CHECK_THROWS_AS(AnalyticTestMap::parse("joukowski"), SchemaError);
  CHECK_THROWS_AS(AnalyticTestMap::quadratic(q(2, 3)), PreconditionError);
  CHECK(quad()(RationalPoint{q(1), q(0)}) == RationalPoint{q(4, 3), q(0)});
  CHECK(quad()(RationalPoint{q(0), q(1)}) == RationalPoint{q(-1, 3), q(1)});
}

TEST_CASE("eval_interval") {
  const long k = 20;
  const DomainPiece band(CarlesonRect(q(1, 2), q(3, 4), q(1, 10), q(7, 10)));
  const RationalRect v = eval_interval(AnalyticTestMap::identity(), band, k);
  const RationalRect bb = band.bounding_box(64);
  CHECK(v.contains(bb));
  CHECK(bb.expanded(Rational::pow2(-k)).contains(v));

  const RationalRect d = eval_interval(quad(), DomainPiece::origin_disk(q(1, 2)), k);
  CHECK(d.contains(RationalPoint{q(0), q(0)}));

  // 10^4 samples per map across a handful of pieces
  std::mt19937_64 rng(17);
  const std::vector<DomainPiece> pieces{DomainPiece::origin_disk(q(1, 2)), band,
                                        DomainPiece(CarlesonRect(q(7, 8), q(31, 32), q(-1, 5), q(1, 5))),
                                        DomainPiece(CarlesonRect(q(3, 4), q(7, 8), q(3), q(4)))};
  for (const AnalyticTestMap& m : {quad(), AnalyticTestMap::identity()}) {
    long violations = 0, samples = 0;
    for (const auto& u : pieces) {
      const RationalRect vv = eval_interval(m, u, k);
      for (int i = 0; i < 2500; ++i)
        if (const auto z = sample_in(u, rng)) {
          ++samples;
          if (!vv.contains(m(*z))) ++violations;
        }
    }
    CHECK(samples >= 9900);
    CHECK(violations == 0);
  }
}

TEST_CASE("generate_phi_approx") {
  const FunctionApprox one = generate_phi_approx(GroundTruth(AnalyticTestMap::identity(), 1));
  REQUIRE(one.pairs.size() == 3);
  CHECK(one.pairs[0].piece.is_disk());
  CHECK_FALSE(one.pairs[1].piece.is_disk());
  CHECK_FALSE(one.pairs[2].piece.is_disk());

  // semantic contract on samples, and the refinement chain
  std::mt19937_64 rng(3);
  for (const AnalyticTestMap& m : {AnalyticTestMap::identity(), quad()}) {
    std::optional<FunctionApprox> prev;
    for (long n = 1; n <= 4; ++n) {
      const FunctionApprox phi = generate_phi_approx(GroundTruth(m, n));
      long violations = 0;
      for (const auto& [u, v] : phi.pairs)
        for (int i = 0; i < 20; ++i)
          if (const auto z = sample_in(u, rng); z && !v.contains(m(*z))) ++violations;
      CHECK(violations == 0);
      if (prev) CHECK(function_approx_no_worse(phi, *prev));
      prev = phi;
    }
  }
}

TEST_CASE("generate_boundary_approx") {
  std::mt19937_64 rng(11);
  for (const AnalyticTestMap& m : {AnalyticTestMap::identity(), quad()}) {
    std::optional<CompactApprox> prev;
    for (long n = 2; n <= 5; ++n) {
      const CompactApprox bd = generate_boundary_approx(GroundTruth(m, n));
      for (const auto& r : bd.rects) CHECK(rect_diameter_sq(r) <= Rational::pow2(-2 * n));
      if (prev) CHECK(compact_approx_no_worse(bd, *prev));
      prev = bd;
      if (n != 2 && n != 5) continue;
      long missed = 0;
      for (int i = 0; i < 5000; ++i) {
        const RationalPoint w = m(circle_point(uniform(rng, q(-8), q(8), 24)));
        if (std::none_of(bd.rects.begin(), bd.rects.end(), [&](const RationalRect& r) { return r.contains(w); }))
          ++missed;
      }
      CHECK(missed == 0);
    }
  }
  // identity at resolution 2: each rect meets the unit circle
  const CompactApprox id2 = generate_boundary_approx(GroundTruth(AnalyticTestMap::identity(), 2));
  for (const auto& r : id2.rects) CHECK((rect_min_norm_sq(r) < 1 && rect_max_norm_sq(r) > 1));
}

TEST_CASE("generate_ulac") {
  const long c = ulac_constant(AnalyticTestMap::identity());
  CHECK(c >= 0);
  const ULACApprox g8 = generate_ulac(GroundTruth(AnalyticTestMap::identity(), 3), 8);
  REQUIRE(g8.values.size() == 8);
  for (long k = 0; k < 8; ++k) CHECK(g8.values[static_cast<std::size_t>(k)] == k + c);
  CHECK_THROWS_AS(generate_ulac(GroundTruth(AnalyticTestMap::quadratic(q(1, 2)), 3), 8), CapabilityError);

  // sampled ULAC property: chord <= 2^-g(k) implies sub-arc diameter <= 2^-k
  std::mt19937_64 rng(23);
  const long length = 12;
  for (const AnalyticTestMap& m : {AnalyticTestMap::identity(), quad()}) {
    const ULACApprox g = generate_ulac(GroundTruth(m, 3), length);
    long tested = 0, violations = 0;
    for (int i = 0; i < 10000; ++i) {
      const long k = static_cast<long>(rng() % length);
      const long gk = g.values[static_cast<std::size_t>(k)];
      const Rational t = uniform(rng, q(-3), q(3), 24);
      // parameter steps shrink the chord to about 2^-gk
      const Rational dt = uniform(rng, q(0), Rational::pow2(-gk + 1), 24 + gk);
      if (dt.is_zero()) continue;
      const RationalPoint a = m(circle_point(t)), b = m(circle_point(t + dt));
      if ((a - b).norm_sq() > Rational::pow2(-2 * gk)) continue;
      ++tested;
      std::vector<RationalPoint> arc;
      for (int s = 0; s <= 8; ++s) arc.push_back(m(circle_point(t + dt * q(s, 8))));
      if (max_dist_sq(arc) > Rational::pow2(-2 * k)) ++violations;
    }
    CHECK(tested > 2000);
    CHECK(violations == 0);
  }
}

TEST_CASE("true_value") {
  const RationalRect a = true_value(AnalyticTestMap::identity(), RationalPoint{q(1), q(0)}, 20);
  CHECK(a.contains(RationalPoint{q(1), q(0)}));
  CHECK(rect_diameter_sq(a) <= Rational::pow2(-40));
  CHECK(true_value(quad(), RationalPoint{q(1), q(0)}, 20).contains(RationalPoint{q(4, 3), q(0)}));
  CHECK(true_value(quad(), RationalPoint{q(-1), q(0)}, 20).contains(RationalPoint{q(-2, 3), q(0)}));
}

TEST_CASE("generate_arc_chain") {
  // eps = 1/2 restricts to m = 4, so links must stay below 2^-g(4) = 2^-6
  const GroundTruth gt(AnalyticTestMap::identity(), 7);
  const AlgorithmInputs in{FunctionApprox{}, generate_boundary_approx(gt), generate_ulac(gt, 16)};
  // dense enough that chords stay inside the thin clipped cover rects
  std::vector<RationalPoint> verts;
  for (long i = 0; i <= 256; ++i) verts.push_back(unit_point(q(i, 256) * q(157, 100), 64));
  const Polyline quarter(verts);

  const Rational eps = q(1, 2);
  const ArcChain a = generate_arc_chain(quarter, in.g, eps, in.bd);
  CHECK(a.chains.size() > 1);
  CHECK(substantiate_sigma(in.phi, in.bd, in.g, a));
  for (const auto& w : a.chains) CHECK(arc_chain_diameter_bound(ArcChain{{w}}) <= eps);
  CHECK(goes_straight_through(quarter, a.chains));

  const ArcChain whole = generate_arc_chain(quarter, in.g, q(3), in.bd);
  CHECK(whole.chains.size() == 1);
  CHECK(substantiate_sigma(in.phi, in.bd, in.g, whole));

  CHECK_THROWS_AS(generate_arc_chain(quarter, ULACApprox{}, eps, in.bd), CapabilityError);
  CHECK_THROWS_AS(generate_arc_chain(quarter, in.g, Rational::pow2(-40), in.bd), CapabilityError);
  CHECK_THROWS_AS(generate_arc_chain(Polyline({{q(0), q(0)}, {q(1), q(0)}}), in.g, eps, in.bd), PreconditionError);

  // the quadratic map's boundary image: eps = 4 restricts to m = 1, links below 2^-g(1) = 2^-6
  const GroundTruth qt(quad(), 7);
  const AlgorithmInputs qin{FunctionApprox{}, generate_boundary_approx(qt), generate_ulac(qt, 16)};
  std::vector<RationalPoint> qverts;
  for (const auto& v : verts) qverts.push_back(quad()(v));
  const ArcChain qa = generate_arc_chain(Polyline(qverts), qin.g, q(4), qin.bd);
  CHECK(substantiate_sigma(qin.phi, qin.bd, qin.g, qa));
  for (const auto& w : qa.chains) CHECK(substantiate_restricted_witnessing_chain(qin.phi, qin.bd, qin.g, w));
}

TEST_CASE("build_guided_configuration") {
  const GuidedResult coarse = build_guided_configuration(GroundTruth(AnalyticTestMap::identity(), 1), Integer(2), Integer(3));
  CHECK_FALSE(coarse.config);
  CHECK((!coarse.notes.empty() || !coarse.clauses.empty()));

  const GuidedResult bad = build_guided_configuration(GroundTruth(AnalyticTestMap::identity(), 4), Integer(4), Integer(2));
  CHECK_FALSE(bad.attempt);

  for (const auto& [m, n] : {std::pair{AnalyticTestMap::identity(), 4L}, std::pair{AnalyticTestMap::identity(), 5L}}) {
    const GuidedResult r = build_guided_configuration(GroundTruth(m, n), Integer(3), Integer(5));
    REQUIRE(r.attempt);
    // every generated chain passes its own substantiation predicate
    const AlgorithmInputs in = generate_inputs(GroundTruth(m, n), 16);
    const Configuration& c = *r.attempt;
    CHECK(substantiate_sigma(in.phi, in.bd, in.g, c.sigma));
    for (const auto& w : c.sigma.chains) CHECK(substantiate_restricted_witnessing_chain(in.phi, in.bd, in.g, w));
    CHECK(substantiate_tau(in.phi, in.bd, c.s0(), derive_constants(in).k0, c.tau, c.tau_k));
    CHECK(substantiate_cut_arc(in.phi, in.bd, c.c1, ArcSide::last));
    CHECK(substantiate_cut_arc(in.phi, in.bd, c.c2, ArcSide::first));
    // the candidate's output rectangle holds the true value
    const RationalRect out = config_output_rect(c, circular_diameter_bound(c));
    const RationalRect tv = true_value(m, RationalPoint{q(1), q(0)}, 20);
    CHECK(out.contains(tv));
  }
}
