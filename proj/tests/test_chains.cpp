/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/chains.hpp"
#include "bext/errors.hpp"
#include "bext/harness.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

using namespace bext;
using bext::testing::decimal;

namespace {

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }
RationalRect box(const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1) {
  return RationalRect(x0, x1, y0, y1);
}
WitnessingChain single(const RationalRect& r, long m = 20) { return WitnessingChain(m, {r}); }

struct LambdaRow {
  long s0n, s0d, k, j;
  const char* u_lo;
  const char* u_hi;
};
const LambdaRow kLambda[] = {
#include "data/lambda_oracle.inc"
};

}  // namespace

TEST_CASE("witnessing chain invariants") {
  CHECK_THROWS_AS(WitnessingChain(0, {}), PreconditionError);
}

TEST_CASE("link membership") {
  const WitnessingChain w(3, {box(q(0), q(1), q(0), q(1))});
  CHECK(link_contains(w, RationalPoint{q(9, 8) - Rational::pow2(-10), q(1, 2)}));
  CHECK_FALSE(link_contains(w, RationalPoint{q(9, 8), q(1, 2)}));
  CHECK(link_closure_contains(w, RationalPoint{q(9, 8), q(1, 2)}));
  // corner neighborhoods are round
  CHECK_FALSE(link_contains(w, RationalPoint{q(1) + q(1, 10), q(1) + q(1, 10)}));
  CHECK(link_contains(w, box(q(-1, 16), q(17, 16), q(0), q(1))));
  CHECK_FALSE(link_contains(w, box(q(-1, 16), q(17, 16), q(-1, 8), q(9, 8))));
}

TEST_CASE("link_intersects") {
  const auto unit = box(q(0), q(1), q(0), q(1));
  CHECK(link_intersects(WitnessingChain(30, {unit, box(q(5), q(6), q(0), q(1))}), single(unit, 30)));
  CHECK_FALSE(link_intersects(single(unit, 10), single(box(q(5), q(6), q(5), q(6)), 10)));
  // gap 2^-8 < 2 * 2^-8
  CHECK(link_intersects(single(unit, 8), single(box(1 + Rational::pow2(-8), q(2), q(0), q(1)), 8)));
  CHECK_FALSE(link_intersects(single(unit, 8), single(box(1 + Rational::pow2(-7), q(2), q(0), q(1)), 8)));
}

TEST_CASE("chains, simple chains and circular chains") {
  const auto sq = [](long x10) { return single(box(q(x10, 10), q(x10 + 10, 10), q(0), q(1))); };
  CHECK(is_chain({sq(0)}));
  CHECK(is_chain({sq(0), sq(9), sq(18)}));
  CHECK_FALSE(is_chain({sq(0), sq(50)}));

  CHECK(is_simple_chain({sq(0), sq(9), sq(18)}));
  CHECK_FALSE(is_simple_chain({sq(0), sq(3), sq(6)}));
  CHECK_FALSE(is_simple_chain({sq(0), sq(9), sq(30)}));

  const auto bottom = single(box(q(0), q(3), q(0), q(1))), right = single(box(q(2), q(3), q(0), q(3)));
  const auto top = single(box(q(0), q(3), q(2), q(3))), left = single(box(q(0), q(1), q(0), q(3)));
  CHECK(is_circular_chain({bottom, right, top, left}));
  const auto low_top = single(box(q(0), q(3), q(99, 100), q(3)));
  CHECK_FALSE(is_circular_chain({bottom, right, low_top, left}));
  CHECK_THROWS_AS(is_circular_chain({bottom, right}), PreconditionError);
}

TEST_CASE("arc chain diameter bound") {
  const Rational root2 = decimal("1.4142135623730950488016887242096980785696718753769");
  const ArcChain one{{WitnessingChain(1, {box(q(0), q(1), q(0), q(1))})}};
  const Rational b = arc_chain_diameter_bound(one);
  CHECK(b >= root2 + 1);
  CHECK(b - (root2 + 1) <= Rational::pow2(-20));
  CHECK(arc_chain_diameter_bound(ArcChain{{one.chains[0], one.chains[0]}}) == b);
  const ArcChain finer{{WitnessingChain(4, {box(q(0), q(1), q(0), q(1))})}};
  CHECK(arc_chain_diameter_bound(finer) < b);
}

TEST_CASE("goes_straight_through") {
  const std::vector<WitnessingChain> links{single(box(q(0), q(11, 10), q(0), q(1))),
                                           single(box(q(1), q(21, 10), q(0), q(1))),
                                           single(box(q(2), q(3), q(0), q(1)))};
  const auto pt = [](long x10, long y10 = 5) { return RationalPoint{q(x10, 10), q(y10, 10)}; };
  CHECK(goes_straight_through(Polyline({pt(5), pt(25)}), links));
  CHECK(goes_straight_through(Polyline({pt(25), pt(5)}), links));
  // enters link 2, falls back fully into link 1, re-enters link 2
  CHECK_FALSE(goes_straight_through(Polyline({pt(5, 2), pt(15, 2), pt(5, 4), pt(15, 6), pt(25, 6)}), links));
  CHECK_FALSE(goes_straight_through(Polyline({pt(-10), pt(25)}), links));
  CHECK_THROWS_AS(goes_straight_through(Polyline({pt(5), pt(25)}), {links[0], links[2]}), PreconditionError);
}

TEST_CASE("substantiate_point_value") {
  const auto r = box(q(-1), q(1), q(-1), q(1));
  const FunctionApprox phi{{{DomainPiece::origin_disk(q(1, 2)), r}}};
  CHECK(substantiate_point_value(phi, RationalPoint{q(0), q(0)}, r));
  CHECK_FALSE(substantiate_point_value(phi, RationalPoint{q(0), q(0)}, box(q(-1), q(2), q(-1), q(1))));
  CHECK_FALSE(substantiate_point_value(phi, RationalPoint{q(3, 4), q(0)}, r));
  CHECK_THROWS_AS(substantiate_point_value(phi, RationalPoint{q(1), q(0)}, r), DomainError);
}

TEST_CASE("substantiate_segment_image") {
  const auto v1 = box(q(0), q(1), q(0), q(1)), v2 = box(q(0), q(2), q(0), q(1)), v3 = box(q(5), q(6), q(5), q(6));
  const FunctionApprox disk{{{DomainPiece::origin_disk(q(9, 10)), v1}}};
  const auto one = substantiate_segment_image(disk, q(1, 4), q(3, 4));
  REQUIRE(one);
  CHECK(one->rects == std::vector<RationalRect>{v1});
  CHECK(segment_image_substantiated(disk, q(1, 4), q(3, 4), *one));

  const FunctionApprox gap{{{DomainPiece::origin_disk(q(1, 2)), v1},
                            {DomainPiece(CarlesonRect(q(6, 10), q(9, 10), q(-1), q(1))), v2}}};
  CHECK_FALSE(substantiate_segment_image(gap, q(1, 4), q(3, 4)));

  const FunctionApprox chained{{{DomainPiece::origin_disk(q(1, 2)), v1},
                                {DomainPiece(CarlesonRect(q(4, 10), q(9, 10), q(-1), q(1))), v2},
                                {DomainPiece(CarlesonRect(q(4, 10), q(9, 10), q(1, 10), q(1))), v3}}};
  const auto two = substantiate_segment_image(chained, q(1, 4), q(3, 4));
  REQUIRE(two);
  CHECK(std::find(two->rects.begin(), two->rects.end(), v3) == two->rects.end());
  CHECK(std::find(two->rects.begin(), two->rects.end(), v2) != two->rects.end());
  CHECK_FALSE(segment_image_substantiated(chained, q(1, 4), q(3, 4), CompactApprox({v1, v3})));
}

TEST_CASE("restricted witnessing chains and sigma") {
  const CompactApprox bd({box(q(21, 50), q(12, 25), q(0), q(1, 10))});
  const ULACApprox g{{0, 2}};
  const auto a = box(q(0), q(1, 2), q(0), q(1, 4)), b = box(q(2, 5), q(4, 5), q(0), q(1, 4));
  const FunctionApprox phi;
  const WitnessingChain w(0, {a, b});
  CHECK(substantiate_restricted_witnessing_chain(phi, bd, g, w));
  CHECK_FALSE(substantiate_restricted_witnessing_chain(phi, bd, g, WitnessingChain(2, {a, b})));
  CHECK_FALSE(substantiate_restricted_witnessing_chain(phi, bd, g, WitnessingChain(1, {a, b})));
  CHECK_FALSE(substantiate_restricted_witnessing_chain(phi, bd, g, WitnessingChain(0, {a, box(q(1, 2), q(4, 5), q(0), q(1, 4))})));

  CHECK(substantiate_sigma(phi, bd, g, ArcChain{{w}}));
  CHECK(substantiate_sigma(phi, bd, g, ArcChain{{WitnessingChain(0, {a}), WitnessingChain(0, {b})}}));
  const auto c = box(q(3, 4), q(1), q(0), q(1, 4));
  CHECK_FALSE(substantiate_sigma(phi, bd, g, ArcChain{{WitnessingChain(0, {b}), WitnessingChain(0, {c})}}));
  CHECK_FALSE(substantiate_sigma(phi, bd, g, ArcChain{}));
}

TEST_CASE("substantiate_cut_arc") {
  const auto v1 = box(q(0), q(1), q(0), q(1)), v2 = box(q(1, 2), q(3, 2), q(0), q(1));
  const auto b = box(q(1), q(2), q(0), q(1));
  const FunctionApprox phi{{{DomainPiece::origin_disk(q(1, 2)), v1},
                            {DomainPiece(CarlesonRect(q(1, 4), q(3, 4), q(0), q(1))), v2}}};
  const CompactApprox bd({b});
  const ArcChain c1{{WitnessingChain(4, {v1}), WitnessingChain(4, {v2, b})}};
  CHECK(substantiate_cut_arc(phi, bd, c1, ArcSide::last));
  CHECK_FALSE(substantiate_cut_arc(phi, bd, c1, ArcSide::first));
  const ArcChain c2{{WitnessingChain(4, {b, v2}), WitnessingChain(4, {v1})}};
  CHECK(substantiate_cut_arc(phi, bd, c2, ArcSide::first));
  const ArcChain interior{{WitnessingChain(4, {v1}), WitnessingChain(4, {b}), WitnessingChain(4, {v2})}};
  CHECK_FALSE(substantiate_cut_arc(phi, bd, interior, ArcSide::last));
  const ArcChain congruent{{WitnessingChain(4, {box(q(0), q(1), q(1), q(2))}), WitnessingChain(4, {v2})}};
  CHECK_FALSE(substantiate_cut_arc(phi, bd, congruent, ArcSide::last));
}

TEST_CASE("lambda parameter ranges against the frozen oracle") {
  for (const auto& r : kLambda) {
    CAPTURE(r.k);
    CAPTURE(r.j);
    const LambdaRange lr = lambda_range(q(r.s0n, r.s0d), r.k, r.j);
    const Rational lo = decimal(r.u_lo), hi = decimal(r.u_hi), e = testing::oracle_slack();
    CHECK(lr.outer_lo <= lo + e);
    CHECK(hi - e <= lr.outer_hi);
    CHECK(lo - e <= lr.inner_lo);
    CHECK(lr.inner_hi <= hi + e);
    CHECK(lr.outer_hi - lr.outer_lo - (hi - lo) <= Rational::pow2(-40));
  }
  CHECK_THROWS_AS(lambda_range(q(1, 2), 2, 0), PreconditionError);
  CHECK_THROWS_AS(lambda_range(q(1, 2), 2, 3), PreconditionError);
}

TEST_CASE("lambda points and boxes") {
  const Rational s0 = q(1, 3);
  for (long i = -8; i <= 8; ++i) {
    const Rational u = q(i, 8);
    const RationalPoint z = lambda_point(s0, u);
    CHECK(((z - RationalPoint{q(1), q(0)}).norm_sq()) == s0 * s0);
    if (i < 0) CHECK(z.y.sign() > 0);
    if (i > 0) CHECK(z.y.sign() < 0);
    CHECK(lambda_box(s0, q(-1), q(1)).contains(z));
    if (i < 8) CHECK(lambda_box(s0, u, q(i + 1, 8)).contains(lambda_point(s0, q(2 * i + 1, 16))));
  }
}

TEST_CASE("tau from the harness and its mutations") {
  const GroundTruth gt(AnalyticTestMap::identity(), 4);
  const GuidedResult res = build_guided_configuration(gt, Integer(2), Integer(4));
  REQUIRE(res.attempt);
  const AlgorithmInputs in = generate_inputs(gt, 16);
  const Integer k0 = derive_constants(in).k0;
  const Configuration& c = *res.attempt;
  const Rational s0 = c.s0();
  CHECK(substantiate_tau(in.phi, in.bd, s0, k0, c.tau, c.tau_k));
  CHECK(substantiate_tau(in.phi, in.bd, s0, k0, c.tau));

  ArcChain foreign = c.tau;
  foreign.chains[0].rects[0] = foreign.chains[0].rects[0].expanded(Rational::pow2(-30));
  CHECK_FALSE(substantiate_tau(in.phi, in.bd, s0, k0, foreign, c.tau_k));
  REQUIRE(c.tau_k);
  CHECK_FALSE(substantiate_tau(in.phi, in.bd, s0, Integer(*c.tau_k - 1), c.tau, c.tau_k));

  CHECK(substantiate_sigma(in.phi, in.bd, in.g, c.sigma));
  CHECK(substantiate_cut_arc(in.phi, in.bd, c.c1, ArcSide::last));
  CHECK(substantiate_cut_arc(in.phi, in.bd, c.c2, ArcSide::first));
}
