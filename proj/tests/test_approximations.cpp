/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/approximations.hpp"
#include "bext/errors.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace bext;
using bext::testing::decimal;

namespace {

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }
RationalRect square(const Rational& x, const Rational& y, const Rational& side) {
  return RationalRect(x, x + side, y, y + side);
}

const char* kSqrt2 = "1.4142135623730950488016887242096980785696718753769";

}  // namespace

TEST_CASE("domain pieces") {
  CHECK_THROWS_AS(DomainPiece::origin_disk(q(1)), PreconditionError);
  CHECK_THROWS_AS(DomainPiece::origin_disk(q(0)), PreconditionError);
  const auto disk = DomainPiece::origin_disk(q(1, 2));
  CHECK(disk.contains(RationalPoint{q(1, 4), q(-1, 4)}) == Certainty::yes);
  CHECK(disk.contains(RationalPoint{q(1, 2), q(0)}) == Certainty::no);
  CHECK(disk.contains(RationalRect(q(-1, 4), q(1, 4), q(-1, 4), q(1, 4))) == Certainty::yes);
  CHECK(disk.contains(RationalRect(q(-1, 4), q(1, 2), q(-1, 4), q(1, 4))) == Certainty::no);
  CHECK(disk.bounding_box(64) == RationalRect(q(-1, 2), q(1, 2), q(-1, 2), q(1, 2)));
  CHECK(disk.meets_segment(q(1, 4), q(3, 4)) == Certainty::yes);
  CHECK(disk.meets_segment(q(1, 2), q(3, 4)) == Certainty::no);
  CHECK(disk.closure_meets_tail(q(1, 2)) == Certainty::yes);
  CHECK(disk.closure_meets_tail(q(3, 5)) == Certainty::no);

  const DomainPiece band(CarlesonRect(q(1, 2), q(3, 4), q(-1, 4), q(1, 4)));
  CHECK(band.positive_axis_interval() == std::pair{q(1, 2), q(3, 4)});
  CHECK(band.closure_meets_tail(q(3, 4)) == Certainty::yes);
  CHECK(band.closure_meets_tail(q(4, 5)) == Certainty::no);
  const DomainPiece off_axis(CarlesonRect(q(1, 2), q(3, 4), q(1, 4), q(1, 2)));
  CHECK_FALSE(off_axis.positive_axis_interval());
  CHECK(off_axis.closure_meets_tail(q(1, 10)) == Certainty::no);
  // 2 pi lies inside (6, 7): the piece straddles the positive axis one turn up
  const DomainPiece shifted(CarlesonRect(q(1, 2), q(3, 4), q(6), q(7)));
  CHECK(shifted.positive_axis_interval() == std::pair{q(1, 2), q(3, 4)});
  CHECK(shifted.closure_meets_tail(q(1, 2)) == Certainty::yes);
}

TEST_CASE("compact approximation invariants") {
  CHECK_THROWS_AS(CompactApprox({}), PreconditionError);
}

TEST_CASE("compact_diameter_bound") {
  const Rational w = Rational::pow2(-20), root2 = decimal(kSqrt2);
  const CompactApprox one({square(q(0), q(0), q(1))});
  const Rational b = compact_diameter_bound(one);
  CHECK(b >= root2);
  CHECK(b - root2 <= w);
  CHECK(compact_diameter_bound(CompactApprox({square(q(0), q(0), q(1)), square(q(5), q(5), q(1))})) == b);
  const Rational half = compact_diameter_bound(CompactApprox({square(q(0), q(0), q(1, 4)), square(q(1), q(0), q(1, 2))}));
  CHECK(half >= root2 / 2);
  CHECK(half - root2 / 2 <= w);
}

TEST_CASE("union_diameter_sq") {
  CHECK(union_diameter_sq(CompactApprox({square(q(0), q(0), q(1))})) == 2);
  CHECK(union_diameter_sq(CompactApprox({square(q(0), q(0), q(1)), square(q(3), q(3), q(1))})) == 32);

  // brute force over all corner pairs
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(-30, 30), w(1, 6);
  for (int t = 0; t < 300; ++t) {
    std::vector<RationalRect> rs;
    const int n = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      const long x = c(rng), y = c(rng);
      rs.emplace_back(q(x, 4), q(x + w(rng), 4), q(y, 4), q(y + w(rng), 4));
    }
    Rational best(0);
    for (const auto& a : rs)
      for (const auto& b : rs)
        for (const Rational* xa : {&a.x_lo(), &a.x_hi()})
          for (const Rational* ya : {&a.y_lo(), &a.y_hi()})
            for (const Rational* xb : {&b.x_lo(), &b.x_hi()})
              for (const Rational* yb : {&b.y_lo(), &b.y_hi()})
                best = max(best, (*xa - *xb) * (*xa - *xb) + (*ya - *yb) * (*ya - *yb));
    const CompactApprox cover(rs);
    CHECK(union_diameter_sq(cover) == best);
    for (const auto& r : rs) CHECK(union_diameter_sq(cover) >= rect_diameter_sq(r));
  }
}

TEST_CASE("function_approx_no_worse") {
  const DomainPiece disk = DomainPiece::origin_disk(q(1, 2));
  const DomainPiece band(CarlesonRect(q(1, 4), q(3, 4), q(0), q(1)));
  const RationalRect v(q(-1), q(1), q(-1), q(1));
  const FunctionApprox a{{{disk, v}, {band, RationalRect(q(0), q(1), q(0), q(1))}}};
  CHECK(function_approx_no_worse(a, a));

  FunctionApprox enlarged = a;
  enlarged.pairs[1].value = RationalRect(q(-1), q(2), q(0), q(1));
  CHECK(function_approx_no_worse(a, enlarged));
  CHECK_FALSE(function_approx_no_worse(enlarged, a));

  const FunctionApprox elsewhere{{{DomainPiece(CarlesonRect(q(1, 4), q(3, 4), q(2), q(3))), v}}};
  CHECK_FALSE(function_approx_no_worse(elsewhere, FunctionApprox{{{band, v}}}));

  // two halves, both with values inside V, cover the band
  const FunctionApprox halves{{{DomainPiece(CarlesonRect(q(1, 4), q(3, 4), q(-1, 10), q(6, 10))), v},
                               {DomainPiece(CarlesonRect(q(1, 4), q(3, 4), q(1, 2), q(11, 10))), v}}};
  CHECK(function_approx_no_worse(halves, FunctionApprox{{{band, v}}}));
  // a gap between the halves
  const FunctionApprox gap{{{DomainPiece(CarlesonRect(q(1, 4), q(3, 4), q(-1, 10), q(4, 10))), v},
                            {DomainPiece(CarlesonRect(q(1, 4), q(3, 4), q(1, 2), q(11, 10))), v}}};
  CHECK_FALSE(function_approx_no_worse(gap, FunctionApprox{{{band, v}}}));
}

TEST_CASE("compact_approx_no_worse") {
  const CompactApprox coarse({square(q(0), q(0), q(1))});
  const CompactApprox fine({square(q(0), q(0), q(1, 2)), square(q(1, 2), q(1, 2), q(1, 2))});
  CHECK(compact_approx_no_worse(fine, coarse));
  CHECK(compact_approx_no_worse(coarse, coarse));
  CHECK_FALSE(compact_approx_no_worse(coarse, fine));
  const CompactApprox stray({square(q(0), q(0), q(1, 2)), square(q(3), q(3), q(1, 2))});
  CHECK_FALSE(compact_approx_no_worse(stray, coarse));
}

TEST_CASE("ULAC lookups") {
  const ULACApprox g{{2, 3, 5}};
  CHECK(ulac_lookup(g, 1) == 3);
  CHECK_FALSE(ulac_lookup(g, 3));
  CHECK_FALSE(ulac_lookup(g, -1));
  CHECK_FALSE(ulac_lookup(ULACApprox{}, 0));
  CHECK(ulac_extends(ULACApprox{{2, 3, 5, 8}}, g));
  CHECK_FALSE(ulac_extends(ULACApprox{{2, 4, 5, 8}}, g));
  CHECK_FALSE(ulac_extends(ULACApprox{{2, 3}}, g));
}

TEST_CASE("in_range is exact rectangle equality") {
  const FunctionApprox phi{{{DomainPiece::origin_disk(q(1, 2)), square(q(0), q(0), q(1))}}};
  CHECK(phi.in_range(square(q(0), q(0), q(1))));
  CHECK_FALSE(phi.in_range(square(q(1, 2), q(0), q(1))));
  CHECK_FALSE(phi.in_range(square(q(0), q(0), q(1, 2))));
}
