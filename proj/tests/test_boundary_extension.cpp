/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/boundary_extension.hpp"
#include "bext/errors.hpp"
#include "bext/harness.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <algorithm>

using namespace bext;
using bext::testing::decimal;

namespace {

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }
RationalRect box(const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1) {
  return RationalRect(x0, x1, y0, y1);
}

const char* kPi = "3.14159265358979323846264338327950288419716939937510582097494";

AlgorithmInputs with_bd(const CompactApprox& bd) {
  return {FunctionApprox{{{DomainPiece::origin_disk(q(1, 2)), box(q(-1), q(1), q(-1), q(1))}}}, bd, ULACApprox{{1}}};
}

const ClauseOutcome* clause(const ClauseLog& log, const std::string& prefix) {
  const auto it = std::find_if(log.begin(), log.end(), [&](const ClauseOutcome& c) { return c.name.rfind(prefix, 0) == 0; });
  return it == log.end() ? nullptr : &*it;
}

SearchBudget guided(const AnalyticTestMap& map) {
  SearchBudget b;
  b.mode = SearchMode::guided;
  b.guide = make_guide(map, 4);
  return b;
}

}  // namespace

TEST_CASE("derive_constants") {
  // diameter exactly 1/3: sides 1/5 and 4/15
  const Constants a = derive_constants(with_bd(CompactApprox({box(q(0), q(1, 5), q(0), q(4, 15))})));
  CHECK(a.k0 == 3);

  // union diameter exactly 2: sides 6/5 and 8/5
  const Constants b = derive_constants(with_bd(CompactApprox({box(q(0), q(6, 5), q(0), q(8, 5))})));
  CHECK(b.N0 > 4 * decimal(kPi));
  CHECK(b.N0 <= q(88, 7));
  CHECK(b.c == 2);
  CHECK(b.fallback == box(q(-2), q(2), q(-2), q(2)));

  // c never drops below 1
  const Constants tiny = derive_constants(with_bd(CompactApprox({box(q(0), q(1, 8), q(0), q(1, 8))})));
  CHECK(tiny.c == 1);
  CHECK(tiny.fallback == box(q(-1), q(1), q(-1), q(1)));
}

TEST_CASE("config_output_rect") {
  const GroundTruth gt(AnalyticTestMap::identity(), 3);
  const GuidedResult res = build_guided_configuration(gt, Integer(2), Integer(4));
  REQUIRE(res.attempt);
  Configuration c = *res.attempt;
  c.phi_r0 = box(q(0), q(1), q(0), q(1));
  CHECK(config_output_rect(c, q(3, 8)) == box(q(-1, 2), q(3, 2), q(-1, 2), q(3, 2)));
  CHECK(config_output_rect(c, q(3)) == box(q(-4), q(5), q(-4), q(5)));
  // boundary of the dyadic step: 1/2 is not < 2^-1
  CHECK(config_output_rect(c, q(1, 2)) == box(q(-1), q(2), q(-1), q(2)));
  CHECK(config_output_rect(c, q(1, 3)).contains(config_output_rect(c, q(1, 5))));
  CHECK_THROWS_AS(config_output_rect(c, q(0)), PreconditionError);
}

TEST_CASE("check_configuration on a harness configuration") {
  const GroundTruth gt(AnalyticTestMap::identity(), 5);
  const AlgorithmInputs in = generate_inputs(gt, 16);
  const Constants k = derive_constants(in);
  const GuidedResult res = build_guided_configuration(gt, Integer(2), Integer(4));
  REQUIRE(res.attempt);
  const Configuration& c = *res.attempt;

  ClauseLog log;
  // The margin of condition (9) is about 21.6 here, far above any distance inside the unit scale.
  CHECK_FALSE(check_configuration(in, k.k0, k.N0, c, &log));
  for (const char* name : {"substantiate sigma", "substantiate C1", "substantiate C2", "substantiate tau",
                           "substantiate phi(1-s0)", "substantiate phi(r0)", "substantiate phi[1-s0,r0]",
                           "(2)", "(3)", "(4)", "(5)"}) {
    const ClauseOutcome* o = clause(log, name);
    REQUIRE_MESSAGE(o, name);
    CHECK_MESSAGE(o->passed, name, ": ", o->detail);
  }
  REQUIRE(clause(log, "(9)"));
  CHECK_FALSE(clause(log, "(9)")->passed);

  SUBCASE("tau with its middle link removed") {
    Configuration m = c;
    m.tau.chains.erase(m.tau.chains.begin() + static_cast<long>(m.tau.chains.size() / 2));
    ClauseLog mlog;
    CHECK_FALSE(check_configuration(in, k.k0, k.N0, m, &mlog));
    const ClauseOutcome* st = clause(mlog, "substantiate tau");
    CHECK_FALSE((st ? st->passed : clause(mlog, "structure")->passed));
  }
  SUBCASE("a C1 rectangle with denominator k0 + 1") {
    Configuration m = c;
    const RationalRect r = m.c1.chains.front().rects.front();
    const Rational nudge(Integer(1), k.k0 + 1);
    m.c1.chains.front().rects.front() = box(r.x_lo() - nudge, r.x_hi(), r.y_lo(), r.y_hi());
    ClauseLog mlog;
    CHECK_FALSE(check_configuration(in, k.k0, k.N0, m, &mlog));
    CHECK_FALSE(clause(mlog, "(1)")->passed);
    CHECK_FALSE(clause(mlog, "substantiate C1")->passed);
  }
}

TEST_CASE("algorithm1") {
  SUBCASE("a single origin disk admits no configuration") {
    const AlgorithmInputs in = with_bd(CompactApprox({box(q(9, 10), q(11, 10), q(-1, 10), q(1, 10))}));
    SearchBudget b;
    b.mode = SearchMode::exhaustive;
    const RunReport r = algorithm1(in, b);
    CHECK(r.fallback);
    CHECK(r.configurations_found == 0);
    CHECK(r.output_rect == derive_constants(in).fallback);
  }
  SUBCASE("identity harness, guided") {
    const AnalyticTestMap map = AnalyticTestMap::identity();
    const AlgorithmInputs in = generate_inputs(GroundTruth(map, 3), 16);
    const RunReport r = algorithm1(in, guided(map));
    CHECK(r.output_rect.contains(RationalPoint{q(1), q(0)}));
    CHECK(!r.configs.empty());
    // every accepted configuration contains the true value on its own
    for (const auto& cr : r.configs)
      if (cr.output) CHECK(cr.output->contains(RationalPoint{q(1), q(0)}));
    // more candidates never enlarge the output
    SearchBudget twice = guided(map);
    twice.candidates = twice.guide(in, {});
    const RunReport r2 = algorithm1(in, twice);
    CHECK(r.output_rect.contains(r2.output_rect));
  }
}

TEST_CASE("rotate_function_approx") {
  const auto v = box(q(0), q(1), q(0), q(1));
  const FunctionApprox phi{{{DomainPiece::origin_disk(q(1, 2)), v},
                            {DomainPiece(CarlesonRect(q(1, 2), q(3, 4), q(0), q(3, 4))), v},
                            {DomainPiece(CarlesonRect(q(1, 2), q(3, 4), q(0), q(1, 8))), v}}};
  CHECK(rotate_function_approx(phi, q(0), q(0)) == phi);

  const FunctionApprox r = rotate_function_approx(phi, q(-1, 8), q(1, 8));
  REQUIRE(r.pairs.size() == 2);
  CHECK(r.pairs[0] == phi.pairs[0]);
  CHECK(r.pairs[1].piece == DomainPiece(CarlesonRect(q(1, 2), q(3, 4), q(1, 8), q(5, 8))));

  CHECK_THROWS_AS(rotate_function_approx(phi, q(1, 8), q(-1, 8)), PreconditionError);
  CHECK_THROWS_AS(rotate_function_approx(phi, q(0), q(8, 5)), PreconditionError);
}

TEST_CASE("algorithm2") {
  const AnalyticTestMap map = AnalyticTestMap::identity();
  const AlgorithmInputs in = generate_inputs(GroundTruth(map, 3), 16);
  const Rational h = Rational::pow2(-4);

  const RunReport near_one = algorithm2(in, PointApprox{box(1 - h, 1 + h, -h, h)}, guided(map));
  CHECK(near_one.output_rect.contains(RationalPoint{q(1), q(0)}));

  const RunReport whole = algorithm2(in, PointApprox{box(q(-2), q(2), q(-2), q(2))}, guided(map));
  CHECK(whole.fallback);
  CHECK(whole.output_rect == derive_constants(in).fallback);

  CHECK_THROWS_AS(algorithm2(in, PointApprox{box(q(-1, 4), q(1, 4), q(-1, 4), q(1, 4))}, guided(map)), DomainError);
  CHECK_THROWS_AS(algorithm2(in, PointApprox{box(q(2), q(3), q(2), q(3))}, guided(map)), DomainError);
}

TEST_CASE("algorithm3") {
  const AnalyticTestMap map = AnalyticTestMap::identity();
  const AlgorithmInputs in = generate_inputs(GroundTruth(map, 3), 16);
  const Constants k = derive_constants(in);

  SUBCASE("fast path at the origin") {
    const RunReport r = algorithm3(in, PointApprox{box(q(-1, 16), q(1, 16), q(-1, 16), q(1, 16))}, guided(map));
    CHECK(r.fast_path);
    CHECK_FALSE(r.fallback);
    CHECK(r.output_rect == in.phi.pairs.front().value);
  }
  SUBCASE("interior point in no piece") {
    const AlgorithmInputs lone{FunctionApprox{{{DomainPiece(CarlesonRect(q(1, 2), q(3, 4), q(-1), q(1))),
                                                box(q(0), q(1), q(-1), q(1))}}},
                               in.bd, in.g};
    const RunReport r = algorithm3(lone, PointApprox{box(q(-1, 16), q(1, 16), q(-1, 16), q(1, 16))}, guided(map));
    CHECK(r.fast_path);
    CHECK(r.fallback);
    CHECK(r.output_rect == k.fallback);
  }
  SUBCASE("closure touching the circle") {
    // the corner (3/5, 4/5) lies on the circle
    const RunReport r = algorithm3(in, PointApprox{box(q(0), q(3, 5), q(0), q(4, 5))}, guided(map));
    CHECK(r.fallback);
    CHECK(r.output_rect == k.fallback);
  }
  SUBCASE("boundary path") {
    const Rational h = Rational::pow2(-3);
    const RunReport r = algorithm3(in, PointApprox{box(1 - h, 1 + h, -h, h)}, guided(map));
    CHECK_FALSE(r.fast_path);
    CHECK(r.output_rect.contains(RationalPoint{q(1), q(0)}));
  }
}
