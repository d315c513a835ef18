/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/errors.hpp"
#include "bext/harness.hpp"

#include <algorithm>
#include <functional>

namespace bext {

namespace {

using CI = std::pair<RationalInterval, RationalInterval>;

RationalInterval iadd(const RationalInterval& a, const RationalInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
RationalInterval isub(const RationalInterval& a, const RationalInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

RationalInterval imul(const RationalInterval& a, const RationalInterval& b) {
  const Rational p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(std::begin(p), std::end(p)), *std::max_element(std::begin(p), std::end(p))};
}

CI cmul(const CI& a, const CI& b) {
  return {isub(imul(a.first, b.first), imul(a.second, b.second)),
          iadd(imul(a.first, b.second), imul(a.second, b.first))};
}

CI horner(const std::vector<ComplexRational>& c, const CI& z) {
  // c[0] is the coefficient of z^1; there is no constant term.
  CI p{RationalInterval(c.back().re), RationalInterval(c.back().im)};
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    p = cmul(p, z);
    p.first = iadd(p.first, RationalInterval(c[i].re));
    p.second = iadd(p.second, RationalInterval(c[i].im));
  }
  return cmul(p, z);
}

Rational min_abs_sq(const RationalInterval& i) {
  if (i.lo.sign() <= 0 && i.hi.sign() >= 0) return Rational(0);
  const Rational m = min(i.lo.abs(), i.hi.abs());
  return m * m;
}

Rational max_abs_sq(const RationalInterval& i) {
  const Rational m = max(i.lo.abs(), i.hi.abs());
  return m * m;
}

RationalRect open_hull(const CI& v, const Rational& pad) {
  return RationalRect(v.first.lo - pad, v.first.hi + pad, v.second.lo - pad, v.second.hi + pad);
}

RationalRect snap(const RationalRect& r, long frac_bits) {
  return RationalRect(floor_to_grid(r.x_lo(), frac_bits), ceil_to_grid(r.x_hi(), frac_bits),
                      floor_to_grid(r.y_lo(), frac_bits), ceil_to_grid(r.y_hi(), frac_bits));
}

RationalRect meet(const RationalRect& a, const RationalRect& b) {
  const auto m = intersect(a, b);
  if (!m) throw InconsistencyError("nested enclosures of the same image are disjoint");
  return *m;
}

// Closed box containing the arc {e^{i theta} : a <= theta <= b}, b - a < 1.
CI arc_box(const Rational& a, const Rational& b, long bits) {
  const IntervalArith ia(bits);
  const auto [sa, ca] = ia.sincos(a);
  const auto [sb, cb] = ia.sincos(b);
  // Every arc point lies within the sagitta (b - a)^2 / 8 of the chord.
  const Rational sag = (b - a) * (b - a) / 8;
  return {RationalInterval(min(ca.lo, cb.lo) - sag, max(ca.hi, cb.hi) + sag),
          RationalInterval(min(sa.lo, sb.lo) - sag, max(sa.hi, sb.hi) + sag)};
}

constexpr long kGridBits = 64;
const long kBoundaryRoots = 16;

}  // namespace

AnalyticTestMap::AnalyticTestMap(std::vector<ComplexRational> coefficients, UnivalenceCertificate cert)
    : c_(std::move(coefficients)), cert_(cert) {
  if (c_.empty() || (c_[0].re.is_zero() && c_[0].im.is_zero()))
    throw PreconditionError("test map needs a nonzero linear coefficient");
  while (c_.size() > 1 && c_.back().re.is_zero() && c_.back().im.is_zero()) c_.pop_back();
  if (cert_ == UnivalenceCertificate::bounded_second_coefficient) {
    if (c_.size() > 2) throw PreconditionError("bounded-second-coefficient maps have degree at most 2");
    if (c_.size() == 2) {
      const Rational a = c_[0].re * c_[0].re + c_[0].im * c_[0].im;
      const Rational b = c_[1].re * c_[1].re + c_[1].im * c_[1].im;
      if (4 * b > a) throw PreconditionError("univalence needs |c2/c1| <= 1/2");
    }
  }
}

AnalyticTestMap AnalyticTestMap::identity() {
  return AnalyticTestMap({{Rational(1), Rational(0)}}, UnivalenceCertificate::identity);
}

AnalyticTestMap AnalyticTestMap::quadratic(const Rational& c2) {
  return AnalyticTestMap({{Rational(1), Rational(0)}, {c2, Rational(0)}},
                         UnivalenceCertificate::bounded_second_coefficient);
}

AnalyticTestMap AnalyticTestMap::parse(const std::string& name) {
  if (name == "identity") return identity();
  if (name.rfind("quad:", 0) == 0) {
    Rational c2;
    try {
      c2 = Rational::parse(name.substr(5));
    } catch (const Error& e) {
      throw SchemaError("bad quad coefficient '" + name.substr(5) + "': " + e.what());
    }
    try {
      return quadratic(c2);
    } catch (const PreconditionError& e) {
      throw SchemaError(std::string("map ") + name + ": " + e.what());
    }
  }
  throw SchemaError("unknown map '" + name + "' (expected identity or quad:NUM/DEN)");
}

std::string AnalyticTestMap::name() const {
  if (c_.size() == 1 && c_[0] == ComplexRational{Rational(1), Rational(0)}) return "identity";
  if (c_.size() == 2 && c_[0] == ComplexRational{Rational(1), Rational(0)} && c_[1].im.is_zero())
    return "quad:" + c_[1].re.str();
  std::string s = "poly";
  for (const auto& c : c_) s += ":" + c.re.str() + "+" + c.im.str() + "i";
  return s;
}

RationalPoint AnalyticTestMap::operator()(const RationalPoint& z) const {
  Rational pr = c_.back().re, pi = c_.back().im;
  const auto mul = [&] {
    const Rational r = pr * z.x - pi * z.y;
    pi = pr * z.y + pi * z.x;
    pr = r;
  };
  for (std::size_t i = c_.size() - 1; i-- > 0;) {
    mul();
    pr += c_[i].re;
    pi += c_[i].im;
  }
  mul();
  return {pr, pi};
}

CI AnalyticTestMap::eval_box(const RationalInterval& x, const RationalInterval& y) const { return horner(c_, {x, y}); }

CI AnalyticTestMap::eval_derivative_box(const RationalInterval& x, const RationalInterval& y) const {
  // phi'(z) = sum k c_k z^{k-1}: evaluate z * (sum k c_k z^{k-1}) / z without division by
  // treating the shifted coefficients as a polynomial in z and adding the constant.
  if (c_.size() == 1) return {RationalInterval(c_[0].re), RationalInterval(c_[0].im)};
  std::vector<ComplexRational> d;
  for (std::size_t k = 2; k <= c_.size(); ++k) d.push_back({Rational(long(k)) * c_[k - 1].re, Rational(long(k)) * c_[k - 1].im});
  CI p = horner(d, {x, y});
  p.first = iadd(p.first, RationalInterval(c_[0].re));
  p.second = iadd(p.second, RationalInterval(c_[0].im));
  return p;
}

GroundTruth::GroundTruth(AnalyticTestMap m, long res) : map(std::move(m)), resolution(res) {
  if (resolution < 1) throw PreconditionError("resolution must be at least 1");
}

RationalRect eval_interval(const AnalyticTestMap& map, const DomainPiece& piece, long k) {
  const RationalRect box = piece.bounding_box(kGridBits);
  const long s = map.degree() == 1 ? 1 : 8;
  std::optional<CI> acc;
  for (long i = 0; i < s; ++i)
    for (long j = 0; j < s; ++j) {
      const RationalInterval x(box.x_lo() + box.width() * Rational(i) / Rational(s),
                               box.x_lo() + box.width() * Rational(i + 1) / Rational(s));
      const RationalInterval y(box.y_lo() + box.height() * Rational(j) / Rational(s),
                               box.y_lo() + box.height() * Rational(j + 1) / Rational(s));
      const CI v = map.eval_box(x, y);
      if (!acc) {
        acc = v;
      } else {
        acc->first = RationalInterval(min(acc->first.lo, v.first.lo), max(acc->first.hi, v.first.hi));
        acc->second = RationalInterval(min(acc->second.lo, v.second.lo), max(acc->second.hi, v.second.hi));
      }
    }
  return open_hull(*acc, Rational::pow2(-(k + 4)));
}

FunctionApprox generate_phi_approx(const GroundTruth& gt) {
  const long n = gt.resolution;
  const Rational two_pi = 2 * pi_enclosure(kGridBits).hi;
  const auto value = [&](const DomainPiece& u, long level) {
    return snap(eval_interval(gt.map, u, kGridBits), level - 1);
  };
  FunctionApprox out;
  const DomainPiece disk = DomainPiece::origin_disk(Rational(1, 2));
  out.pairs.push_back({disk, value(disk, n)});
  struct Node {
    Rational lo, hi;
    RationalRect v;
  };
  for (long b = 1; b <= n; ++b) {
    const Rational r1 = 1 - Rational::pow2(-b) - Rational::pow2(-(b + 4)), r2 = 1 - Rational::pow2(-(b + 1));
    const auto piece = [&](const Rational& lo, const Rational& hi) { return DomainPiece(CarlesonRect(r1, r2, lo, hi)); };
    // Level b: 2^b pieces of width 1.5 W starting at multiples of W = 2 pi / 2^b.
    const Rational w = two_pi * Rational::pow2(-b);
    std::vector<Node> nodes;
    for (long a = 0; a < (1L << b); ++a) {
      const Rational lo = Rational(a) * w - w / 4, hi = lo + 3 * w / 2;
      nodes.push_back({lo, hi, value(piece(lo, hi), b)});
    }
    // Each finer level splits a piece into three halves-width pieces starting at 0, 1/4, 1/2 of it.
    for (long level = b + 1; level <= n; ++level) {
      std::vector<Node> next;
      for (const auto& p : nodes) {
        const Rational q = (p.hi - p.lo) / 4;
        for (long i = 0; i < 3; ++i) {
          const Rational lo = p.lo + Rational(i) * q, hi = lo + 2 * q;
          next.push_back({lo, hi, meet(value(piece(lo, hi), level), p.v)});
        }
      }
      nodes = std::move(next);
    }
    for (const auto& p : nodes) out.pairs.push_back({piece(p.lo, p.hi), p.v});
  }
  return out;
}

CompactApprox generate_boundary_approx(const GroundTruth& gt) {
  const long n = gt.resolution;
  const Rational two_pi = 2 * pi_enclosure(kGridBits).hi;
  const Rational target = Rational(81, 100) * Rational::pow2(-2 * n);
  const Rational pad = Rational::pow2(-(2 * n + 64));
  std::vector<RationalRect> out;
  const std::function<void(const Rational&, const Rational&, const std::optional<RationalRect>&, int)> walk =
      [&](const Rational& a, const Rational& b, const std::optional<RationalRect>& parent, int depth) {
        const CI z = arc_box(a, b, 2 * n + 64);
        RationalRect v = open_hull(gt.map.eval_box(z.first, z.second), pad);
        if (parent) v = meet(v, *parent);
        if (rect_diameter_sq(v) <= target) {
          out.push_back(v);
          return;
        }
        if (depth > 40) throw CapabilityError("boundary cover does not converge");
        const Rational m = (a + b) / 2;
        walk(a, m, v, depth + 1);
        walk(m, b, v, depth + 1);
      };
  for (long i = 0; i < kBoundaryRoots; ++i)
    walk(two_pi * Rational(i) / Rational(kBoundaryRoots), two_pi * Rational(i + 1) / Rational(kBoundaryRoots),
         std::nullopt, 0);
  return CompactApprox(std::move(out));
}

long ulac_constant(const AnalyticTestMap& map) {
  const auto& c = map.coefficients();
  if (map.degree() == 2) {
    const Rational a = c[0].re * c[0].re + c[0].im * c[0].im;
    const Rational b = c[1].re * c[1].re + c[1].im * c[1].im;
    if (!(4 * b < a))
      throw CapabilityError("ULAC certificate: phi' = c1 + 2 c2 z vanishes on the closed disk (|c2/c1| >= 1/2)");
  } else if (map.degree() > 2 && map.certificate() != UnivalenceCertificate::externally_asserted) {
    throw CapabilityError("ULAC certificate: no certificate that phi' is zero-free for degree > 2");
  }
  const Rational two_pi = 2 * pi_enclosure(kGridBits).hi;
  constexpr long arcs = 256;
  std::optional<Rational> inf2, sup2;
  for (long i = 0; i < arcs; ++i) {
    const CI z = arc_box(two_pi * Rational(i) / Rational(arcs), two_pi * Rational(i + 1) / Rational(arcs), 64);
    const CI d = map.eval_derivative_box(z.first, z.second);
    const Rational lo = min_abs_sq(d.first) + min_abs_sq(d.second), hi = max_abs_sq(d.first) + max_abs_sq(d.second);
    inf2 = inf2 ? min(*inf2, lo) : lo;
    sup2 = sup2 ? max(*sup2, hi) : hi;
  }
  if (inf2->is_zero()) throw CapabilityError("ULAC certificate: |phi'| not bounded away from 0 on the circle");
  const Rational ratio = *sup2 / *inf2;
  long e = 0;
  while (Rational::pow2(2 * e) < ratio) ++e;
  return e + 2;
}

ULACApprox generate_ulac(const GroundTruth& gt, long length) {
  if (length < 0) throw PreconditionError("ULAC length must be nonnegative");
  const long c = ulac_constant(gt.map);
  ULACApprox g;
  for (long m = 0; m < length; ++m) g.values.push_back(m + c);
  return g;
}

AlgorithmInputs generate_inputs(const GroundTruth& gt, long ulac_length) {
  return {generate_phi_approx(gt), generate_boundary_approx(gt), generate_ulac(gt, ulac_length)};
}

RationalRect true_value(const AnalyticTestMap& map, const RationalPoint& p, long k) {
  if (p.norm_sq() > Rational(1)) throw PreconditionError("true_value needs |p| <= 1");
  return RationalRect::around(map(p), Rational::pow2(-(k + 2)));
}

RationalPoint unit_point(const Rational& theta, long bits) {
  const IntervalArith ia(bits + 8);
  const auto [s, c] = ia.sincos(theta);
  const Rational a = c.mid(), b = s.mid();
  // Stereographic parameter from the pole opposite the point keeps t in [-1, 1].
  const Rational t = floor_to_grid(b / (1 + a.abs()), bits + 4);
  const Rational den = 1 + t * t;
  const Rational x = (1 - t * t) / den;
  return {a.sign() < 0 ? -x : x, 2 * t / den};
}

}  // namespace bext
