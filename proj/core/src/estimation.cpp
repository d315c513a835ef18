/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/estimation.hpp"

#include "bext/errors.hpp"

#include <algorithm>

namespace bext {

MarginParams::MarginParams(Rational s0_, Rational N0_, Rational r_)
    : s0(std::move(s0_)), N0(std::move(N0_)), r(std::move(r_)) {
  const Rational one(1);
  if (!(s0.sign() > 0 && s0 < one)) throw PreconditionError("s0 must lie in (0, 1)");
  if (!(r.sign() > 0 && r < one)) throw PreconditionError("r must lie in (0, 1)");
  if (N0.sign() <= 0) throw PreconditionError("N0 must be positive");
}

RationalInterval chi_enclosure(const MarginParams& p, long k) {
  const Rational tail = 1 - p.r;
  if (p.s0 == tail) throw DivisionByZeroError("chi: s0 = 1 - r makes the denominator vanish");
  if (p.s0 < tail) throw SignError("chi: s0 < 1 - r makes the denominator negative");
  // Scale of the result, so the working precision covers large chi.
  const long mag = std::max(0L, p.N0.ilog2() + 4);
  for (long w = k + mag + 16;; w += 32) {
    const RationalInterval a = ln_enclosure(p.s0, w), b = ln_enclosure(tail, w);
    const Rational den_lo = a.lo - b.hi, den_hi = a.hi - b.lo;
    if (den_lo.sign() <= 0) continue;  // the logarithms are too close to separate yet
    const RationalInterval pi = pi_enclosure(w);
    const Rational lo = floor_to_grid(2 * pi.lo * p.N0 / den_hi, k + 2);
    const Rational hi = ceil_to_grid(2 * pi.hi * p.N0 / den_lo, k + 2);
    if (hi - lo <= Rational::pow2(-k)) return {lo, hi};
  }
}

Rational margin_upper(const MarginParams& p, long k) {
  for (long kk = k + 4;; kk += 16) {
    const RationalInterval chi = chi_enclosure(p, kk);
    const Rational up = sqrt_upper(4 * chi.hi, k + 2);
    const Rational down = sqrt_lower(4 * chi.lo, k + 2);
    if (up - down <= Rational::pow2(-k)) return up;
  }
}

}  // namespace bext
