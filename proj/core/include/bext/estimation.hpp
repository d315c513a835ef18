/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "bext/interval.hpp"

namespace bext {

/// Arguments of the length-area bound: 0 < s0 < 1, N0 > 0 (an upper bound on the
/// area of the closed target domain), 0 < r < 1.
struct MarginParams {
  Rational s0;
  Rational N0;
  Rational r;

  MarginParams(Rational s0_, Rational N0_, Rational r_);
};

/// chi = 2 pi N0 / (ln s0 - ln(1 - r)), enclosed in an interval of width <= 2^-k.
/// Throws DivisionByZeroError when s0 = 1 - r and SignError when s0 < 1 - r.
RationalInterval chi_enclosure(const MarginParams& p, long k);

/// M >= m = 2 sqrt(chi) with M - m <= 2^-k.
Rational margin_upper(const MarginParams& p, long k);

}  // namespace bext
