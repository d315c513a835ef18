# SPDX-License-Identifier: Apache-2.0
"""Regenerates tests/data/lambda_oracle.inc.

The arc |z - 1| = s0 inside the unit disk is z = 1 - s0 e^{i psi}, |psi| < acos(s0/2).
Split into 2k equal arcs, lambda_j (j > 0) has psi in [-j A/k, -(j-1) A/k] with A = acos(s0/2)
and lies above the real axis; lambda_{-j} is its mirror image.  With u = tan(psi/2) the
rows give the exact parameter range [u_lo, u_hi] of each arc.
"""
import sys
from fractions import Fraction as F

import mpmath

mpmath.mp.dps = 60


def s(x):
    return '"' + mpmath.nstr(x, 50, strip_zeros=False, min_fixed=-100, max_fixed=100) + '"'


rows = []
for s0 in (F(1, 2), F(1, 3), F(1, 8), F(3, 4)):
    A = mpmath.acos(mpmath.mpf(s0.numerator) / s0.denominator / 2)
    for k in (1, 2, 3, 5):
        for j in list(range(-k, 0)) + list(range(1, k + 1)):
            a = abs(j)
            lo, hi = -a * A / k, -(a - 1) * A / k
            if j < 0:
                lo, hi = -hi, -lo
            rows.append(f"  {{{s0.numerator}, {s0.denominator}, {k}, {j}, {s(mpmath.tan(lo / 2))}, {s(mpmath.tan(hi / 2))}}},")
with open(sys.argv[1] if len(sys.argv) > 1 else "lambda_oracle.inc", "w") as f:
    f.write("/* SPDX-License-Identifier: Apache-2.0 */\n// Generated by tests/oracles/lambda_oracle.py; do not edit.\n")
    f.write("// {s0 num, s0 den, k, j, u_lo, u_hi}\n" + "\n".join(rows) + "\n")
