# SPDX-License-Identifier: Apache-2.0
"""Regenerates tests/data/elementary_oracle.inc: ln, sqrt, sin, cos, atan and atan2 at
rational arguments, evaluated with mpmath at 60 significant digits."""
import sys
from fractions import Fraction as F

import mpmath

mpmath.mp.dps = 60


def mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


def s(x):
    return '"' + mpmath.nstr(x, 50, strip_zeros=False, min_fixed=-100, max_fixed=100) + '"'


points = [F(1, 3), F(-5, 7), F(2), F(22, 7), F(-3), F(1, 1024), F(7, 2), F(-1, 2), F(100, 3), F(0)]
positive = [F(1, 3), F(2), F(22, 7), F(1, 1024), F(7, 2), F(100, 3), F(1), F(3, 4), F(10**12 + 1, 10**6)]
pairs = [(F(1), F(1)), (F(-1), F(0)), (F(0), F(-1)), (F(-2, 3), F(-5, 7)), (F(3), F(-1, 9)), (F(-1, 7), F(1, 1000))]

lines = ["/* SPDX-License-Identifier: Apache-2.0 */", "// Generated by tests/oracles/elementary_oracle.py; do not edit."]
lines.append("#define BEXT_PI " + s(mpmath.pi))
lines.append("// {num, den, ln, sqrt}")
lines.append("#define BEXT_LN_SQRT_ROWS \\")
lines += [f"  {{{q.numerator}, {q.denominator}, {s(mpmath.log(mp(q)))}, {s(mpmath.sqrt(mp(q)))}}}, \\" for q in positive]
lines.append("")
lines.append("// {num, den, sin, cos, atan}")
lines.append("#define BEXT_TRIG_ROWS \\")
lines += [f"  {{{q.numerator}, {q.denominator}, {s(mpmath.sin(mp(q)))}, {s(mpmath.cos(mp(q)))}, {s(mpmath.atan(mp(q)))}}}, \\"
          for q in points]
lines.append("")
lines.append("// {y num, y den, x num, x den, atan2(y, x)}")
lines.append("#define BEXT_ATAN2_ROWS \\")
lines += [f"  {{{y.numerator}, {y.denominator}, {x.numerator}, {x.denominator}, {s(mpmath.atan2(mp(y), mp(x)))}}}, \\"
          for y, x in pairs]
lines.append("")
with open(sys.argv[1] if len(sys.argv) > 1 else "elementary_oracle.inc", "w") as f:
    f.write("\n".join(lines) + "\n")
