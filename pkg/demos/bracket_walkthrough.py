"""Extended brackets of differential operators, step by step.

The bracket of two operators splits into the plain commutator plus a
correction term driven by a structure function s:

    [a, b] = (a b - b a) + a [s, b] - b [s, a].

This script evaluates the two classic worked pairs for several choices of s
and shows how the correction vanishes when s is constant.
"""

from geobracket import (
    ComplexRational,
    cos_of,
    coord,
    exponential,
    monomial,
    mult,
    partial_d,
    position,
    qcpb,
    sin_of,
    zero,
)

i = ComplexRational(0, 1)

# The exponential pair: F = -i e^{ix} d/dx against G = e^{ix}.
wave_f = mult(exponential(1, (i,))).scaled(-i) * partial_d(1)
wave_g = mult(exponential(1, (i,)))

print("pair: F = -i e^{ix} d/dx,  G = e^{ix} .")
for name, s in [
    ("0", zero(1)),
    ("x", coord(1, 0)),
    ("x^2", monomial(1, (2,))),
    ("cos x", cos_of(1)),
]:
    report = qcpb(s, wave_f, wave_g)
    print(f"  s = {name}")
    print(f"    commutator part: {report.qpb_part}")
    print(f"    correction part: {report.geomutator_part}")
    print(f"    total:           {report.total}")

# The canonical pair: d/dx against multiplication by x.  The total is the
# multiplication operator (1 + x s'), which acting on sin x gives
# (1 + x s') sin x.
print()
print("pair: d/dx against x .")
s = monomial(1, (2,))
report = qcpb(s, partial_d(1), position(1))
print(f"  s = x^2: total = {report.total}")
print(f"  applied to sin x: {report.total(sin_of(1))}")

# A constant structure function contributes nothing.
flat = qcpb(zero(1) + monomial(1, (0,), 5), partial_d(1), position(1))
print()
print(f"constant s: correction = {flat.geomutator_part}, total = {flat.total}")
