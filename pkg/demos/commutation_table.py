"""Canonical commutation relations corrected by a structure function.

The corrected momentum is p_j = -i hbar (d_j + (d_j s)).  Against positions
it satisfies [x_i, p_j] = i hbar theta_ij with theta_ij = delta_ij +
x_i d_j s, positions commute among themselves, and the momentum-momentum
bracket equals hbar^2 ((d_j s) d_i - (d_i s) d_j) -- which vanishes in one
dimension but not beyond.
"""

from geobracket import (
    Params,
    geometric_ccr_suite,
    geomentum,
    monomial,
    zero,
)

params = Params()

print("One dimension, s = x^2:")
s1 = monomial(1, (2,))
print(f"  corrected momentum: {geomentum(s1, 0, params)}")
table = geometric_ccr_suite(s1, params)
print(f"  theta_11:  {table.theta[0, 0]}")
print(f"  [x, p]:    {table.position_momentum[0, 0].total}")
print(f"  [p, p]:    {table.momentum_momentum[0, 0].total}")
print()

print("Flat case, s = 0:")
table0 = geometric_ccr_suite(zero(1), params)
print(f"  [x, p]:    {table0.position_momentum[0, 0].total}")
print()

print("Two dimensions, s = x1*x2:")
s2 = monomial(2, (1, 1))
table2 = geometric_ccr_suite(s2, params)
for i in range(2):
    for j in range(2):
        print(f"  theta_{i + 1}{j + 1} = {table2.theta[i, j]}")
for i in range(2):
    for j in range(2):
        print(f"  [x{i + 1}, p{j + 1}] = {table2.position_momentum[i, j].total}")
print(f"  [x1, x2] = {table2.position_position[0, 1].total}")
print(f"  [p1, p2] = {table2.momentum_momentum[0, 1].total}")
print("  (the momentum-momentum bracket is a genuine first-order remainder)")
