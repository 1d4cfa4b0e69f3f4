"""
Interval twists
===============

For each r the builder returns a character whose twist has r-index r,
and the one-point builder isolates a single critical integer.
"""

import random

from critperiods.critical import (TwistData, build_interval_twist,
                                  critical_integers_oracle, lemma_r_value, r_index, section5_twist, section5_weight)
from critperiods.errors import PeriodCalcError
from critperiods.hodge import GLnWeight, hodge_from_weight
from critperiods.sampling import cm_setup, coefficients, real_field

K = real_field(2)
M = hodge_from_weight(GLnWeight(K, {"s1": (2, 1, -1, -2), "s2": (4, 3, -3, -4)}),
                      E=coefficients(1))
ext, Phi = cm_setup(2, random.Random(0))
for s in K.embeddings:
    print(s, M.column(s, "1"))

# the r-index of the twist is n - r below the midpoint and r above it
for r in range(M.rank + 1):
    try:
        chi = build_interval_twist(M, Phi, r, "1")
    except PeriodCalcError as exc:
        print(f"r={r}: {type(exc).__name__}")
        continue
    T = TwistData(M, chi, Phi)
    print(f"r={r}: expect {lemma_r_value(M.rank, r)}, got",
          [r_index(T, s, "1") for s in K.embeddings],
          "critical", list(critical_integers_oracle(T))[:6])

# the one-point character: w0 is forced by congruences on n
w0 = section5_weight(M.rank)
T = section5_twist(M, Phi, 3)
print("w0 =", w0, "critical set", list(critical_integers_oracle(T)))
