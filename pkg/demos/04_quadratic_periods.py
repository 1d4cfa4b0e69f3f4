"""
Quadratic periods as quotients
==============================

Each Q_j is a quotient of Deligne periods of two neighbouring interval
twists; the quotients telescope to the direct one.
"""

import random

from critperiods.hodge import GLnWeight, hodge_from_weight
from critperiods.periods.quadratic import qj_expr, verify_qj, verify_telescoping
from critperiods.periods.rewrite import normalize
from critperiods.sampling import cm_setup, coefficients, real_field

K = real_field(1)
M = hodge_from_weight(GLnWeight(K, {"s1": (3, 2, 1, -1, -2, -3)}), E=coefficients(1))
ext, Phi = cm_setup(1, random.Random(2))

for j in (1, 2):
    q = normalize(qj_expr(M, "1", j, Phi))
    print(f"Q_{j}:", " * ".join(q.terms()))
    print("   quotient", verify_qj(M, "1", j, Phi).verdict,
          " telescoping", verify_telescoping(M, "1", j, Phi).verdict)
