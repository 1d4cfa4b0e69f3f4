"""
Descent through a Brauer relation
=================================

A relation 1 = sum n_j Ind_{H_j} 1 gives fields K_j with
sum n_j [K_j:Q] = [K:Q]; base changes to each K_j multiply back
to the period identity over K.
"""

import random

from critperiods.groups.brauer import brauer_decompose, descent_data_from_decomposition
from critperiods.groups.finite import fixture
from critperiods.periods.potential import verify_potentially_automorphic
from critperiods.sampling import random_main_instance

inst = random_main_instance(random.Random(8), 3, 1, delta=True)
data = descent_data_from_decomposition(brauer_decompose(fixture("A5")), 1)
for d in data:
    print(f"  K_j={d.subfield_label:4s} [K_j:Q]={d.degree_over_Q:3d}  n_j={d.multiplicity:+d}")

rep = verify_potentially_automorphic(inst.M, inst.psi, inst.ks[0], data)
print("k =", inst.ks[0], "verdict", rep.verdict)

# a wrong multiplicity breaks the degree identity
data[0] = type(data[0])(data[0].subfield_label, data[0].degree_over_Q,
                        data[0].degree_over_K, data[0].multiplicity + 1)
print("perturbed:", verify_potentially_automorphic(inst.M, inst.psi, inst.ks[0], data).verdict)
