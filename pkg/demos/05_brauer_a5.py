"""
Brauer decomposition of the trivial character
=============================================

Solvable groups need no descent. For A5 the trivial character is an
integer combination of permutation characters on solvable subgroups.
"""

import numpy as np

from critperiods.groups.brauer import brauer_decompose
from critperiods.groups.characters import induce_trivial
from critperiods.groups.finite import fixture

G = fixture("A5")
print(G, "solvable:", G.is_solvable())
print("subgroups", len(G.all_subgroups), "up to conjugacy", len(G.subgroup_classes))

dec = brauer_decompose(G)
for row in dec.describe():
    print(f"  {row['multiplicity']:+d} x Ind from order {row['order']} (index {row['index']})")

# the combination evaluated class by class
table = np.array([[float(v) for v in induce_trivial(G, H).values] for H, _ in dec.terms])
n = np.array([m for _, m in dec.terms])
print("combination on classes:", n @ table)
print("exact check:", dec.verify(), " degree identity:", dec.degree_identity())
