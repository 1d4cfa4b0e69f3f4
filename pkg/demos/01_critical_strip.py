"""
Critical integers of a twisted motive
=====================================

Hodge numbers, the t-invariant, the r-index, and the critical strip.
"""

from critperiods.arithmetic import CMExtension
from critperiods.characters import HeckeCharacter, canonical_cm_type
from critperiods.critical import (TwistData, critical_integers, critical_integers_oracle,
                                  r_index, t_invariant)
from critperiods.hodge import HodgeData
from critperiods.sampling import coefficients, real_field

# a rank two motive of weight 2 over Q with Hodge numbers (2, 0)
K = real_field(1, "Q")
E = coefficients(1)
M = HodgeData(K, E, 2, 2, {("s1", "1"): (2, 0)})
print(M.column("s1", "1"), "weight", M.weight)

# an imaginary quadratic field and a character of infinity type (4, -1)
L = CMExtension.standard(K, "L")
t, tbar = L.fibers["s1"]
chi = HeckeCharacter.primitive(L, {t: 4, tbar: -1}, "chi")
T = TwistData(M, chi, canonical_cm_type(chi))

# the t-invariant measures how far chi pushes the Hodge types apart
print("t =", t_invariant(chi, "s1"))
print("r =", r_index(T, "s1", "1"))

# critical integers from the closed formula and from the Hodge types directly
print("formula:", list(critical_integers(T)))
print("oracle: ", list(critical_integers_oracle(T)))
