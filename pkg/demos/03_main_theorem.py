"""
Critical values of twists in terms of CM periods
================================================

Both sides of the main identity are built and reduced to normal form;
the verdict compares exponent vectors modulo the stated field.
"""

from critperiods.periods.derive import compare, critical_range_above, verify_main_theorem
from critperiods.periods.expression import PeriodExpression, two_pi_i
from critperiods.periods.latex import to_latex
from critperiods.scenario import load

S = load("scenarios/main_n3.toml")
M, psi = S.motive(), S.character("psi")
ks = critical_range_above(M, psi)
print("critical k above w + n:", ks)

for k in ks[:3]:
    rep = verify_main_theorem(M, psi, k)
    print(f"k={k}: {rep.verdict}")
    print("   ", to_latex(rep.rhs_normal))

# a mutated right hand side leaves a visible residual
rep = verify_main_theorem(M, psi, ks[0])
bad = compare(rep.lhs_normal, rep.rhs_normal * PeriodExpression.of(two_pi_i()), rep.ambiguity)
print("mutated:", bad.verdict, bad.residual.terms())
