"""Descent from automorphic base changes to the potentially automorphic case.

Each descent step carries a synthetic CM extension L_j/K_j with
[K_j:K] = d_j, whose embeddings sit above those of L and K. The automorphic
expressions over the K_j are multiplied with multiplicities n_j and folded
back onto generators over K with the CM-period and delta compatibilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..arithmetic import CMExtension, TotallyRealField
from ..characters import (Atom, CharacterWord, HeckeCharacter, base_change,
                          canonical_cm_type, induced_base_lift)
from ..errors import PeriodCalcError
from ..hodge import (DescentDatum, HodgeData, base_change_motive,
                     restrict_scalars_degrees)
from .derive import (VerificationReport, compare, main_theorem_lhs, rhs_chain,
                     setup, theorem_bound)
from .expression import PeriodExpression, cm_period, delta_total, product
from .rewrite import normalize, substitute


@dataclass(frozen=True)
class DescentStep:
    datum: DescentDatum
    ext: CMExtension
    lift: tuple[tuple[str, str], ...]

    @property
    def multiplicity(self) -> int:
        return self.datum.multiplicity

    @property
    def lift_map(self) -> dict[str, str]:
        return dict(self.lift)


def synthetic_extension(ext: CMExtension, datum: DescentDatum) -> DescentStep:
    """L_j = L K_j with d_j copies of every embedding, inside the same ambient field."""
    K = ext.base
    d = datum.degree_over_K
    if d == 1 and datum.subfield_label == K.label:
        return DescentStep(datum, ext, tuple((t, t) for t in ext.embeddings))
    Kj = TotallyRealField(datum.subfield_label,
                          tuple(f"{s}.{i}" for s in K.embeddings for i in range(d)))
    emb, conj, res, lift = [], {}, {}, {}
    for t in ext.embeddings:
        for i in range(d):
            tj = f"{t}.{i}"
            emb.append(tj)
            conj[tj] = f"{ext.conj(t)}.{i}"
            res[tj] = f"{ext.restrict(t)}.{i}"
            lift[tj] = t
    Lj = CMExtension(Kj, tuple(emb), tuple(conj.items()), tuple(res.items()),
                     f"L[{datum.subfield_label}]", ext.ambient_label)
    return DescentStep(datum, Lj, tuple(sorted(lift.items())))


def synthetic_descent(ext: CMExtension, data: Sequence[DescentDatum]) -> list[DescentStep]:
    return [synthetic_extension(ext, dd) for dd in data]


def _base_atom(a: Atom) -> Atom:
    while a.origin is not None:
        a = a.origin
    return a


def cm_compatibility(expr: PeriodExpression, steps: Sequence[DescentStep],
                     ext: CMExtension, Phi) -> tuple[PeriodExpression, list[str]]:
    """prod_j p(a_j; Phi_j)^(n_j c) -> p(a; Phi)^c for each base atom a.

    Fires only when the exponents over the different L_j are proportional to
    the multiplicities n_j with one common factor c.
    """
    mult = {}
    for st in steps:
        mult[st.ext.label] = mult.get(st.ext.label, 0) + st.multiplicity
    groups: dict[tuple[Atom, bool], dict[str, int]] = {}
    gens: dict[tuple[Atom, bool], list] = {}
    for g, e in expr.exps.items():
        if g.kind != "p" or not g.args[0].is_atomic():
            continue
        (atom, conj), _ = g.args[0].factors[0]
        key = (_base_atom(atom), conj)
        lab = g.args[1].extension.label
        if lab not in mult:
            continue
        groups.setdefault(key, {})
        groups[key][lab] = groups[key].get(lab, 0) + e
        gens.setdefault(key, []).append(g)
    mapping = {}
    notes = []
    out = expr
    for key, by_ext in groups.items():
        ratios = {Fraction(by_ext.get(lab, 0), n) for lab, n in mult.items() if n}
        zero_ok = all(by_ext.get(lab, 0) == 0 for lab, n in mult.items() if not n)
        if len(ratios) != 1 or not zero_ok or next(iter(ratios)).denominator != 1:
            notes.append(f"CM compatibility does not apply to {key[0].label}: {by_ext}")
            continue
        c = int(next(iter(ratios)))
        word = CharacterWord((((key[0], key[1]), 1),), 0)
        for g in gens[key]:
            mapping[g] = PeriodExpression()
        out = substitute(out, mapping)
        mapping = {}
        out = out.times(cm_period(word, Phi), c).join(key[0].value_field, ext.tilde_field)
    return out, notes


@dataclass
class DescentContext:
    M: HodgeData
    psi: HeckeCharacter
    k: int
    steps: list[DescentStep]
    motives: list[HodgeData]
    characters: list[HeckeCharacter]


def base_change_all(M: HodgeData, psi: HeckeCharacter, k: int,
                    steps: Sequence[DescentStep]) -> DescentContext:
    ext = psi.extension
    motives, chars = [], []
    for st in steps:
        if st.ext is ext:
            motives.append(M)
            chars.append(psi)
            continue
        lift = st.lift_map
        lift_K = induced_base_lift(st.ext, ext, lift)
        motives.append(base_change_motive(M, st.ext.base, lift_K))
        chars.append(base_change(psi, st.ext, lift))
    return DescentContext(M, psi, k, list(steps), motives, chars)


def automorphic_route(ctx: DescentContext) -> tuple[PeriodExpression, list[str]]:
    """prod_j L(M_j(chi_j), k)^(n_j) from the automorphic side, folded onto K."""
    parts = [main_theorem_lhs(Mj, pj, ctx.k) ** st.multiplicity
             for st, Mj, pj in zip(ctx.steps, ctx.motives, ctx.characters)]
    Phi = canonical_cm_type(ctx.psi)
    return cm_compatibility(product(parts), ctx.steps, ctx.psi.extension, Phi)


def motivic_route(ctx: DescentContext) -> tuple[PeriodExpression, list[str]]:
    """prod_j c^+(M_j(chi_j)(k))^(n_j) with delta(M_j) -> delta(M)^[K_j:K]."""
    ext = ctx.psi.extension
    one = ctx.M.distinguished_phi
    parts = []
    for st, Mj, pj in zip(ctx.steps, ctx.motives, ctx.characters):
        S = setup(Mj, pj, ctx.k)
        raw = rhs_chain(S)
        if Mj is not ctx.M:
            d = st.datum.degree_over_K
            raw = substitute(raw, {delta_total(Mj, one): PeriodExpression.of(
                delta_total(ctx.M, one, ext), d)})
        parts.append(normalize(raw) ** st.multiplicity)
    Phi = canonical_cm_type(ctx.psi)
    return cm_compatibility(product(parts), ctx.steps, ext, Phi)


def verify_potentially_automorphic(M: HodgeData, psi: HeckeCharacter, k: int,
                                   descent: Sequence[DescentDatum] | Sequence[DescentStep]
                                   ) -> VerificationReport:
    ext = psi.extension
    bound = theorem_bound(M, psi, top="tilde")
    steps = [d if isinstance(d, DescentStep) else synthetic_extension(ext, d) for d in descent]
    notes: list[str] = []
    deg = restrict_scalars_degrees(M, [st.datum for st in steps])
    notes += [f"degree: {m}" for m in deg.messages]
    try:
        S = setup(M, psi, k)
        ctx = base_change_all(M, psi, k, steps)
        lhs, n1 = automorphic_route(ctx)
        mot, n2 = motivic_route(ctx)
    except PeriodCalcError as exc:
        return VerificationReport("FAIL", None, None, None, bound, notes + [f"hypothesis: {exc}"])
    rhs = normalize(rhs_chain(S))
    if M.rank % 2 and not M.delta_hypothesis:
        notes.append("delta hypothesis not asserted; delta(M) stays unreduced")
    rep = compare(lhs, rhs, bound, notes + n1 + n2)
    if mot.exps != rhs.exps:
        rep.notes.append("motivic route: product of base changes differs from c^+(M(chi)(k))")
        rep.verdict = "FAIL"
    if not deg.passed:
        rep.verdict = "FAIL"
    return rep
