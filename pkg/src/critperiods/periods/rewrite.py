"""Directed rewriting of period monomials to a normal form.

Rules fire in a fixed order: c^- to c^+, c^+(chi) to CM periods, CM-period
and unitary-period expansion, delta to a power of 2 pi i, then absorption of
signs, discriminants and automorphic quadratic periods. Each rule joins the
field its identity holds over into the ambiguity tag; absorptions fire only
when their field already lies in the tag.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping, Optional

from ..characters import (CharacterWord, HeckeCharacter, canonical_cm_type,
                          dual_conjugate, is_critical)
from ..critical import character_critical_integers
from ..lattice import AmbiguityField, FieldSymbol
from .expression import (Generator, PeriodExpression, c_total, cm_period, e_tau,
                         two_pi_i)

TWO_PI_I = two_pi_i()


@dataclass(frozen=True)
class Step:
    rule: str
    generator: Generator
    exponent: int
    before: AmbiguityField
    after: AmbiguityField
    requires: AmbiguityField | None = None


# a rule returns (replacement for g^e, field joined, field required) or None
Result = Optional[tuple[dict[Generator, int], AmbiguityField, Optional[AmbiguityField]]]
Rule = Callable[[Generator, int, AmbiguityField], Result]


def _kgal(g: Generator, M=None) -> FieldSymbol:
    if g.ctx is not None:
        return g.ctx.kgal_field
    return FieldSymbol(M.K.galois_closure_label)


def _scale(d: Mapping[Generator, int], e: int) -> dict[Generator, int]:
    return {g: x * e for g, x in d.items() if x}


@lru_cache(maxsize=4096)
def blasius_sign_exponent(chi: HeckeCharacter) -> int:
    """t = 0 if [chi] has an even critical integer, else 1."""
    return 0 if any(m % 2 == 0 for m in character_critical_integers(chi)) else 1


def rule_igualde(g: Generator, e: int, amb: AmbiguityField) -> Result:
    if g.kind == "c_s" and g.args[2] == "-":
        chi, sigma, _ = g.args
        tau = chi.extension.fibers[sigma][0]
        repl = {Generator("c_s", (chi, sigma, "+"), g.ctx): e, e_tau(chi, tau): e}
        return repl, AmbiguityField([chi.value_field, g.ctx.sigma_field(sigma)]), None
    if g.kind == "c" and g.args[1] == "-":
        chi = g.args[0]
        if not is_critical(chi):
            return None
        repl = {c_total(chi, "+"): e}
        for tau in canonical_cm_type(chi).members:
            repl[e_tau(chi, tau)] = repl.get(e_tau(chi, tau), 0) + e
        return repl, AmbiguityField([chi.value_field, g.ctx.kgal_field]), None
    return None


def rule_blasius(g: Generator, e: int, amb: AmbiguityField) -> Result:
    if g.kind != "c" or g.args[1] != "+":
        return None
    chi = g.args[0]
    if not is_critical(chi):
        return None
    Phi = canonical_cm_type(chi)
    t = blasius_sign_exponent(chi)
    repl = {Generator("D", (chi.extension.base,), chi.extension): e,
            cm_period(dual_conjugate(chi).word, Phi): e}
    if t:
        for tau in Phi.members:
            k = e_tau(chi, tau)
            repl[k] = repl.get(k, 0) + e
    return repl, AmbiguityField([chi.value_field]), None


def rule_unitary(g: Generator, e: int, amb: AmbiguityField) -> Result:
    if g.kind != "ph":
        return None
    psi, bar, n = g.args
    word = psi.word.iota().inverse() if bar else psi.word
    repl = {cm_period(word, canonical_cm_type(psi)): n * e}
    return repl, AmbiguityField([psi.value_field, g.ctx.lgal_field]), None


def rule_cm_expand(g: Generator, e: int, amb: AmbiguityField) -> Result:
    if g.kind != "p" or g.args[0].is_atomic():
        return None
    word, Phi = g.args
    repl: dict[Generator, int] = {}
    fields = []
    for (atom, conj), x in word.factors:
        repl[cm_period(CharacterWord((((atom, conj), 1),), 0), Phi)] = x * e
        fields.append(atom.value_field)
    if word.norm:
        repl[TWO_PI_I] = -Phi.extension.base.degree * word.norm * e
    return repl, AmbiguityField(fields), None


def _delta_applies(M, phi: str) -> bool:
    if M.weight % 2 == 1:
        return True
    return M.rank % 2 == 1 and M.delta_hypothesis and phi == M.distinguished_phi


def rule_delta(g: Generator, e: int, amb: AmbiguityField) -> Result:
    if g.kind == "delta":
        M, phi = g.args
        if not _delta_applies(M, phi):
            return None
        x = -M.K.degree * M.weight * M.rank // 2
        return {TWO_PI_I: x * e}, AmbiguityField([M.E.symbol(phi), _kgal(g, M)]), None
    if g.kind == "delta_s":
        M, sigma, phi = g.args
        if M.weight % 2 == 0:
            return None
        x = -M.weight * M.rank // 2
        local = g.ctx.sigma_field(sigma) if g.ctx else FieldSymbol(f"{sigma}({M.K.label})")
        return {TWO_PI_I: x * e}, AmbiguityField([M.E.symbol(phi), local]), None
    return None


def rule_sign_parity(g: Generator, e: int, amb: AmbiguityField) -> Result:
    if g.kind == "e" and e % 2 != e:
        return {g: e % 2}, AmbiguityField(), None
    return None


def _absorb(required: AmbiguityField, amb: AmbiguityField) -> Result:
    if required <= amb:
        return {}, AmbiguityField(), required
    return None


def rule_absorb_sign(g: Generator, e: int, amb: AmbiguityField) -> Result:
    if g.kind == "e":
        return _absorb(AmbiguityField([g.args[0].value_field]), amb)
    return None


def rule_absorb_disc(g: Generator, e: int, amb: AmbiguityField) -> Result:
    if g.kind == "D":
        return _absorb(AmbiguityField([g.ctx.kgal_field]), amb)
    return None


def rule_absorb_qhol(g: Generator, e: int, amb: AmbiguityField) -> Result:
    if g.kind == "Qhol":
        return _absorb(g.args[1], amb)
    return None


RULES: list[tuple[str, Rule]] = [
    ("igualde", rule_igualde),
    ("blasius", rule_blasius),
    ("unitary", rule_unitary),
    ("cm-expand", rule_cm_expand),
    ("delta", rule_delta),
    ("sign-parity", rule_sign_parity),
    ("absorb-sign", rule_absorb_sign),
    ("absorb-disc", rule_absorb_disc),
    ("absorb-qhol", rule_absorb_qhol),
]


def normalize(expr: PeriodExpression, trace: list[Step] | None = None,
              rules: list[tuple[str, Rule]] | None = None) -> PeriodExpression:
    """Apply the rules to a fixpoint; the result is the normal form of ``expr``."""
    rules = RULES if rules is None else rules
    exps = dict(expr.exps)
    amb = expr.ambiguity
    changed = True
    while changed:
        changed = False
        for name, rule in rules:
            for g in sorted(exps, key=Generator.sort_key):
                e = exps.get(g, 0)
                if not e:
                    continue
                res = rule(g, e, amb)
                if res is None:
                    continue
                repl, joined, required = res
                new_amb = amb.join(joined)
                del exps[g]
                for h, x in repl.items():
                    v = exps.get(h, 0) + x
                    if v:
                        exps[h] = v
                    else:
                        exps.pop(h, None)
                if trace is not None:
                    trace.append(Step(name, g, e, amb, new_amb, required))
                amb = new_amb
                changed = True
    return PeriodExpression(exps, amb)


def substitute(expr: PeriodExpression,
               mapping: Mapping[Generator, PeriodExpression]) -> PeriodExpression:
    """Replace each generator in ``mapping`` by its image, joining ambiguities."""
    out = PeriodExpression({g: e for g, e in expr.exps.items() if g not in mapping},
                           expr.ambiguity)
    for g, e in expr.exps.items():
        if g in mapping:
            out = out * mapping[g] ** e
    return out


def without_absorption() -> list[tuple[str, Rule]]:
    return [(n, r) for n, r in RULES if not n.startswith("absorb")]


def equivalent(a: PeriodExpression, b: PeriodExpression) -> bool:
    """a ~ b over the join of both tags: normal forms agree once re-tagged with it."""
    amb = a.ambiguity.join(b.ambiguity)
    return normalize(a.with_ambiguity(amb)) == normalize(b.with_ambiguity(amb))
