"""Quadratic periods Q_j as quotients of Deligne periods of interval twists."""

from __future__ import annotations

from fractions import Fraction

from ..arithmetic import CMType
from ..characters import HeckeCharacter, chi_from_psi, dual_conjugate
from ..critical import (TwistData, build_interval_twist, build_section5_character,
                        character_critical_integers, section5_weight)
from ..errors import PreconditionError
from ..hodge import HodgeData
from ..lattice import AmbiguityField
from .derive import (VerificationReport, c_plus_motive_expr, compare, p_chi_expr,
                     tate_twist_expr)
from .expression import (PeriodExpression, c_motive, cm_period, delta_total,
                         disc_half, g_total, l_char, l_motive, product, quad_total,
                         two_pi_i)
from .rewrite import normalize, substitute


def _check_j(n: int, j: int) -> None:
    if not 1 <= j < (n + 1) // 2:
        raise PreconditionError(f"j={j} must satisfy 1 <= j < {(n + 1) // 2}")


def interval_twists(M: HodgeData, phi: str, j: int, Phi: CMType,
                    w0: int | None = None) -> dict[int, TwistData]:
    """T_r = M(chi^{(r,phi)}) for the r values the j-th quotient needs."""
    n = M.rank
    rs = [n - j] + ([n - j + 1] if j >= 2 else [])
    return {r: TwistData(M, build_interval_twist(M, Phi, r, phi, w0), Phi) for r in rs}


def _p(T: TwistData, r: int) -> PeriodExpression:
    return p_chi_expr(T.chi, r, T.Phi, T.rank, T.M.n_plus)


def _cm(T: TwistData, phi: str) -> PeriodExpression:
    return PeriodExpression.of(c_motive(T, None, phi))


def qj_expr(M: HodgeData, phi: str, j: int, Phi: CMType,
            w0: int | None = None) -> PeriodExpression:
    """Q_{j,phi} as a quotient of c^+(M(chi)) periods and P(chi) periods."""
    n = M.rank
    _check_j(n, j)
    tw = interval_twists(M, phi, j, Phi, w0)
    ext = Phi.extension
    r = n - j
    if j == 1:
        out = _cm(tw[r], phi) / _p(tw[r], r)
        out = out * PeriodExpression.of(delta_total(M, phi, ext), -1)
    else:
        out = _cm(tw[r], phi) / _cm(tw[r + 1], phi) * _p(tw[r + 1], r + 1) / _p(tw[r], r)
    fields = [M.E.symbol(phi), ext.kgal_field] + [T.chi.value_field for T in tw.values()]
    return out.join(*fields)


def expand_motive_periods(expr: PeriodExpression) -> PeriodExpression:
    """Replace every c^+(M(chi))_phi by its expression from the local formula."""
    mapping = {}
    for g in expr.exps:
        if g.kind == "cM":
            T, k, phi = g.args
            base = c_plus_motive_expr(T, phi)
            mapping[g] = base if k is None else tate_twist_expr(base, T, k)
    return substitute(expr, mapping)


def verify_qj(M: HodgeData, phi: str, j: int, Phi: CMType,
              w0: int | None = None) -> VerificationReport:
    q = qj_expr(M, phi, j, Phi, w0)
    lhs = normalize(expand_motive_periods(q))
    target = PeriodExpression.of(quad_total(M, j, phi, Phi.extension))
    return compare(lhs, target, q.ambiguity.join(lhs.ambiguity))


def telescoped(M: HodgeData, phi: str, j: int, Phi: CMType,
               w0: int | None = None) -> PeriodExpression:
    return product(qj_expr(M, phi, i, Phi, w0) for i in range(1, j + 1))


def direct_quotient(M: HodgeData, phi: str, j: int, Phi: CMType,
                    w0: int | None = None) -> PeriodExpression:
    """c^+(M(chi^{(n-j)})) / (delta(M) P(chi^{(n-j)}))."""
    r = M.rank - j
    T = TwistData(M, build_interval_twist(M, Phi, r, phi, w0), Phi)
    out = _cm(T, phi) / _p(T, r)
    return out.times(delta_total(M, phi, Phi.extension), -1).join(
        M.E.symbol(phi), T.chi.value_field, Phi.extension.kgal_field)


def verify_telescoping(M: HodgeData, phi: str, j: int, Phi: CMType,
                       w0: int | None = None) -> VerificationReport:
    """prod_{i<=j} Q_i quotients against the direct s = j expansion."""
    tel = telescoped(M, phi, j, Phi, w0)
    direct = direct_quotient(M, phi, j, Phi, w0)
    notes = []
    if normalize(tel).exps != normalize(direct).exps:
        notes.append("quotient forms do not telescope")
    lhs = normalize(expand_motive_periods(tel))
    ext = Phi.extension
    rhs = product(PeriodExpression.of(quad_total(M, i, phi, ext)) for i in range(1, j + 1))
    rep = compare(lhs, rhs, lhs.ambiguity)
    rep.notes += notes
    if notes:
        rep.verdict = "FAIL"
    return rep


# L-value form, assuming Deligne's conjecture for the twists involved

def section5_characters(M: HodgeData, Phi: CMType, rs: list[int]) -> dict[int, HeckeCharacter]:
    return {r: chi_from_psi(build_section5_character(M, Phi, r), label=f"chi^({r},1)")
            for r in rs}


def qj_lvalue_expr(M: HodgeData, j: int, Phi: CMType) -> tuple[PeriodExpression, list[str]]:
    """Q_{j,1} through critical L-values of twists and of Hecke characters."""
    n = M.rank
    _check_j(n, j)
    w0 = section5_weight(n)
    m0 = (n + w0) // 2
    d = M.K.degree
    one = M.distinguished_phi
    rs = [n - j] + ([n - j + 1] if j >= 2 else [])
    chis = section5_characters(M, Phi, rs)
    notes: list[str] = []

    def char_point(r: int) -> int:
        x = Fraction(-w0 * (n - r), 2 * r - n)
        if x.denominator != 1:
            raise PreconditionError(f"(2r - n) does not divide w0 (n - r) for r={r}")
        m = int(x)
        if m not in character_critical_integers(chis[r]):
            notes.append(f"{m} is not critical for [{chis[r].label}]")
        return m

    def LM(r: int) -> PeriodExpression:
        return PeriodExpression.of(l_motive(TwistData(M, chis[r], Phi), m0, one))

    def P(r: int) -> PeriodExpression:
        return (PeriodExpression.of(l_char(chis[r], char_point(r)), 2 * r - n)
                * PeriodExpression.of(g_total(chis[r]), n - r))

    r = n - j
    if j == 1:
        out = LM(r) * PeriodExpression.of(two_pi_i(), -d * m0 * n) / P(r)
        out = out.times(delta_total(M, one, Phi.extension), -1)
    else:
        out = LM(r) / LM(r + 1) * P(r + 1) / P(r)
    F = AmbiguityField([c.value_field for c in chis.values()])
    return out.join(M.E.symbol(one), F, Phi.extension.kgal_field), notes


def lvalue_substitution(expr: PeriodExpression) -> PeriodExpression:
    """L(M(chi), m) -> c^+(M(chi)(m)) and L(chi, m) -> D^(1/2) (2 pi i)^([K:Q]m) p(check chi)."""
    mapping = {}
    for g in expr.exps:
        if g.kind == "LM":
            T, m, phi = g.args
            mapping[g] = tate_twist_expr(c_plus_motive_expr(T, phi), T, m)
        elif g.kind == "Lchi":
            chi, m = g.args
            ext = chi.extension
            from ..characters import canonical_cm_type
            Phi = canonical_cm_type(chi)
            mapping[g] = (PeriodExpression.of(disc_half(ext))
                          * PeriodExpression.of(two_pi_i(), ext.base.degree * m)
                          * PeriodExpression.of(cm_period(dual_conjugate(chi).word, Phi))
                          ).join(chi.value_field)
    return substitute(expr, mapping)


def verify_qj_lvalue(M: HodgeData, j: int, Phi: CMType) -> VerificationReport:
    expr, notes = qj_lvalue_expr(M, j, Phi)
    lhs = normalize(lvalue_substitution(expr))
    target = PeriodExpression.of(quad_total(M, j, M.distinguished_phi, Phi.extension))
    rep = compare(lhs, target, lhs.ambiguity)
    rep.notes = notes + rep.notes
    return rep
