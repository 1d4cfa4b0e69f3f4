"""Deligne-period expressions of twists and the main-theorem comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..arithmetic import CMExtension, CMType
from ..characters import (HeckeCharacter, canonical_cm_type, chi_from_psi,
                          dual_conjugate, is_critical, tilde_psi)
from ..critical import (TwistData, critical_integers, has_critical_values,
                        r_index)
from ..errors import (HypothesisFailed, MissingSigma, NoCriticalValues,
                      OutOfAutomorphicRange, PeriodCalcError, PreconditionError)
from ..hodge import HodgeData
from ..lattice import AmbiguityField
from .expression import (Generator, PeriodExpression, c_sigma, c_total, cm_period,
                         delta_sigma, delta_total, disc_half, e_tau, g_sigma,
                         g_total, h_period, q_hol, quad_sigma, quad_total,
                         two_pi_i)
from .rewrite import normalize

TWO_PI_I = two_pi_i()


def _pow2pi(x: int) -> PeriodExpression:
    return PeriodExpression.of(TWO_PI_I, x)


def _local_chi_part(chi: HeckeCharacter, sigma: str, Phi: CMType, r: int,
                    n: int, n_plus: int) -> PeriodExpression:
    """(2 pi i)^(-ceil(n/2) w) G_sigma^r a*_sigma Q_sigma^(r - ceil(n/2))."""
    h = (n + 1) // 2
    w = chi.weight
    G = PeriodExpression.of(g_sigma(chi, sigma))
    cp = PeriodExpression.of(c_sigma(chi, sigma, "+"))
    out = _pow2pi(-h * w) * G ** r
    if n % 2:
        # a^- when n+ > n-, a^+ otherwise; a^pm = (2 pi i)^w G^-1 c^mp
        sign = "+" if n_plus > n - n_plus else "-"
        out = out * _pow2pi(w) * G ** -1 * PeriodExpression.of(c_sigma(chi, sigma, sign))
    Q = _pow2pi(w) * G ** -2 * PeriodExpression.of(e_tau(chi, Phi.over(sigma))) * cp ** 2
    return out * Q ** (r - h)


def deligne_period_expr(T: TwistData, sigma: str, phi: str) -> PeriodExpression:
    """c_sigma^+(M(chi)) at (phi, 1) as a monomial."""
    if not has_critical_values(T):
        raise NoCriticalValues(f"{T.label} has no critical values")
    M, chi = T.M, T.chi
    ext = chi.extension
    n = M.rank
    r = r_index(T, sigma, phi)
    out = _local_chi_part(chi, sigma, T.Phi, r, n, M.n_plus)
    out = out * PeriodExpression.of(delta_sigma(M, sigma, phi, ext))
    for j in range(1, n - r + 1):
        out = out.times(quad_sigma(M, j, sigma, phi, ext))
    return out.join(M.E.symbol(phi), chi.value_field, ext.sigma_field(sigma))


_FAMILY = {"c_s": "c", "G_s": "G", "delta_s": "delta", "Q_s": "Q"}


def _split(g: Generator) -> tuple[tuple, str]:
    a = g.args
    if g.kind == "c_s":
        return (a[0], a[2]), a[1]
    if g.kind == "G_s":
        return (a[0],), a[1]
    if g.kind == "delta_s":
        return (a[0], a[2]), a[1]
    return (a[0], a[1], a[3]), a[2]


def globalize(family: Mapping[str, PeriodExpression], n_vector: int,
              ext: CMExtension) -> PeriodExpression:
    """Product over sigma, turning complete local families into global periods.

    Uses c^pm(chi) ~ D^(1/2) prod c_sigma^pm, delta(M) ~ D^(n/2) prod delta_sigma,
    and multiplies by D^(n_vector/2) for the target period.
    """
    sig = set(ext.base.embeddings)
    if set(family) != sig:
        missing = sorted(sig - set(family))
        raise MissingSigma(f"no expression for {missing[0] if missing else sorted(set(family) - sig)[0]}")
    total = PeriodExpression.one()
    for s in ext.base.embeddings:
        total = total * family[s]
    groups: dict[tuple[str, tuple], dict[str, int]] = {}
    for g, e in total.exps.items():
        if g.kind in _FAMILY:
            key, s = _split(g)
            groups.setdefault((g.kind, key), {})[s] = e
    D = disc_half(ext)
    out = dict(total.exps)
    d_exp = n_vector
    for (kind, key), by_sigma in groups.items():
        values = set(by_sigma.values())
        if set(by_sigma) != sig or len(values) != 1:
            continue
        e = values.pop()
        for g in list(out):
            if g.kind == kind and _split(g)[0] == key:
                del out[g]
        if kind == "c_s":
            tot, dpow = c_total(key[0], key[1]), 1
        elif kind == "G_s":
            tot, dpow = g_total(key[0]), 0
        elif kind == "delta_s":
            tot, dpow = delta_total(key[0], key[1], ext), key[0].rank
        else:
            tot, dpow = quad_total(key[0], key[1], key[2], ext), 0
        out[tot] = out.get(tot, 0) + e
        d_exp -= dpow * e
    if d_exp:
        out[D] = out.get(D, 0) + d_exp
    return PeriodExpression(out, total.ambiguity.join(ext.kgal_field))


def c_plus_motive_expr(T: TwistData, phi: str) -> PeriodExpression:
    """c^+(M(chi)) from the local formulas; M(chi) has n+ = n- = n over K."""
    fam = {s: deligne_period_expr(T, s, phi) for s in T.M.K.embeddings}
    return globalize(fam, T.rank, T.chi.extension)


def tate_twist_expr(expr: PeriodExpression, T: TwistData, k: int) -> PeriodExpression:
    """c^+(M(chi)(k)) from c^+(M(chi)): (2 pi i)^([K:Q] k n) prod_Phi e_tau^((-1)^k)."""
    ext = T.chi.extension
    out = expr * _pow2pi(ext.base.degree * k * T.rank)
    sgn = 1 if k % 2 == 0 else -1
    for tau in T.Phi.sorted():
        out = out.times(e_tau(T.chi, tau), sgn)
    return out.join(T.chi.value_field, ext.kgal_field)


# P(chi)

def _check_p_chi(chi: HeckeCharacter, r: int, Phi: CMType, n: int) -> None:
    if not n // 2 < r <= n:
        raise PreconditionError(f"r={r} must satisfy {n // 2} < r <= {n}")
    for tau in Phi.members:
        if chi.difference(tau) <= 0:
            raise PreconditionError(f"n_tau > n_taubar fails at {tau}")


def p_sigma_expr(chi: HeckeCharacter, r: int, sigma: str, Phi: CMType, n: int,
                 n_plus: int | None = None) -> PeriodExpression:
    n_plus = (n + 1) // 2 if n_plus is None else n_plus
    return _local_chi_part(chi, sigma, Phi, r, n, n_plus).join(
        chi.value_field, chi.extension.sigma_field(sigma))


def p_chi_expr(chi: HeckeCharacter, r: int, Phi: CMType, n: int,
               n_plus: int | None = None) -> PeriodExpression:
    """Definitional P(chi) = prod_sigma P_sigma(chi), not yet normalized."""
    _check_p_chi(chi, r, Phi, n)
    ext = chi.extension
    fam = {s: p_sigma_expr(chi, r, s, Phi, n, n_plus) for s in ext.base.embeddings}
    return globalize(fam, 0, ext)


def p_chi_cm_form(chi: HeckeCharacter, r: int, Phi: CMType, n: int) -> PeriodExpression:
    """(2 pi i)^(-[K:Q] w0 s) G(chi)^s p(check chi; Phi)^(r - s)."""
    _check_p_chi(chi, r, Phi, n)
    ext = chi.extension
    s = n - r
    out = _pow2pi(-ext.base.degree * chi.weight * s)
    out = out * PeriodExpression.of(g_total(chi), s)
    out = out * PeriodExpression.of(cm_period(dual_conjugate(chi).word, Phi), r - s)
    return out.join(chi.value_field, ext.kgal_field)


# the main theorem

@dataclass
class MainSetup:
    M: HodgeData
    psi: HeckeCharacter
    chi: HeckeCharacter
    Phi: CMType
    T: TwistData
    k: int

    @property
    def degree(self) -> int:
        return self.M.K.degree

    @property
    def w(self) -> int:
        return self.psi.weight

    @property
    def phi(self) -> str:
        return self.M.distinguished_phi


def setup(M: HodgeData, psi: HeckeCharacter, k: int) -> MainSetup:
    if not is_critical(psi):
        raise HypothesisFailed(f"{psi.label} is not critical")
    Phi = canonical_cm_type(psi)
    chi = chi_from_psi(psi)
    return MainSetup(M, psi, chi, Phi, TwistData(M, chi, Phi), k)


def check_hypotheses(S: MainSetup, require_delta: bool = True) -> None:
    M, n = S.M, S.M.rank
    if not M.is_automorphic_shape():
        raise HypothesisFailed(f"(1) weight {M.weight} != n - 1 = {n - 1}")
    if not M.gln_weight().is_self_dual():
        raise HypothesisFailed("(1) GL_n weight is not self-dual")
    ext = S.chi.extension
    for tau in S.Phi.sorted():
        s = ext.restrict(tau)
        bound = max(n - M.p(n, x, S.phi) for x in M.K.embeddings)
        if not S.psi.difference(tau) > bound:
            raise HypothesisFailed(
                f"(2) m_tau - m_taubar = {S.psi.difference(tau)} <= {bound} at {tau} over {s}")
    if require_delta and n % 2 == 1 and not M.delta_hypothesis:
        raise HypothesisFailed("(3) n is odd and the delta hypothesis is not asserted")
    if S.k not in critical_integers(S.T):
        raise HypothesisFailed(f"k={S.k} is not critical for M(chi)")
    if not S.k > S.w + n:
        raise HypothesisFailed(f"k={S.k} does not exceed w + n = {S.w + n}")


def rhs_chain(S: MainSetup) -> PeriodExpression:
    """c^+(M(chi)(k))_1 built from the local period formula, before normalizing."""
    g = c_plus_motive_expr(S.T, S.phi)
    return tate_twist_expr(g, S.T, S.k).join(S.M.E.symbol(S.phi))


def main_theorem_rhs(M: HodgeData, psi: HeckeCharacter, k: int) -> PeriodExpression:
    S = setup(M, psi, k)
    check_hypotheses(S)
    return normalize(rhs_chain(S))


def rhs_stated_form(M: HodgeData, psi: HeckeCharacter, k: int) -> PeriodExpression:
    """(2 pi i)^([K:Q](nk - nw - n(n-1)/2)) p(tilde psi; Phi)^n."""
    S = setup(M, psi, k)
    n, d = M.rank, S.degree
    x = d * (n * k - n * S.w - n * (n - 1) // 2)
    out = _pow2pi(x) * PeriodExpression.of(cm_period(tilde_psi(psi).word, S.Phi), n)
    return out.join(M.E.symbol(S.phi), psi.value_field, psi.extension.kgal_field)


def automorphic_field(M: HodgeData, ext: CMExtension) -> AmbiguityField:
    """E(pi), modelled as E joined with L^Gal."""
    return AmbiguityField([M.E.symbol(M.distinguished_phi), ext.lgal_field])


def main_theorem_lhs_raw(M: HodgeData, psi: HeckeCharacter, k: int) -> PeriodExpression:
    S = setup(M, psi, k)
    n, d, ext = M.rank, S.degree, psi.extension
    m = k - S.w
    if not m > n:
        raise OutOfAutomorphicRange(f"m = k - w = {m} is not > n = {n}")
    a = M.gln_weight()
    for tau in S.Phi.sorted():
        top = a[ext.restrict(tau)][n - 1] + psi.difference(tau)
        if m > top:
            raise OutOfAutomorphicRange(f"m = {m} > a_(tau,n) + m_tau - m_taubar = {top} at {tau}")
    Epi = automorphic_field(M, ext)
    out = _pow2pi(d * (m * n - n * (n - 1) // 2))
    out = out.times(q_hol(f"pi[{M.label}]", Epi, ext))
    out = out.times(h_period(psi, False, n)).times(h_period(psi, True, n))
    return out.join(Epi, psi.value_field)


def main_theorem_lhs(M: HodgeData, psi: HeckeCharacter, k: int) -> PeriodExpression:
    return normalize(main_theorem_lhs_raw(M, psi, k))


def theorem_bound(M: HodgeData, psi: HeckeCharacter,
                  top: str = "lgal") -> AmbiguityField:
    ext = psi.extension
    big = ext.lgal_field if top == "lgal" else ext.tilde_field
    return AmbiguityField([M.E.symbol(M.distinguished_phi), psi.value_field, big])


@dataclass
class VerificationReport:
    verdict: str
    lhs_normal: PeriodExpression | None
    rhs_normal: PeriodExpression | None
    residual: PeriodExpression | None
    ambiguity: AmbiguityField
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_json(self) -> dict:
        def terms(x):
            return None if x is None else x.terms()
        return {
            "verdict": self.verdict,
            "lhs_normal": terms(self.lhs_normal),
            "rhs_normal": terms(self.rhs_normal),
            "residual": terms(self.residual),
            "ambiguity": self.ambiguity.names(),
            "notes": list(self.notes),
        }


def compare(lhs: PeriodExpression, rhs: PeriodExpression, bound: AmbiguityField,
            notes: list[str] | None = None) -> VerificationReport:
    notes = list(notes or [])
    residual = PeriodExpression((lhs / rhs).exps)
    amb = lhs.ambiguity.join(rhs.ambiguity)
    ok = residual.is_one()
    if not ok:
        notes.append("exponent vectors differ")
    if not amb <= bound:
        ok = False
        notes.append(f"ambiguity {amb} exceeds {bound}")
    return VerificationReport("PASS" if ok else "FAIL", lhs, rhs, residual, amb, notes)


def verify_main_theorem(M: HodgeData, psi: HeckeCharacter, k: int) -> VerificationReport:
    """Compare the automorphic and motivic expressions for the critical value."""
    bound = theorem_bound(M, psi)
    notes: list[str] = []
    try:
        S = setup(M, psi, k)
        check_hypotheses(S, require_delta=False)
    except PeriodCalcError as exc:
        return VerificationReport("FAIL", None, None, None, bound, [f"hypothesis: {exc}"])
    try:
        lhs = main_theorem_lhs(M, psi, k)
    except OutOfAutomorphicRange as exc:
        return VerificationReport("FAIL", None, None, None, bound, [f"lhs: {exc}"])
    rhs = normalize(rhs_chain(S))
    if M.rank % 2 and not M.delta_hypothesis:
        notes.append("delta hypothesis not asserted; delta(M) stays unreduced")
    return compare(lhs, rhs, bound, notes)


def critical_range_above(M: HodgeData, psi: HeckeCharacter) -> list[int]:
    """Critical integers k of M(chi) with k > w + n."""
    S = setup(M, psi, 0)
    return [k for k in critical_integers(S.T) if k > psi.weight + M.rank]
