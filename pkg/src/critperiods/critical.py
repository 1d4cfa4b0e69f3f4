"""Criticality of twists M(chi): t-invariants, r-indices, critical integers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .arithmetic import CMType, CoefficientField
from .characters import (HeckeCharacter, canonical_cm_type, chi_from_psi,
                         construct_with_differences, is_critical)
from .errors import (MiddleTypePresent, MidpointDegenerate, NoCriticalValues,
                     NotCritical, NotInTopInterval, ParityHypothesisFailed,
                     PreconditionError)
from .hodge import HodgeData


@dataclass(frozen=True)
class TwistData:
    """The twist M(chi) = M (x) Res_{L/K}[chi] together with a CM type."""

    M: HodgeData
    chi: HeckeCharacter
    Phi: CMType

    def __post_init__(self) -> None:
        ext = self.chi.extension
        if ext.base.embeddings != self.M.K.embeddings:
            raise PreconditionError("M and chi live over different totally real fields")
        if self.Phi.extension != ext:
            raise PreconditionError("CM type belongs to another extension")

    @property
    def rank(self) -> int:
        return self.M.rank

    @property
    def label(self) -> str:
        return f"{self.M.label}({self.chi.label})"


def t_invariant(chi: HeckeCharacter, sigma: str) -> int:
    tau = chi.extension.fibers[sigma][0]
    d = abs(chi.difference(tau))
    if d == 0:
        raise NotCritical(f"{chi.label}: n_tau = n_taubar above {sigma}")
    return d


def gaps(weight: int, column: Sequence[int]) -> list[int]:
    """The increasing sequence w - 2 p_i."""
    return [weight - 2 * p for p in column]


def r_from_column(weight: int, column: Sequence[int], t: int) -> int:
    g = gaps(weight, column)
    if t in g:
        raise NoCriticalValues(f"t={t} equals w - 2p_{g.index(t) + 1}")
    return sum(1 for x in g if x < t)


def r_scan(weight: int, column: Sequence[int], t: int) -> list[int]:
    """Every r with w - 2p_r < t < w - 2p_(r+1), sentinels included."""
    n = len(column)
    ext = [math.inf, *column, -math.inf]
    return [r for r in range(n + 1)
            if weight - 2 * ext[r] < t < weight - 2 * ext[r + 1]]


def _columns_clear(M: HodgeData, chi: HeckeCharacter) -> bool:
    for s in M.K.embeddings:
        t = abs(chi.difference(chi.extension.fibers[s][0]))
        for phi in M.E.embeddings:
            if t in gaps(M.weight, M.column(s, phi)):
                return False
    return True


def has_critical_values(T: TwistData,
                        rho_orbit: Iterable[HeckeCharacter] = ()) -> bool:
    """True iff t_sigma(chi) avoids every w - 2p_i(sigma, phi).

    ``rho_orbit`` optionally supplies conjugate characters to test as well.
    """
    for chi in (T.chi, *rho_orbit):
        if not is_critical(chi) or not _columns_clear(T.M, chi):
            return False
    return True


def r_index(T: TwistData, sigma: str, phi: str) -> int:
    if not has_critical_values(T):
        raise NoCriticalValues(f"{T.label} has no critical values")
    return r_from_column(T.M.weight, T.M.column(sigma, phi), t_invariant(T.chi, sigma))


def r_index_oracle(T: TwistData, sigma: str, phi: str) -> int:
    found = r_scan(T.M.weight, T.M.column(sigma, phi), t_invariant(T.chi, sigma))
    if len(found) != 1:
        raise NoCriticalValues(f"sandwich scan found {found}")
    return found[0]


# twists with a prescribed critical interval

def interval_differences(M: HodgeData, r: int, phi: str) -> dict[str, int]:
    """a^{(r,phi)} per embedding of K."""
    n, w = M.rank, M.weight
    if not 0 <= r <= n:
        raise PreconditionError(f"r={r} outside 0..{n}")
    if n % 2 == 0 and r == n // 2:
        for s in M.K.embeddings:
            if M.p(r, s, phi) == M.p(r + 1, s, phi) + 1:
                raise MidpointDegenerate(f"{s}: p_{r} = p_{r + 1} + 1")
    if r == 0:
        bound = min(w - 2 * M.p(1, s, phi) for s in M.K.embeddings)
        a0 = bound - 1
        if a0 % 2 != (w + 1) % 2:
            a0 -= 1
        return {s: a0 for s in M.K.embeddings}
    return {s: w - 2 * M.p(r, s, phi) + 1 for s in M.K.embeddings}


def default_w0(M: HodgeData) -> int:
    """Smallest |w0| with w0 = w(M) + 1 mod 2, preferring +1 to -1."""
    return 0 if (M.weight + 1) % 2 == 0 else 1


def build_interval_twist(M: HodgeData, Phi: CMType, r: int, phi: str,
                         w0: int | None = None, label: str | None = None) -> HeckeCharacter:
    a = interval_differences(M, r, phi)
    ext = Phi.extension
    w0 = default_w0(M) if w0 is None else w0
    diffs = {tau: a[ext.restrict(tau)] for tau in Phi.members}
    return construct_with_differences(Phi, diffs, w0, label or f"chi^({r},{phi})")


def lemma_r_value(n: int, r: int) -> int:
    return n - r if r <= n // 2 else r


def verify_interval_lemma(M: HodgeData, Phi: CMType, r: int, phi: str) -> bool:
    chi = build_interval_twist(M, Phi, r, phi)
    T = TwistData(M, chi, Phi)
    if not has_critical_values(T):
        return False
    want = lemma_r_value(M.rank, r)
    return all(r_index(T, s, phi) == want for s in M.K.embeddings)


# critical integers

def _oriented(T: TwistData) -> None:
    for tau in T.Phi.members:
        if T.chi.difference(tau) <= 0:
            raise PreconditionError(f"n_tau > n_taubar fails at {tau}")


def critical_integers(T: TwistData, phi: str | None = None) -> range:
    """Critical integers of M(chi) when every r-index equals n."""
    _oriented(T)
    M, n = T.M, T.rank
    phi = phi or M.distinguished_phi
    for s in M.K.embeddings:
        for f in M.E.embeddings:
            if r_index(T, s, f) != n:
                raise NotInTopInterval(f"r-index below n at {s}|{f}")
    lo, hi = -math.inf, math.inf
    ext = T.chi.extension
    for tau in T.Phi.members:
        s = ext.restrict(tau)
        lo = max(lo, M.p(1, s, phi) + T.chi.n(ext.conj(tau)))
        hi = min(hi, M.p(n, s, phi) + T.chi.n(tau))
    return range(int(lo) + 1, int(hi) + 1) if lo < hi else range(0)


def hodge_types(T: TwistData, sigma: str, phi: str) -> list[int]:
    ext = T.chi.extension
    t, tb = ext.fibers[sigma]
    col = T.M.column(sigma, phi)
    return sorted([p + T.chi.n(t) for p in col] + [p + T.chi.n(tb) for p in col])


def critical_integers_oracle(T: TwistData, phi: str | None = None) -> range:
    """Critical integers read directly off the Hodge types of M(chi)."""
    M = T.M
    phi = phi or M.distinguished_phi
    w_tot = M.weight + T.chi.weight
    lo, hi = -math.inf, math.inf
    for s in M.K.embeddings:
        types = hodge_types(T, s, phi)
        if any(2 * p == w_tot for p in types):
            raise MiddleTypePresent(f"{s}: Hodge type {w_tot // 2} is middle")
        lo = max(lo, max(p for p in types if 2 * p < w_tot))
        hi = min(hi, min(q for q in types if 2 * q > w_tot))
    return range(int(lo) + 1, int(hi) + 1) if lo < hi else range(0)


def character_critical_integers(chi: HeckeCharacter) -> range:
    """Critical integers of the rank-one motive [chi] over K."""
    K = chi.extension.base
    unit = HodgeData(K, CoefficientField(), 1, 0, {(s, "1"): (0,) for s in K.embeddings})
    return critical_integers_oracle(TwistData(unit, chi, canonical_cm_type(chi)))


# characters with a one-point critical set

def section5_weight(n: int, bound: int | None = None) -> int:
    """Smallest positive w0 with w0 = n mod 2, (2r - n) | w0 for n/2 < r < n, 4 | w0 + n."""
    if n % 2:
        raise PreconditionError("n must be even")
    bound = bound if bound is not None else 8 * math.factorial(n)
    step = 1
    for rr in range(n // 2 + 1, n):
        step = math.lcm(step, 2 * rr - n)
    # conditions are periodic modulo 4*step, so four multiples decide it
    for k in range(1, 5):
        w0 = k * step
        if w0 > bound:
            break
        if (w0 - n) % 2 == 0 and (w0 + n) % 4 == 0:
            return w0
    raise ParityHypothesisFailed(f"n={n}: no weight w0 <= {bound} meets the congruences")


def section5_parity_check(M: HodgeData, r: int) -> None:
    n = M.rank
    a = M.gln_weight()
    sig = M.K.embeddings
    if len({a[s][r - 1] % 2 for s in sig}) > 1:
        raise ParityHypothesisFailed(f"a_(sigma,{r}) parities differ across sigma")
    for s in sig:
        for rr in range(n // 2 + 1, n):
            if (a[s][rr] - a[s][rr - 1] - 1) % 2:
                raise ParityHypothesisFailed(f"{s}: a_(sigma,{rr + 1}) and a_(sigma,{rr}) have equal parity")
        if M.p(r, s, M.distinguished_phi) % 2:
            raise ParityHypothesisFailed(f"{s}: p_{r} is odd, incompatible with 4 | w0 + n")


def build_section5_character(M: HodgeData, Phi: CMType, r: int,
                             w0: int | None = None, label: str | None = None) -> HeckeCharacter:
    """psi^{(r,1)} with m_tau - m_taubar = n/2 - p_r(sigma,1) and weight w0/2."""
    n = M.rank
    if n % 2 or not M.is_automorphic_shape():
        raise PreconditionError("needs an automorphic realization of even rank")
    if not n // 2 < r < n:
        raise PreconditionError(f"r={r} outside {n // 2 + 1}..{n - 1}")
    section5_parity_check(M, r)
    w0 = section5_weight(n) if w0 is None else w0
    one = M.distinguished_phi
    ext = Phi.extension
    diffs = {tau: n // 2 - M.p(r, ext.restrict(tau), one) for tau in Phi.members}
    try:
        return construct_with_differences(Phi, diffs, w0 // 2, label or f"psi^({r},1)")
    except Exception as exc:
        raise ParityHypothesisFailed(str(exc)) from exc


def section5_twist(M: HodgeData, Phi: CMType, r: int, w0: int | None = None) -> TwistData:
    psi = build_section5_character(M, Phi, r, w0)
    return TwistData(M, chi_from_psi(psi, label=f"chi^({r},1)"), Phi)
