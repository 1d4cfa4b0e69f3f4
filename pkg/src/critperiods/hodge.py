"""Hodge bookkeeping for regular polarized realizations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .arithmetic import CoefficientField, TotallyRealField
from .errors import InvalidHodgeData, NotSelfDual

SYMMETRIC = "symmetric"
ALTERNATING = "alternating"

HodgeKey = tuple[str, str]


def _freeze_hodge(hodge) -> tuple[tuple[HodgeKey, tuple[int, ...]], ...]:
    items = hodge.items() if isinstance(hodge, Mapping) else hodge
    return tuple(sorted(((tuple(k), tuple(int(x) for x in v)) for k, v in items)))


@dataclass(frozen=True)
class HodgeData:
    """Discrete invariants of a regular, polarized realization M over K.

    ``hodge`` maps (sigma, phi) to the strictly decreasing list p_1 > ... > p_n.
    """

    K: TotallyRealField
    E: CoefficientField
    rank: int
    weight: int
    hodge: tuple[tuple[HodgeKey, tuple[int, ...]], ...]
    epsilon: int = 1
    n_plus: int | None = None
    polarization: str | None = None
    delta_hypothesis: bool = False
    label: str = field(default="M", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "hodge", _freeze_hodge(self.hodge))
        n, w = self.rank, self.weight
        if n < 1:
            raise InvalidHodgeData("rank must be positive")
        if self.n_plus is None:
            object.__setattr__(self, "n_plus", (n + 1) // 2)
        if not 0 <= self.n_plus <= n:
            raise InvalidHodgeData(f"n_plus={self.n_plus} outside 0..{n}")
        parity = SYMMETRIC if w % 2 == 0 else ALTERNATING
        if self.polarization is None:
            object.__setattr__(self, "polarization", parity)
        elif self.polarization != parity:
            raise InvalidHodgeData(
                f"polarization {self.polarization} incompatible with weight {w}"
            )
        if self.epsilon not in (1, -1):
            raise InvalidHodgeData("epsilon must be +1 or -1")
        if n % 2 == 1 and w % 2 == 1:
            raise InvalidHodgeData("odd rank forces even weight")
        table = dict(self.hodge)
        expected = {(s, f) for s in self.K.embeddings for f in self.E.embeddings}
        if set(table) != expected:
            missing = sorted(expected - set(table))
            extra = sorted(set(table) - expected)
            where = missing[0] if missing else extra[0]
            raise InvalidHodgeData(f"hodge key {'|'.join(where)}: missing or unknown")
        for key, ps in table.items():
            tag = "|".join(key)
            if len(ps) != n:
                raise InvalidHodgeData(f"{tag}: expected {n} Hodge numbers")
            if any(ps[i] <= ps[i + 1] for i in range(n - 1)):
                raise InvalidHodgeData(f"{tag}: not strictly decreasing")
            if any(ps[i] + ps[n - 1 - i] != w for i in range(n)):
                raise InvalidHodgeData(f"{tag}: p_i + p_(n+1-i) != w")
        by_phi: dict[str, set[int]] = {}
        for (s, f), ps in table.items():
            by_phi.setdefault(f, set()).update(ps)
        if len({frozenset(v) for v in by_phi.values()}) > 1:
            raise InvalidHodgeData("Hodge value sets differ between embeddings of E")

    @property
    def n_minus(self) -> int:
        return self.rank - self.n_plus

    def column(self, sigma: str, phi: str) -> tuple[int, ...]:
        return self._table[(sigma, phi)]

    def p(self, i: int, sigma: str, phi: str) -> float:
        """p_i with sentinels p_0 = +inf and p_(n+1) = -inf."""
        if i == 0:
            return math.inf
        if i == self.rank + 1:
            return -math.inf
        return self._table[(sigma, phi)][i - 1]

    @property
    def _table(self) -> dict[HodgeKey, tuple[int, ...]]:
        t = self.__dict__.get("_cache_table")
        if t is None:
            t = dict(self.hodge)
            self.__dict__["_cache_table"] = t
        return t

    @property
    def distinguished_phi(self) -> str:
        return self.E.distinguished or self.E.embeddings[0]

    def gln_weight(self) -> GLnWeight:
        """Read a_{sigma,i} = p_i(sigma,1) - n + i off the distinguished column."""
        n, phi = self.rank, self.distinguished_phi
        return GLnWeight(self.K, {
            s: tuple(self.column(s, phi)[i] - n + i + 1 for i in range(n))
            for s in self.K.embeddings
        })

    def is_automorphic_shape(self) -> bool:
        return self.weight == self.rank - 1


@dataclass(frozen=True)
class GLnWeight:
    K: TotallyRealField
    a: tuple[tuple[str, tuple[int, ...]], ...]

    def __post_init__(self) -> None:
        items = self.a.items() if isinstance(self.a, Mapping) else self.a
        frozen = tuple(sorted((s, tuple(v)) for s, v in items))
        object.__setattr__(self, "a", frozen)
        if {s for s, _ in frozen} != set(self.K.embeddings):
            raise InvalidHodgeData("weight must be given for every embedding of K")
        lens = {len(v) for _, v in frozen}
        if len(lens) != 1:
            raise InvalidHodgeData("all weight vectors must have the same length")
        for s, v in frozen:
            if any(v[i] < v[i + 1] for i in range(len(v) - 1)):
                raise InvalidHodgeData(f"{s}: weight not weakly decreasing")

    @property
    def rank(self) -> int:
        return len(self.a[0][1])

    def __getitem__(self, sigma: str) -> tuple[int, ...]:
        return dict(self.a)[sigma]

    def is_self_dual(self) -> bool:
        n = self.rank
        return all(v[i] == -v[n - 1 - i] for _, v in self.a for i in range(n))


def hodge_from_weight(wt: GLnWeight, self_dual: bool = True,
                      E: CoefficientField | None = None,
                      phi_permutation: Mapping[tuple[str, str], str] | None = None,
                      epsilon: int = 1, n_plus: int | None = None,
                      delta_hypothesis: bool = False, label: str = "M") -> HodgeData:
    """Hodge numbers p_i(sigma,1) = a_{sigma,i} + n - i of an automorphic realization.

    Columns for other embeddings of E are copied from sigma-columns chosen by
    ``phi_permutation`` (identity by default).
    """
    if self_dual and not wt.is_self_dual():
        for s, v in wt.a:
            n = len(v)
            for i in range(n):
                if v[i] != -v[n - 1 - i]:
                    raise NotSelfDual(f"{s}: a_{i + 1} != -a_{n - i}")
    E = E or CoefficientField()
    n = wt.rank
    base = {s: tuple(v[i] + n - 1 - i for i in range(n)) for s, v in wt.a}
    one = E.distinguished or E.embeddings[0]
    hodge = {}
    for phi in E.embeddings:
        for s in wt.K.embeddings:
            src = s if phi == one or phi_permutation is None else phi_permutation.get((phi, s), s)
            hodge[(s, phi)] = base[src]
    return HodgeData(wt.K, E, n, n - 1, hodge, epsilon, n_plus, None,
                     delta_hypothesis, label)


def tate_twist(M: HodgeData, k: int) -> HodgeData:
    """M(k): Hodge numbers shift by -k, weight by -2k; n+ and n- swap for odd k."""
    if k == 0:
        return M
    hodge = {key: tuple(p - k for p in ps) for key, ps in M.hodge}
    n_plus = M.n_minus if k % 2 else M.n_plus
    return replace(M, weight=M.weight - 2 * k, hodge=hodge, n_plus=n_plus,
                   polarization=None, label=f"{M.label}({k})")


@dataclass(frozen=True)
class DescentDatum:
    subfield_label: str
    degree_over_Q: int
    degree_over_K: int
    multiplicity: int

    def __post_init__(self) -> None:
        if self.degree_over_K < 1 or self.degree_over_Q < 1:
            raise InvalidHodgeData("descent degrees must be positive")


@dataclass
class DegreeReport:
    over_Q: bool
    over_K: bool
    consistent: bool
    sum_over_Q: int
    sum_over_K: int
    target_over_Q: int
    messages: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.over_Q and self.over_K and self.consistent


def restrict_scalars_degrees(M: HodgeData | TotallyRealField,
                             descent: Sequence[DescentDatum]) -> DegreeReport:
    """Check [K:Q] = sum n_j [K_j:Q] and 1 = sum n_j [K_j:K]."""
    K = M.K if isinstance(M, HodgeData) else M
    d = K.degree
    sq = sum(dd.multiplicity * dd.degree_over_Q for dd in descent)
    sk = sum(dd.multiplicity * dd.degree_over_K for dd in descent)
    msgs = []
    consistent = True
    for dd in descent:
        if dd.degree_over_Q != dd.degree_over_K * d:
            consistent = False
            msgs.append(f"{dd.subfield_label}: [K_j:Q] != [K_j:K][K:Q]")
    if sq != d:
        msgs.append(f"sum n_j [K_j:Q] = {sq} != [K:Q] = {d}")
    if sk != 1:
        msgs.append(f"sum n_j [K_j:K] = {sk} != 1")
    return DegreeReport(sq == d, sk == 1, consistent, sq, sk, d, msgs)


def base_change_motive(M: HodgeData, Kj: TotallyRealField,
                       lift_K: Mapping[str, str], label: str | None = None) -> HodgeData:
    """Hodge data of M over K_j: p_i(sigma', phi) = p_i(sigma'|_K, phi)."""
    hodge = {(sj, phi): M.column(lift_K[sj], phi)
             for sj in Kj.embeddings for phi in M.E.embeddings}
    return HodgeData(Kj, M.E, M.rank, M.weight, hodge, M.epsilon, M.n_plus,
                     M.polarization, M.delta_hypothesis,
                     label or f"{M.label}_{Kj.label}")
