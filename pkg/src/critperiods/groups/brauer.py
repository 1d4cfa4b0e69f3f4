"""Integer decompositions of the trivial character and the base-change identity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from ..errors import HypothesisFailed, PreconditionError
from ..hodge import DescentDatum
from .characters import (ClassFunction, induce_linear, induce_trivial,
                         linear_characters, trivial, zero)
from .finite import FiniteGroup


# exact integer linear algebra

def column_hermite(A: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[tuple[int, int]]]:
    """Column-style echelon form H = A U with U unimodular.

    Returns (H, U, pivots) where pivots lists (row, column) of each pivot.
    """
    m = len(A)
    k = len(A[0]) if m else 0
    H = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(k)] for i in range(k)]

    def colop(dst: int, src: int, q: int) -> None:
        # column dst -= q * column src
        for M_ in (H, U):
            for row in M_:
                row[dst] -= q * row[src]

    def swap(a: int, b: int) -> None:
        for M_ in (H, U):
            for row in M_:
                row[a], row[b] = row[b], row[a]

    pivots = []
    c = 0
    for i in range(m):
        if c >= k:
            break
        while True:
            nz = [j for j in range(c, k) if H[i][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(H[i][j]))
            if j0 != c:
                swap(j0, c)
            done = True
            for j in range(c + 1, k):
                if H[i][j]:
                    colop(j, c, H[i][j] // H[i][c])
                    if H[i][j]:
                        done = False
            if done:
                break
        if H[i][c]:
            if H[i][c] < 0:
                for M_ in (H, U):
                    for row in M_:
                        row[c] = -row[c]
            pivots.append((i, c))
            c += 1
    return H, U, pivots


def integer_solve(A: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[list[int] | None, list[list[int]]]:
    """One integer solution of A x = b (or None) and a basis of the integer kernel."""
    H, U, pivots = column_hermite(A)
    k = len(U)
    y = [0] * k
    for i, c in pivots:
        res = b[i] - sum(H[i][j] * y[j] for j in range(c))
        if res % H[i][c]:
            return None, []
        y[c] = res // H[i][c]
    for i in range(len(A)):
        if sum(H[i][j] * y[j] for j in range(k)) != b[i]:
            return None, []
    x = [sum(U[r][j] * y[j] for j in range(k)) for r in range(k)]
    rank = len(pivots)
    kernel = [[U[r][j] for r in range(k)] for j in range(rank, k)]
    return x, kernel


def _milp_l1(A: np.ndarray, b: np.ndarray, bound: int, fixed: dict[int, int],
             l1: int | None, objective: str | int) -> np.ndarray | None:
    """Integer n with A n = b; variables are (n, t) with |n_j| <= t_j."""
    m, k = A.shape
    I = np.eye(k)
    cons = [LinearConstraint(np.hstack([A, np.zeros((m, k))]), b, b),
            LinearConstraint(np.hstack([I, -I]), -np.inf, 0),
            LinearConstraint(np.hstack([-I, -I]), -np.inf, 0)]
    if l1 is not None:
        cons.append(LinearConstraint(np.hstack([np.zeros(k), np.ones(k)])[None, :], l1, l1))
    lo = np.concatenate([np.full(k, -bound), np.zeros(k)]).astype(float)
    hi = np.concatenate([np.full(k, bound), np.full(k, bound)]).astype(float)
    for j, v in fixed.items():
        lo[j] = hi[j] = v
    c = np.zeros(2 * k)
    if objective == "l1":
        c[k:] = 1
    else:
        c[int(objective)] = 1
    res = milp(c, constraints=cons, integrality=np.ones(2 * k),
               bounds=Bounds(lo, hi))
    if res.x is None:
        return None
    return np.rint(res.x[:k]).astype(int)


def min_l1_lex_solution(A: Sequence[Sequence[int]], b: Sequence[int],
                        bound: int = 64) -> list[int] | None:
    """Integer solution minimizing sum |n_j|, ties broken lexicographically."""
    An = np.asarray(A, dtype=float)
    bn = np.asarray(b, dtype=float)
    first = _milp_l1(An, bn, bound, {}, None, "l1")
    if first is None:
        return None
    l1 = int(np.abs(first).sum())
    fixed: dict[int, int] = {}
    for j in range(An.shape[1]):
        sol = _milp_l1(An, bn, bound, fixed, l1, j)
        if sol is None:
            break
        fixed[j] = int(sol[j])
    out = [fixed.get(j, int(first[j])) for j in range(An.shape[1])]
    if any(sum(int(a) * x for a, x in zip(row, out)) != int(bb) for row, bb in zip(A, b)):
        return [int(v) for v in first]
    return out


# Brauer-type decomposition of 1_G

@dataclass
class BrauerDecomposition:
    group: FiniteGroup
    terms: list[tuple[int, int]]  # (subgroup bitmask, multiplicity)
    particular: list[int] | None = None
    kernel_rank: int = 0
    notes: list[str] = field(default_factory=list)

    def combination(self) -> ClassFunction:
        out = zero(self.group)
        for H, n in self.terms:
            out = out + n * induce_trivial(self.group, H)
        return out

    def verify(self) -> bool:
        return (self.combination() == trivial(self.group)
                and all(self.group.is_solvable(H) for H, _ in self.terms))

    def degree_identity(self) -> int:
        """sum n_j [G:H_j], the value of the combination at the identity."""
        return sum(n * self.group.index(H) for H, n in self.terms)

    def describe(self) -> list[dict]:
        G = self.group
        return [{"order": G.size(H), "index": G.index(H), "multiplicity": n,
                 "elements": [G.labels[x] for x in G.elements(H)]}
                for H, n in self.terms]


def brauer_decompose(G: FiniteGroup) -> BrauerDecomposition:
    if G.is_solvable():
        return BrauerDecomposition(G, [(G.full, 1)])
    subs = [H for H in G.subgroup_classes if G.is_solvable(H)]
    cols = [induce_trivial(G, H) for H in subs]
    A = [[int(col.values[i]) for col in cols] for i in range(len(G.classes))]
    b = [1] * len(G.classes)
    x0, kernel = integer_solve(A, b)
    if x0 is None:
        return BrauerDecomposition(G, [], None, 0, ["no integer solution over solvable subgroups"])
    best = min_l1_lex_solution(A, b) or x0
    terms = [(H, n) for H, n in zip(subs, best) if n]
    return BrauerDecomposition(G, terms, x0, len(kernel))


def descent_data_from_decomposition(dec: BrauerDecomposition, base_degree: int,
                                    base_label: str = "K") -> list[DescentDatum]:
    """K_j = K'^{H_j} with [K_j:K] = [G:H_j]."""
    G = dec.group
    out = []
    for j, (H, n) in enumerate(dec.terms):
        d = G.index(H)
        label = base_label if H == G.full else f"{base_label}_{j}"
        out.append(DescentDatum(label, d * base_degree, d, n))
    return out


# the character identity behind base change of CM motives

def induction_restriction_identity(G: FiniteGroup, N: int, H: int, lam: dict[int, int]) -> bool:
    """Res_H Ind_N^G(lambda) == Ind_{H cap N}^H Res(lambda), checked on every h in H."""
    hs = G.elements(H)
    left = induce_linear(G, N, lam, hs)
    right = induce_linear(G, H & N, lam, hs, ambient=H)
    return all((left[h] - right[h]).is_zero() for h in hs)


def verify_induction_restriction(G: FiniteGroup, N: int, H: int, lam: dict[int, int]) -> bool:
    if G.index(N) != 2 or not G.is_subgroup(N):
        raise PreconditionError("N must be a subgroup of index 2")
    if not G.is_subgroup(H):
        raise PreconditionError("H must be a subgroup")
    if G.product_set(H, N) != G.full:
        raise HypothesisFailed("G != HN")
    return induction_restriction_identity(G, N, H, lam)


@dataclass
class SweepResult:
    checked: int = 0
    failures: list[tuple[str, int, int]] = field(default_factory=list)
    off_hypothesis: int = 0
    counterexamples: list[tuple[str, int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures


def sweep_induction_restriction(groups: Sequence[FiniteGroup], max_lambda_order: int = 4,
                                keep: int = 20) -> SweepResult:
    """Every (G, N, H, lambda) with [G:N] = 2; cases with G != HN are tallied separately."""
    out = SweepResult()
    for G in groups:
        for N in G.index_two_subgroups():
            lams = linear_characters(G, N, max_lambda_order)
            for H in G.all_subgroups:
                hn = G.product_set(H, N) == G.full
                for lam in lams:
                    ok = induction_restriction_identity(G, N, H, lam)
                    if hn:
                        out.checked += 1
                        if not ok:
                            out.failures.append((G.name, N, H))
                    else:
                        out.off_hypothesis += 1
                        if not ok and len(out.counterexamples) < keep:
                            out.counterexamples.append((G.name, N, H))
    return out


def frobenius_check(G: FiniteGroup) -> bool:
    """<Ind_H^G 1, 1_G> = 1 for every subgroup H."""
    from .characters import inner
    one = trivial(G)
    return all(inner(induce_trivial(G, H), one) == Fraction(1) for H in G.all_subgroups)
