"""Class functions, permutation characters and 1-dimensional characters."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from ..errors import NotASubgroup
from .finite import FiniteGroup

M = 12
# Phi_12(x) = x^4 - x^2 + 1, so x^4 = x^2 - 1
_DEG = 4


def _reduce_power(k: int) -> tuple[int, ...]:
    v = [0] * (_DEG + 8)
    v[k % M] = 1
    for i in range(len(v) - 1, _DEG - 1, -1):
        c = v[i]
        if c:
            v[i] = 0
            v[i - 2] += c
            v[i - 4] -= c
    return tuple(v[:_DEG])


_POW = [_reduce_power(k) for k in range(M)]


@dataclass(frozen=True)
class Cyclo:
    """Element of Z[zeta_12] in the basis 1, z, z^2, z^3."""

    c: tuple[int, ...] = (0, 0, 0, 0)

    @classmethod
    def zeta(cls, k: int) -> Cyclo:
        return cls(_POW[k % M])

    @classmethod
    def integer(cls, n: int) -> Cyclo:
        return cls((n, 0, 0, 0))

    def __add__(self, other: Cyclo) -> Cyclo:
        return Cyclo(tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other: Cyclo) -> Cyclo:
        return Cyclo(tuple(a - b for a, b in zip(self.c, other.c)))

    def __mul__(self, other: Cyclo) -> Cyclo:
        out = Cyclo()
        for i, a in enumerate(self.c):
            for j, b in enumerate(other.c):
                if a and b:
                    z = _POW[i + j]
                    out = out + Cyclo(tuple(a * b * x for x in z))
        return out

    def is_zero(self) -> bool:
        return not any(self.c)

    def __str__(self) -> str:
        terms = [f"{a}" if i == 0 else f"{a}z^{i}" for i, a in enumerate(self.c) if a]
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class ClassFunction:
    group: FiniteGroup
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if len(self.values) != len(self.group.classes):
            raise ValueError("one value per conjugacy class")

    def __add__(self, other: ClassFunction) -> ClassFunction:
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __rmul__(self, k: int) -> ClassFunction:
        return ClassFunction(self.group, tuple(k * a for a in self.values))

    def __call__(self, g: int) -> Fraction:
        return self.values[self.group.class_of[g]]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ClassFunction) and other.group is self.group
                and self.values == other.values)

    def __hash__(self) -> int:
        return hash(self.values)


def trivial(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, (1,) * len(G.classes))


def zero(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, (0,) * len(G.classes))


def induce_trivial(G: FiniteGroup, H: int) -> ClassFunction:
    """Permutation character of G on G/H: |C_G(g)| |C cap H| / |H|."""
    if not G.is_subgroup(H):
        raise NotASubgroup("not closed under multiplication")
    h = G.size(H)
    vals = []
    for cls in G.classes:
        meet = sum(1 for x in cls if H >> x & 1)
        vals.append(Fraction(G.order * meet, len(cls) * h))
    return ClassFunction(G, tuple(vals))


def inner(f: ClassFunction, g: ClassFunction) -> Fraction:
    """<f, g> for rational-valued class functions."""
    G = f.group
    return sum((len(c) * a * b for c, a, b in zip(G.classes, f.values, g.values)),
               Fraction(0)) / G.order


# 1-dimensional characters with values in mu_12, stored as exponents mod 12

def _generators(G: FiniteGroup, H: int) -> list[int]:
    gens: list[int] = []
    cur = 1
    for x in G.elements(H):
        if not cur >> x & 1:
            gens.append(x)
            cur = G.closure(gens)
            if cur == H:
                break
    return gens


def linear_characters(G: FiniteGroup, H: int, max_order: int = 4) -> list[dict[int, int]]:
    """Homomorphisms H -> Z/12 (zeta_12 exponents) of order at most ``max_order``."""
    gens = _generators(G, H)
    out = []
    for vals in product(range(M), repeat=len(gens)):
        lam = {0: 0}
        queue = [0]
        ok = True
        while queue and ok:
            a = queue.pop()
            for g, v in zip(gens, vals):
                b = G.mul(a, g)
                x = (lam[a] + v) % M
                if b in lam:
                    if lam[b] != x:
                        ok = False
                        break
                else:
                    lam[b] = x
                    queue.append(b)
        if not ok:
            continue
        order = _lcm_orders(lam.values())
        if order <= max_order:
            out.append(lam)
    return out


def _lcm_orders(xs) -> int:
    return math.lcm(*(M // math.gcd(x, M) for x in xs))


def induce_linear(G: FiniteGroup, N: int, lam: dict[int, int], on: Sequence[int],
                  ambient: int | None = None) -> dict[int, Cyclo]:
    """Ind_N^A(lambda)(g) for g in ``on``, A = ``ambient`` (default G)."""
    reps = coset_reps(G, N, ambient)
    out = {}
    for g in on:
        acc = Cyclo()
        for r in reps:
            y = G.mul(G.mul(int(G.inv[r]), g), r)
            if N >> y & 1:
                acc = acc + Cyclo.zeta(lam[y])
        out[g] = acc
    return out


def coset_reps(G: FiniteGroup, H: int, ambient: int | None = None) -> list[int]:
    """Representatives r of the left cosets rH inside ``ambient``."""
    covered = 0
    reps = []
    hs = G.elements(H)
    for x in G.elements(G.full if ambient is None else ambient):
        if covered >> x & 1:
            continue
        reps.append(x)
        for h in hs:
            covered |= 1 << G.mul(x, h)
    return reps
