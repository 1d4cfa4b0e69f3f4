"""Small finite groups given by a multiplication table.

Elements are indices 0..N-1 with 0 the identity. Subgroups are stored as
bitmasks over those indices, which keeps closure and conjugation cheap at the
sizes used here (|G| <= 120).
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from ..errors import NotASubgroup, PreconditionError


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class FiniteGroup:
    def __init__(self, table: Sequence[Sequence[int]], name: str = "G",
                 labels: Sequence[str] | None = None, check: bool = True):
        T = np.asarray(table, dtype=np.int64)
        self.table = T
        self.name = name
        self.order = int(T.shape[0])
        self.labels = list(labels) if labels is not None else [str(i) for i in range(self.order)]
        if check:
            self._check_axioms()
        self.inv = np.empty(self.order, dtype=np.int64)
        for a in range(self.order):
            self.inv[a] = int(np.where(T[a] == 0)[0][0])

    def _check_axioms(self) -> None:
        T, N = self.table, self.order
        if T.shape != (N, N):
            raise PreconditionError("multiplication table must be square")
        ar = np.arange(N)
        for row in T:
            if sorted(row.tolist()) != list(range(N)):
                raise PreconditionError("table rows must be permutations of the elements")
        if not (np.array_equal(T[0], ar) and np.array_equal(T[:, 0], ar)):
            raise PreconditionError("element 0 must be the identity")
        if N <= 120:
            left = T[T[:, :, None], ar[None, None, :]]
            right = T[ar[:, None, None], T[None, :, :]]
            if not np.array_equal(left, right):
                raise PreconditionError("multiplication is not associative")

    @classmethod
    def from_permutations(cls, gens: Iterable[Sequence[int]], name: str = "G") -> FiniteGroup:
        gens = [tuple(g) for g in gens]
        deg = len(gens[0]) if gens else 1
        ident = tuple(range(deg))
        elems = [ident]
        index = {ident: 0}
        i = 0
        while i < len(elems):
            for g in gens:
                h = tuple(g[x] for x in elems[i])  # apply elems[i] then g
                if h not in index:
                    index[h] = len(elems)
                    elems.append(h)
            i += 1
        N = len(elems)
        table = np.empty((N, N), dtype=np.int64)
        for a, pa in enumerate(elems):
            for b, pb in enumerate(elems):
                # (a*b)(x) = a(b(x))
                table[a, b] = index[tuple(pa[pb[x]] for x in range(deg))]
        G = cls(table, name, [str(p) for p in elems], check=False)
        G.perms = elems
        return G

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self.table[self.table[g, x], self.inv[g]])

    @property
    def full(self) -> int:
        return (1 << self.order) - 1

    # conjugacy classes
    @cached_property
    def classes(self) -> list[tuple[int, ...]]:
        seen = [False] * self.order
        out = []
        for x in range(self.order):
            if seen[x]:
                continue
            orb = sorted({self.conj(g, x) for g in range(self.order)})
            for y in orb:
                seen[y] = True
            out.append(tuple(orb))
        return out

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for i, c in enumerate(self.classes):
            for x in c:
                out[x] = i
        return out

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mul(y, x)
            k += 1
        return k

    # subgroups as bitmasks
    def closure(self, gens: Iterable[int], start: int = 1) -> int:
        mask = start | 1
        elems = _bits(mask)
        gens = sorted(set(gens))
        for g in gens:
            if not mask >> g & 1:
                mask |= 1 << g
                elems.append(g)
        if start != 1:
            gens = sorted(set(gens) | set(elems))
        i = 0
        while i < len(elems):
            a = elems[i]
            for g in gens:
                c = int(self.table[a, g])
                if not mask >> c & 1:
                    mask |= 1 << c
                    elems.append(c)
            i += 1
        return mask

    def subgroup(self, elements: Iterable[int]) -> int:
        els = set(elements) | {0}
        mask = 0
        for e in els:
            mask |= 1 << e
        for a in els:
            for b in els:
                if not mask >> int(self.table[a, b]) & 1:
                    raise NotASubgroup(f"{self.labels[a]}*{self.labels[b]} leaves the set")
        return mask

    def is_subgroup(self, mask: int) -> bool:
        try:
            self.subgroup(_bits(mask))
        except NotASubgroup:
            return False
        return True

    def elements(self, mask: int) -> list[int]:
        return _bits(mask)

    @staticmethod
    def size(mask: int) -> int:
        return bin(mask).count("1")

    def index(self, mask: int) -> int:
        return self.order // self.size(mask)

    def product_set(self, A: int, B: int) -> int:
        out = 0
        for a in _bits(A):
            for b in _bits(B):
                out |= 1 << int(self.table[a, b])
        return out

    def conjugate_subgroup(self, g: int, H: int) -> int:
        out = 0
        for h in _bits(H):
            out |= 1 << self.conj(g, h)
        return out

    def canonical(self, H: int) -> int:
        """Smallest bitmask among the conjugates of H."""
        return min(self.conjugate_subgroup(g, H) for g in range(self.order))

    @cached_property
    def all_subgroups(self) -> list[int]:
        # every subgroup is a join of cyclic ones; keep a generating list per subgroup
        cyclic: dict[int, int] = {}
        for x in range(self.order):
            cyclic.setdefault(self.closure([x]), x)
        found: dict[int, list[int]] = {1: []}
        queue = [1]
        while queue:
            H = queue.pop()
            for C, x in cyclic.items():
                if C & H == C:
                    continue
                gens = found[H] + [x]
                J = self.closure(gens)
                if J not in found:
                    found[J] = gens
                    queue.append(J)
        return sorted(found, key=lambda m: (self.size(m), m))

    @cached_property
    def subgroup_classes(self) -> list[int]:
        """One representative (the canonical one) per conjugacy class of subgroups."""
        return sorted({self.canonical(H) for H in self.all_subgroups},
                      key=lambda m: (self.size(m), m))

    def derived_subgroup(self, H: int) -> int:
        els = _bits(H)
        comms = set()
        for a in els:
            for b in els:
                ab = int(self.table[a, b])
                ba = int(self.table[b, a])
                comms.add(int(self.table[ab, self.inv[ba]]))
        return self.closure(comms)

    def is_solvable(self, H: int | None = None) -> bool:
        H = self.full if H is None else H
        while H != 1:
            D = self.derived_subgroup(H)
            if D == H:
                return False
            H = D
        return True

    def index_two_subgroups(self) -> list[int]:
        if self.order % 2:
            return []
        return [H for H in self.all_subgroups if self.size(H) * 2 == self.order
                and all(self.conjugate_subgroup(g, H) == H for g in range(self.order))]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    n, m = G.order, H.order
    idx = lambda a, b: a * m + b  # noqa: E731
    T = np.empty((n * m, n * m), dtype=np.int64)
    for a1, b1, a2, b2 in product(range(n), range(m), range(n), range(m)):
        T[idx(a1, b1), idx(a2, b2)] = idx(int(G.table[a1, a2]), int(H.table[b1, b2]))
    labels = [f"({x},{y})" for x in G.labels for y in H.labels]
    return FiniteGroup(T, name or f"{G.name}x{H.name}", labels, check=False)


# fixtures

def cyclic(n: int) -> FiniteGroup:
    T = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(T, f"C{n}", check=False)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    if n == 1:
        return cyclic(2)
    if n == 2:
        return direct_product(cyclic(2), cyclic(2), "D2")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    G = FiniteGroup.from_permutations([rot, ref], f"D{n}")
    return G


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return cyclic(1)
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return FiniteGroup.from_permutations(gens, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n <= 2:
        return cyclic(1)
    gens = []
    for i in range(n - 2):
        p = list(range(n))
        p[i], p[i + 1], p[i + 2] = p[i + 1], p[i + 2], p[i]
        gens.append(tuple(p))
    return FiniteGroup.from_permutations(gens, f"A{n}")


def quaternion() -> FiniteGroup:
    # elements +-1, +-i, +-j, +-k as (sign, unit) with unit in 1,i,j,k
    units = ["1", "i", "j", "k"]
    mult = {("1", u): (1, u) for u in units}
    mult.update({(u, "1"): (1, u) for u in units})
    mult.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    els = [(s, u) for s in (1, -1) for u in units]
    idx = {e: i for i, e in enumerate(els)}
    T = [[idx[(s1 * s2 * mult[(u1, u2)][0], mult[(u1, u2)][1])] for s2, u2 in els]
         for s1, u1 in els]
    return FiniteGroup(T, "Q8", [f"{'-' if s < 0 else ''}{u}" for s, u in els])


def klein_four() -> FiniteGroup:
    return direct_product(cyclic(2), cyclic(2), "C2xC2")


def fixture(name: str) -> FiniteGroup:
    """Named fixture groups: C<n>, D<n>, S<n>, A<n>, Q8, C2xC2, and products joined by 'x'."""
    if "x" in name and name != "C2xC2":
        parts = name.split("x")
        G = fixture(parts[0])
        for p in parts[1:]:
            G = direct_product(G, fixture(p))
        G.name = name
        return G
    if name == "C2xC2":
        return klein_four()
    if name == "Q8":
        return quaternion()
    kind, num = name[0], int(name[1:])
    return {"C": cyclic, "D": dihedral, "S": symmetric, "A": alternating}[kind](num)


SOLVABLE_FIXTURES = ["C1", "C2", "C3", "C4", "C5", "C6", "C12", "S3", "S4", "A4", "D4",
                     "D5", "D6", "C2xC2", "Q8"]
FIXTURES = SOLVABLE_FIXTURES + ["A5"]


def sweep_family(max_order: int = 48) -> list[FiniteGroup]:
    """Groups of order <= max_order that have an index-2 subgroup."""
    names = [f"C{n}" for n in range(2, max_order + 1, 2)]
    names += [f"D{n}" for n in range(2, max_order // 2 + 1)]
    names += ["S4", "Q8", "C2xC2xC2", "C2xS3", "C2xA4", "C4xC2", "C2xD4", "C2xQ8",
              "C3xS3", "C2xS4", "C4xS3", "C2xC2xS3", "C4xC4", "C2xD6", "C3xD4"]
    out = []
    for nm in names:
        G = fixture(nm)
        if G.order <= max_order and G.index_two_subgroups():
            out.append(G)
    return out
