"""Independent reference computations used only by the tests.

None of these call the routines they check; they work from first definitions
(gamma-factor poles, coset actions, complex roots of unity).
"""

from __future__ import annotations

import cmath
from itertools import combinations


# critical integers from gamma-factor poles

def hodge_pairs(T, sigma, phi):
    """(p, q) types of M(chi) at sigma: p_i + n_tau against w - p_i + n_taubar."""
    ext = T.chi.extension
    out = []
    for tau in ext.fibers[sigma]:
        bar = ext.conj(tau)
        for p in T.M.column(sigma, phi):
            out.append((p + T.chi.n(tau), T.M.weight - p + T.chi.n(bar)))
    return out


def _gamma_c_pole(x: int) -> bool:
    return x <= 0


def critical_by_scan(T, phi=None, window=60):
    """Integers k where neither L_inf(M, s) nor L_inf(M^v, 1 - s) has a pole.

    With no middle type, L_inf(M, s) is a product of Gamma_C(s - p) over types
    with p < q, and the dual factor a product of Gamma_C(1 - s + q) over the same
    types.
    """
    phi = phi or T.M.distinguished_phi
    types = [pq for s in T.M.K.embeddings for pq in hodge_pairs(T, s, phi)]
    if any(p == q for p, q in types):
        return None
    lower = [(p, q) for p, q in types if p < q]
    out = []
    for k in range(-window, window + 1):
        if any(_gamma_c_pole(k - p) for p, _ in lower):
            continue
        if any(_gamma_c_pole(1 - k + q) for _, q in lower):
            continue
        out.append(k)
    return out


def r_by_count(weight, column, t):
    """Number of Hodge numbers strictly above (w - t) / 2."""
    return sum(1 for p in column if 2 * p > weight - t)


# finite groups

def left_cosets(G, H):
    hs = G.elements(H)
    seen, out = set(), []
    for x in range(G.order):
        c = frozenset(G.mul(x, h) for h in hs)
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def permutation_character(G, H):
    """Number of left cosets xH fixed by g, for every g."""
    cosets = left_cosets(G, H)
    out = []
    for g in range(G.order):
        fixed = 0
        for c in cosets:
            x = next(iter(c))
            if G.mul(g, x) in c:
                fixed += 1
        out.append(fixed)
    return out


def induced_linear_complex(G, N, lam, A=None):
    """(1/|N|) sum_{x in A, x^-1 g x in N} lambda(x^-1 g x) as complex numbers."""
    A = G.full if A is None else A
    xs = G.elements(A)
    n = G.size(N)
    out = {}
    for g in xs:
        acc = 0j
        for x in xs:
            y = G.mul(G.mul(int(G.inv[x]), g), x)
            if N >> y & 1:
                acc += cmath.exp(2j * cmath.pi * lam[y] / 12)
        out[g] = acc / n
    return out


def cyclo_value(c):
    z = cmath.exp(2j * cmath.pi / 12)
    return sum(a * z ** i for i, a in enumerate(c.c))


def subgroups_by_generation(G, rank=2):
    """Every subgroup generated by at most ``rank`` elements, via plain closure."""
    def close(gens):
        S = {0}
        frontier = [0]
        while frontier:
            a = frontier.pop()
            for g in gens:
                b = int(G.table[a, g])
                if b not in S:
                    S.add(b)
                    frontier.append(b)
        return frozenset(S)

    found = set()
    for r in range(rank + 1):
        for gens in combinations(range(G.order), r):
            found.add(close(gens))
    return found

