"""Random instances for sweeps and property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .arithmetic import (CMExtension, CMType, CoefficientField, TotallyRealField,
                         all_cm_types)
from .characters import HeckeCharacter, construct_with_differences
from .hodge import GLnWeight, HodgeData, hodge_from_weight
from .periods.derive import critical_range_above


def real_field(degree: int, label: str = "K") -> TotallyRealField:
    return TotallyRealField(label, tuple(f"s{i + 1}" for i in range(degree)))


def coefficients(size: int) -> CoefficientField:
    return CoefficientField("E", tuple(str(i + 1) for i in range(size)), "1")


def cm_setup(degree: int, rng: random.Random) -> tuple[CMExtension, CMType]:
    K = real_field(degree)
    ext = CMExtension.standard(K, "L", "~L")
    return ext, rng.choice(all_cm_types(ext))


def _top_half(rng: random.Random, count: int, start: int, spread: int) -> list[int]:
    out, p = [], start + rng.randrange(spread)
    for _ in range(count):
        out.append(p)
        p += 1 + rng.randrange(spread)
    return out[::-1]


def hodge_column(rng: random.Random, n: int, w: int, spread: int = 3) -> tuple[int, ...]:
    """Strictly decreasing p with p_i + p_(n+1-i) = w."""
    top = _top_half(rng, n // 2, w // 2 + 1, spread)
    mid = [w // 2] if n % 2 else []
    return tuple(top + mid + [w - p for p in reversed(top)])


def random_hodge(rng: random.Random, n: int, degree: int, e_size: int = 1,
                 weight: int | None = None, spread: int = 3) -> HodgeData:
    K = real_field(degree)
    E = coefficients(e_size)
    if weight is None:
        weight = rng.randrange(-4, 7)
        if n % 2 and weight % 2:
            weight += 1
    cols = {s: hodge_column(rng, n, weight, spread) for s in K.embeddings}
    hodge = {}
    for f in E.embeddings:
        perm = list(K.embeddings)
        if f != E.distinguished:
            rng.shuffle(perm)
        for s, src in zip(K.embeddings, perm):
            hodge[(s, f)] = cols[src]
    n_plus = rng.choice([(n + 1) // 2, n // 2])
    return HodgeData(K, E, n, weight, hodge, n_plus=n_plus)


def random_gln_weight(rng: random.Random, n: int, degree: int, spread: int = 3) -> GLnWeight:
    K = real_field(degree)
    a = {}
    for s in K.embeddings:
        top = sorted((rng.randrange(spread + 1) for _ in range(n // 2)), reverse=True)
        top = [sum(top[i:]) for i in range(len(top))]  # weakly decreasing, >= 0
        mid = [0] if n % 2 else []
        a[s] = tuple(top + mid + [-x for x in reversed(top)])
    return GLnWeight(K, a)


@dataclass
class MainInstance:
    M: HodgeData
    psi: HeckeCharacter
    ks: list[int]


def random_main_instance(rng: random.Random, n: int, degree: int,
                         e_size: int = 1, delta: bool | None = None,
                         n_plus: int | None = None) -> MainInstance:
    """Automorphic M with a psi meeting the difference bound and some critical k > w + n."""
    while True:
        wt = random_gln_weight(rng, n, degree)
        flag = (n % 2 == 1) if delta is None else delta
        M = hodge_from_weight(wt, E=coefficients(e_size), delta_hypothesis=flag,
                              n_plus=n_plus if n_plus is not None else rng.choice(
                                  [(n + 1) // 2, n // 2]))
        ext, Phi = cm_setup(degree, rng)
        bound = max(n - M.p(n, s, "1") for s in M.K.embeddings)
        w = rng.randrange(-3, 4)
        diffs = {}
        for tau in sorted(Phi.members):
            d = int(bound) + 1 + rng.randrange(5)
            if (d - w) % 2:
                d += 1
            diffs[tau] = d
        psi = construct_with_differences(Phi, diffs, w, "psi")
        ks = critical_range_above(M, psi)
        if ks:
            return MainInstance(M, psi, ks)


# random period monomials over a fixed pool of generators

def generator_pool(rng: random.Random, degree: int = 2, n: int = 3):
    """Generators of every kind attached to one random motive and two characters."""
    from .characters import dual_conjugate
    from .periods import expression as ex
    from .lattice import AmbiguityField

    ext, Phi = cm_setup(degree, rng)
    K = ext.base
    M = hodge_from_weight(random_gln_weight(rng, n, degree), E=coefficients(2),
                          delta_hypothesis=bool(rng.getrandbits(1)))
    chi = construct_with_differences(Phi, {t: 2 * rng.randrange(1, 4) + 1 for t in sorted(Phi.members)},
                                     1, "chi")
    psi = construct_with_differences(Phi, {t: 2 * rng.randrange(1, 4) for t in sorted(Phi.members)},
                                     0, "psi")
    pool = [ex.two_pi_i(), ex.disc_half(ext),
            ex.q_hol("pi", AmbiguityField([ext.lgal_field]), ext),
            ex.h_period(psi, False, n), ex.h_period(psi, True, n),
            ex.cm_period(dual_conjugate(chi).word, Phi), ex.cm_period(psi.word * chi.word, Phi),
            ex.l_char(chi, 1)]
    for f in M.E.embeddings:
        pool += [ex.delta_total(M, f, ext), ex.quad_total(M, 1, f, ext)]
    for x in (chi, psi):
        pool += [ex.c_total(x, "+"), ex.c_total(x, "-"), ex.g_total(x)]
        for s in K.embeddings:
            pool += [ex.c_sigma(x, s, "+"), ex.c_sigma(x, s, "-"), ex.g_sigma(x, s)]
        pool += [ex.e_tau(x, t) for t in sorted(Phi.members)]
    for s in K.embeddings:
        pool.append(ex.delta_sigma(M, s, "1", ext))
    fields = [M.E.symbol("1"), chi.value_field, psi.value_field, ext.kgal_field,
              ext.lgal_field]
    return pool, fields


def random_monomial(rng: random.Random, pool, fields, size: int = 4):
    from .lattice import AmbiguityField
    from .periods.expression import PeriodExpression

    exps = {}
    for g in rng.sample(pool, min(size, len(pool))):
        exps[g] = rng.choice([-3, -2, -1, 1, 2, 3])
    amb = AmbiguityField([f for f in fields if rng.random() < 0.3])
    return PeriodExpression(exps, amb)


def random_top_twist(rng: random.Random, n: int, degree: int, e_size: int = 1):
    """TwistData whose r-index is n at every (sigma, phi)."""
    from .critical import TwistData

    M = random_hodge(rng, n, degree, e_size)
    ext, Phi = cm_setup(degree, rng)
    w0 = rng.randrange(-4, 5)
    if (w0 - M.weight) % 2 == 0:
        w0 += 1
    diffs = {}
    for tau in sorted(Phi.members):
        s = ext.restrict(tau)
        floor = max(M.weight - 2 * M.column(s, f)[-1] for f in M.E.embeddings)
        d = max(floor, 0) + 1 + rng.randrange(6)
        if (d - w0) % 2:
            d += 1
        diffs[tau] = d
    chi = construct_with_differences(Phi, diffs, w0, "chi")
    return TwistData(M, chi, Phi)
