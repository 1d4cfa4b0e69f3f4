"""Algebraic Hecke characters of a CM field, tracked by infinity type.

Every character also carries a ``CharacterWord``: a formal product of
primitive characters, their conjugates under the nontrivial automorphism of
L/K, and a power of the idele norm. Words are what CM periods are keyed on,
and the infinity type computed from the word is cross-checked against the
stored one at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .arithmetic import CMExtension, CMType
from .errors import IncompatibleLift, NotCritical, ParityMismatch
from .lattice import FieldSymbol

Infinity = tuple[tuple[str, int], ...]


def _freeze(inf: Mapping[str, int] | Infinity) -> Infinity:
    items = inf.items() if isinstance(inf, Mapping) else inf
    return tuple(sorted((str(t), int(n)) for t, n in items))


@dataclass(frozen=True)
class Atom:
    """A primitive character: the generator of a word."""

    label: str
    infinity: Infinity
    weight: int
    value_field: FieldSymbol
    origin: Atom | None = None

    @cached_property
    def _inf(self) -> dict[str, int]:
        return dict(self.infinity)

    def n(self, tau: str) -> int:
        return self._inf[tau]


Factor = tuple[Atom, bool]  # (atom, conjugated by iota)


@dataclass(frozen=True)
class CharacterWord:
    factors: tuple[tuple[Factor, int], ...] = ()
    norm: int = 0

    @staticmethod
    def _make(exps: dict[Factor, int], norm: int) -> CharacterWord:
        items = [(f, e) for f, e in exps.items() if e]
        items.sort(key=lambda fe: (fe[0][0].label, fe[0][1], repr(fe[0][0])))
        return CharacterWord(tuple(items), norm)

    @classmethod
    def of(cls, atom: Atom) -> CharacterWord:
        return cls((((atom, False), 1),), 0)

    def as_dict(self) -> dict[Factor, int]:
        return dict(self.factors)

    def __mul__(self, other: CharacterWord) -> CharacterWord:
        d = self.as_dict()
        for f, e in other.factors:
            d[f] = d.get(f, 0) + e
        return self._make(d, self.norm + other.norm)

    def __pow__(self, k: int) -> CharacterWord:
        return self._make({f: e * k for f, e in self.factors}, self.norm * k)

    def inverse(self) -> CharacterWord:
        return self ** -1

    def iota(self) -> CharacterWord:
        return self._make({(a, not c): e for (a, c), e in self.factors}, self.norm)

    def twist(self, k: int) -> CharacterWord:
        return CharacterWord(self.factors, self.norm + k)

    def core(self) -> CharacterWord:
        return CharacterWord(self.factors, 0)

    def is_atomic(self) -> bool:
        return self.norm == 0 and len(self.factors) == 1 and self.factors[0][1] == 1

    def infinity_type(self, ext: CMExtension) -> dict[str, int]:
        out = {t: -self.norm for t in ext.embeddings}
        for (a, conj), e in self.factors:
            for t in ext.embeddings:
                out[t] += e * a.n(ext.conj(t) if conj else t)
        return out

    def weight(self) -> int:
        return sum(e * a.weight for (a, _), e in self.factors) - 2 * self.norm

    def text(self) -> str:
        parts = []
        for (a, conj), e in self.factors:
            s = a.label + ("^iota" if conj else "")
            parts.append(s if e == 1 else f"{s}^{e}")
        if self.norm:
            parts.append(f"||.||^{self.norm}")
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class HeckeCharacter:
    extension: CMExtension
    infinity: Infinity
    weight: int
    word: CharacterWord
    value_field: FieldSymbol
    label: str = field(default="chi", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "infinity", _freeze(self.infinity))
        ext = self.extension
        inf = dict(self.infinity)
        if set(inf) != set(ext.embeddings):
            raise ValueError(f"{self.label}: infinity type must cover J_L exactly")
        for t in ext.embeddings:
            if inf[t] + inf[ext.conj(t)] != self.weight:
                raise ValueError(
                    f"{self.label}: n_{t} + n_{ext.conj(t)} != weight {self.weight}"
                )
        if self.word.infinity_type(ext) != inf or self.word.weight() != self.weight:
            raise ValueError(f"{self.label}: word {self.word.text()} disagrees with infinity type")

    @classmethod
    def primitive(cls, ext: CMExtension, infinity: Mapping[str, int],
                  label: str = "chi", weight: int | None = None,
                  value_field: FieldSymbol | None = None) -> HeckeCharacter:
        inf = _freeze(infinity)
        d = dict(inf)
        if weight is None:
            t0 = ext.embeddings[0]
            weight = d[t0] + d[ext.conj(t0)]
        vf = value_field or FieldSymbol(f"Q({label})")
        atom = Atom(label, inf, weight, vf)
        return cls(ext, inf, weight, CharacterWord.of(atom), vf, label)

    @cached_property
    def infinity_type(self) -> dict[str, int]:
        return dict(self.infinity)

    def n(self, tau: str) -> int:
        return self.infinity_type[tau]

    def difference(self, tau: str) -> int:
        return self.n(tau) - self.n(self.extension.conj(tau))

    def _derived(self, infinity: Mapping[str, int], weight: int, word: CharacterWord,
                 label: str, fresh_field: bool) -> HeckeCharacter:
        vf = FieldSymbol(f"Q({label})").within(self.value_field) if fresh_field else self.value_field
        return HeckeCharacter(self.extension, _freeze(infinity), weight, word, vf, label)


def construct_with_differences(phi: CMType, a: Mapping[str, int], w0: int,
                               label: str = "chi") -> HeckeCharacter:
    """Character of weight w0 with n_tau - n_taubar = a_tau for tau in phi."""
    ext = phi.extension
    if set(a) != set(phi.members):
        raise ValueError("differences must be given exactly on the CM type")
    parities = {v % 2 for v in a.values()}
    if len(parities) > 1:
        raise ParityMismatch("the a_tau do not share one parity")
    if parities and w0 % 2 not in parities:
        raise ParityMismatch(f"w0={w0} has the wrong parity")
    inf: dict[str, int] = {}
    for tau in phi.members:
        inf[tau] = (w0 + a[tau]) // 2
        inf[ext.conj(tau)] = (w0 - a[tau]) // 2
    return HeckeCharacter.primitive(ext, inf, label, w0)


def is_critical(chi: HeckeCharacter) -> bool:
    return all(chi.difference(t) != 0 for t in chi.extension.embeddings)


def canonical_cm_type(chi: HeckeCharacter) -> CMType:
    """The CM type {tau : n_tau > n_taubar}; needs chi critical."""
    if not is_critical(chi):
        raise NotCritical(f"{chi.label} is not critical")
    return CMType(chi.extension, frozenset(t for t in chi.extension.embeddings
                                           if chi.difference(t) > 0))


def _rename(label: str, old: str, new: str) -> str:
    return new + label[len(old):] if label.startswith(old) else f"{new}[{label}]"


def norm_twist(chi: HeckeCharacter, k: int) -> HeckeCharacter:
    """chi * ||.||^k: every n_tau drops by k."""
    inf = {t: n - k for t, n in chi.infinity}
    return chi._derived(inf, chi.weight - 2 * k, chi.word.twist(k),
                        f"{chi.label}*||.||^{k}", fresh_field=False)


def chi_from_psi(psi: HeckeCharacter, label: str | None = None) -> HeckeCharacter:
    """chi = psi^2 (psi_0 o N)^-1, rewritten as psi (psi^iota)^-1 ||.||^(-w)."""
    w = psi.weight
    word = psi.word * psi.word.iota().inverse() * CharacterWord(norm=-w)
    inf = {t: 2 * n for t, n in psi.infinity}
    return psi._derived(inf, 2 * w, word, label or _rename(psi.label, "psi", "chi"),
                        fresh_field=True)


def dual_conjugate(chi: HeckeCharacter, label: str | None = None) -> HeckeCharacter:
    """chi^{iota,-1}: infinity type tau -> -n_taubar."""
    ext = chi.extension
    inf = {t: -chi.n(ext.conj(t)) for t in ext.embeddings}
    return chi._derived(inf, -chi.weight, chi.word.iota().inverse(),
                        label or f"check({chi.label})", fresh_field=False)


def tilde_psi(psi: HeckeCharacter, label: str | None = None) -> HeckeCharacter:
    """psi / psi^iota: infinity type m_tau - m_taubar, weight 0."""
    inf = {t: psi.difference(t) for t in psi.extension.embeddings}
    return psi._derived(inf, 0, psi.word * psi.word.iota().inverse(),
                        label or f"tilde({psi.label})", fresh_field=True)


def validate_lift(ext_j: CMExtension, ext: CMExtension, lift: Mapping[str, str]) -> None:
    for tj in ext_j.embeddings:
        if tj not in lift:
            raise IncompatibleLift(f"{tj}: no image under the lift")
        if lift[tj] not in ext.embeddings:
            raise IncompatibleLift(f"{tj}: image {lift[tj]!r} is not an embedding of {ext.label}")
    for tj in ext_j.embeddings:
        if lift[ext_j.conj(tj)] != ext.conj(lift[tj]):
            raise IncompatibleLift(f"{tj}: lift does not commute with conjugation")
    lift_K: dict[str, str] = {}
    for tj in ext_j.embeddings:
        sj, s = ext_j.restrict(tj), ext.restrict(lift[tj])
        if lift_K.setdefault(sj, s) != s:
            raise IncompatibleLift(f"{sj}: lift does not commute with restriction")


def induced_base_lift(ext_j: CMExtension, ext: CMExtension,
                      lift: Mapping[str, str]) -> dict[str, str]:
    """The map J_{K_j} -> J_K determined by a lift J_{L_j} -> J_L."""
    return {ext_j.restrict(tj): ext.restrict(lift[tj]) for tj in ext_j.embeddings}


def base_change(chi: HeckeCharacter, ext_j: CMExtension, lift: Mapping[str, str],
                label: str | None = None) -> HeckeCharacter:
    """chi o N_{L_j/L}: infinity type pulled back along the lift."""
    ext = chi.extension
    validate_lift(ext_j, ext, lift)
    tag = ext_j.label

    def move(a: Atom) -> Atom:
        inf = _freeze({tj: a.n(lift[tj]) for tj in ext_j.embeddings})
        vf = FieldSymbol(f"Q({a.label}@{tag})").within(a.value_field)
        return Atom(f"{a.label}@{tag}", inf, a.weight, vf, origin=a)

    d: dict[Factor, int] = {}
    for (a, conj), e in chi.word.factors:
        d[(move(a), conj)] = d.get((move(a), conj), 0) + e
    word = CharacterWord._make(d, chi.word.norm)
    inf = {tj: chi.n(lift[tj]) for tj in ext_j.embeddings}
    vf = FieldSymbol(f"Q({chi.label}@{tag})").within(chi.value_field)
    return HeckeCharacter(ext_j, _freeze(inf), chi.weight, word, vf,
                          label or f"{chi.label}@{tag}")
