"""Totally real fields, CM extensions and CM types as labelled finite sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping

from .errors import InvalidExtension, NotACMType
from .lattice import FieldSymbol


@dataclass(frozen=True)
class TotallyRealField:
    label: str
    embeddings: tuple[str, ...]
    galois_closure_label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "embeddings", tuple(self.embeddings))
        if not self.embeddings:
            raise InvalidExtension(f"{self.label}: needs at least one embedding")
        if len(set(self.embeddings)) != len(self.embeddings):
            raise InvalidExtension(f"{self.label}: repeated embedding label")
        if not self.galois_closure_label:
            object.__setattr__(self, "galois_closure_label", f"{self.label}^Gal")

    @property
    def degree(self) -> int:
        return len(self.embeddings)


@dataclass(frozen=True)
class CoefficientField:
    label: str = "E"
    embeddings: tuple[str, ...] = ("1",)
    distinguished: str | None = "1"

    def __post_init__(self) -> None:
        object.__setattr__(self, "embeddings", tuple(self.embeddings))
        if len(set(self.embeddings)) != len(self.embeddings) or not self.embeddings:
            raise InvalidExtension(f"{self.label}: bad embedding list")
        if self.distinguished is not None and self.distinguished not in self.embeddings:
            raise InvalidExtension(
                f"{self.label}: distinguished embedding {self.distinguished!r} not in J_E"
            )

    def symbol(self, phi: str | None = None) -> FieldSymbol:
        """phi(E) as a field symbol; the distinguished embedding gives E itself."""
        if phi is None or phi == self.distinguished:
            return FieldSymbol(self.label)
        return FieldSymbol(f"{phi}({self.label})")


@dataclass(frozen=True)
class CMExtension:
    base: TotallyRealField
    embeddings: tuple[str, ...]
    conjugation: tuple[tuple[str, str], ...]
    restriction: tuple[tuple[str, str], ...]
    label: str = "L"
    ambient_label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "embeddings", tuple(self.embeddings))
        conj = dict(self.conjugation)
        res = dict(self.restriction)
        object.__setattr__(self, "conjugation", tuple(sorted(conj.items())))
        object.__setattr__(self, "restriction", tuple(sorted(res.items())))
        if not self.ambient_label:
            object.__setattr__(self, "ambient_label", f"~{self.label}")
        emb = set(self.embeddings)
        if len(emb) != len(self.embeddings):
            raise InvalidExtension(f"{self.label}: repeated embedding label")
        for tau in self.embeddings:
            if tau not in conj:
                raise InvalidExtension(f"{tau}: missing from conjugation")
            if tau not in res:
                raise InvalidExtension(f"{tau}: missing from restriction")
            bar = conj[tau]
            if bar not in emb:
                raise InvalidExtension(f"{tau}: conjugate {bar!r} is not an embedding")
            if bar == tau:
                raise InvalidExtension(f"{tau}: conjugation has a fixed point")
            if conj[bar] != tau:
                raise InvalidExtension(f"{tau}: conjugation is not an involution")
            if res[tau] not in self.base.embeddings:
                raise InvalidExtension(f"{tau}: restricts to unknown {res[tau]!r}")
            if res[bar] != res[tau]:
                raise InvalidExtension(f"{tau}: conjugate restricts elsewhere")
        extra = set(conj) - emb or set(res) - emb
        if extra:
            raise InvalidExtension(f"unknown labels {sorted(extra)}")
        counts = {s: 0 for s in self.base.embeddings}
        for tau in self.embeddings:
            counts[res[tau]] += 1
        bad = [s for s, c in counts.items() if c != 2]
        if bad:
            raise InvalidExtension(f"{bad[0]}: restriction fiber does not have size 2")

    @classmethod
    def standard(cls, base: TotallyRealField, label: str = "L",
                 ambient_label: str = "") -> CMExtension:
        """CM extension with embeddings ``t_s`` and ``tbar_s`` above each ``s``."""
        emb, conj, res = [], {}, {}
        for s in base.embeddings:
            t, tb = f"t_{s}", f"tbar_{s}"
            emb += [t, tb]
            conj[t], conj[tb] = tb, t
            res[t] = res[tb] = s
        return cls(base, tuple(emb), tuple(conj.items()), tuple(res.items()),
                   label, ambient_label)

    @cached_property
    def conj_map(self) -> dict[str, str]:
        return dict(self.conjugation)

    @cached_property
    def restrict_map(self) -> dict[str, str]:
        return dict(self.restriction)

    @cached_property
    def fibers(self) -> dict[str, tuple[str, str]]:
        out: dict[str, list[str]] = {s: [] for s in self.base.embeddings}
        for tau in self.embeddings:
            out[self.restrict_map[tau]].append(tau)
        return {s: tuple(sorted(v)) for s, v in out.items()}

    def conj(self, tau: str) -> str:
        return self.conj_map[tau]

    def restrict(self, tau: str) -> str:
        return self.restrict_map[tau]

    def canonical(self, tau: str) -> str:
        """Representative of the pair {tau, conj(tau)} used for e_tau."""
        return min(tau, self.conj(tau))

    # field symbols used as ambiguity tags
    @cached_property
    def tilde_field(self) -> FieldSymbol:
        return FieldSymbol(self.ambient_label)

    @cached_property
    def lgal_field(self) -> FieldSymbol:
        return FieldSymbol(f"{self.label}^Gal").within(self.tilde_field)

    @cached_property
    def kgal_field(self) -> FieldSymbol:
        return FieldSymbol(self.base.galois_closure_label).within(self.lgal_field)

    def sigma_field(self, sigma: str) -> FieldSymbol:
        return FieldSymbol(f"{sigma}({self.base.label})").within(self.kgal_field)


@dataclass(frozen=True)
class CMType:
    extension: CMExtension
    members: frozenset[str] = field(default=frozenset())

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))

    def over(self, sigma: str) -> str:
        for tau in self.extension.fibers[sigma]:
            if tau in self.members:
                return tau
        raise NotACMType(f"{sigma}: no member above")

    def sorted(self) -> list[str]:
        return sorted(self.members)


def validate_cm_type(ext: CMExtension, members: Iterable[str]) -> CMType:
    mem = frozenset(members)
    unknown = mem - set(ext.embeddings)
    if unknown:
        raise NotACMType(f"{sorted(unknown)[0]}: not an embedding of {ext.label}")
    for s, fib in ext.fibers.items():
        hit = sum(t in mem for t in fib)
        if hit == 0:
            raise NotACMType(f"{s}: fiber missed")
        if hit == 2:
            raise NotACMType(f"{s}: fiber hit twice")
    return CMType(ext, mem)


def conjugate_type(phi: CMType) -> CMType:
    ext = phi.extension
    return CMType(ext, frozenset(ext.conj(t) for t in phi.members))


def all_cm_types(ext: CMExtension) -> list[CMType]:
    fibers = [ext.fibers[s] for s in ext.base.embeddings]
    return [CMType(ext, frozenset(choice)) for choice in product(*fibers)]


def extension_from_maps(base: TotallyRealField, conjugation: Mapping[str, str],
                        restriction: Mapping[str, str], label: str = "L") -> CMExtension:
    emb = tuple(sorted(restriction))
    return CMExtension(base, emb, tuple(conjugation.items()),
                       tuple(restriction.items()), label)
