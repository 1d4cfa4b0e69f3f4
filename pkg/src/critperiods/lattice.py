"""Symbolic number fields ordered by declared inclusion.

A ``FieldSymbol`` is a name together with the names of every field known to
contain it. ``AmbiguityField`` is a finite join of symbols; it is what the
``~_F`` relation between periods is taken modulo.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

RATIONALS = "Q"


@dataclass(frozen=True)
class FieldSymbol:
    """Identity is the name; ``over`` lists the names of known overfields."""

    name: str
    over: frozenset[str] = field(default=frozenset(), compare=False)

    def within(self, *bigger: FieldSymbol) -> FieldSymbol:
        """Return a copy declared to lie inside each field in ``bigger``."""
        names = set(self.over)
        for b in bigger:
            names.add(b.name)
            names |= b.over
        names.discard(self.name)
        return FieldSymbol(self.name, frozenset(names))

    def __le__(self, other: FieldSymbol) -> bool:
        return (
            self.name == RATIONALS
            or self.name == other.name
            or other.name in self.over
        )

    def __str__(self) -> str:
        return self.name


QQ = FieldSymbol(RATIONALS)


class AmbiguityField:
    """Join of atomic field symbols, kept as its set of maximal atoms."""

    __slots__ = ("atoms",)

    def __init__(self, atoms: Iterable[FieldSymbol] = ()):
        merged: dict[str, frozenset[str]] = {}
        for a in atoms:
            if a.name != RATIONALS:
                merged[a.name] = merged.get(a.name, frozenset()) | a.over
        pool = {FieldSymbol(k, v) for k, v in merged.items()}
        keep = frozenset(
            a for a in pool if not any(b != a and a <= b for b in pool)
        )
        object.__setattr__(self, "atoms", keep)

    def __setattr__(self, key, value):
        raise AttributeError("AmbiguityField is immutable")

    def contains(self, sym: FieldSymbol) -> bool:
        return sym.name == RATIONALS or any(sym <= a for a in self.atoms)

    def join(self, *others: AmbiguityField | FieldSymbol) -> AmbiguityField:
        pool = set(self.atoms)
        for o in others:
            if isinstance(o, FieldSymbol):
                pool.add(o)
            else:
                pool |= o.atoms
        return AmbiguityField(pool)

    __or__ = join

    def __le__(self, other: AmbiguityField) -> bool:
        return all(other.contains(a) for a in self.atoms)

    def __ge__(self, other: AmbiguityField) -> bool:
        return other <= self

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AmbiguityField) and self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash(self.atoms)

    def names(self) -> list[str]:
        return sorted(a.name for a in self.atoms)

    def __str__(self) -> str:
        return "{" + ", ".join(self.names()) + "}" if self.atoms else "Q"

    def __repr__(self) -> str:
        return f"AmbiguityField({self})"


def ambiguity(*syms: FieldSymbol | AmbiguityField) -> AmbiguityField:
    return AmbiguityField().join(*syms)
