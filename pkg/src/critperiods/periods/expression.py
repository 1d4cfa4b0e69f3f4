"""Period generators and formal monomials in them."""

from __future__ import annotations

from typing import Any, Iterable, Mapping

from ..arithmetic import CMExtension, CMType
from ..characters import CharacterWord, HeckeCharacter
from ..hodge import HodgeData
from ..lattice import AmbiguityField, FieldSymbol

KIND_ORDER = {
    "2pii": 0, "D": 1, "p": 2, "ph": 3, "G": 4, "G_s": 5, "delta": 6, "delta_s": 7,
    "Q": 8, "Q_s": 9, "c": 10, "c_s": 11, "cM": 12, "e": 13, "Lchi": 14, "LM": 15,
    "Qhol": 16,
}


def _phi_name(Phi: CMType) -> str:
    lab = Phi.extension.label
    return "Phi" if lab == "L" else f"Phi_{lab}"


class Generator:
    """A period symbol. Identity is (kind, args); ``ctx`` only supplies field tags."""

    __slots__ = ("kind", "args", "ctx", "_hash", "_text")

    def __init__(self, kind: str, args: tuple, ctx: CMExtension | None = None):
        if kind not in KIND_ORDER:
            raise ValueError(f"unknown generator kind {kind!r}")
        self.kind = kind
        self.args = args
        self.ctx = ctx
        self._hash = hash((kind, args))
        self._text: str | None = None

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Generator) and self._hash == other._hash
                and self.kind == other.kind and self.args == other.args)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Generator({self.text()})"

    def __str__(self) -> str:
        return self.text()

    def sort_key(self) -> tuple[int, str]:
        return (KIND_ORDER[self.kind], self.text())

    def text(self) -> str:
        if self._text is None:
            self._text = _text(self)
        return self._text


def _text(g: Generator) -> str:
    k, a = g.kind, g.args
    if k == "2pii":
        return "(2pi i)"
    if k == "D":
        return f"D_{a[0].label}^(1/2)"
    if k == "delta_s":
        return f"delta_{a[1]}({a[0].label})_{a[2]}"
    if k == "delta":
        return f"delta({a[0].label})_{a[1]}"
    if k == "Q_s":
        return f"Q_{a[1]},{a[2]}({a[0].label})_{a[3]}"
    if k == "Q":
        return f"Q_{a[1]}({a[0].label})_{a[2]}"
    if k == "c_s":
        return f"c^{a[2]}_{a[1]}({a[0].label})"
    if k == "c":
        return f"c^{a[1]}({a[0].label})"
    if k == "cM":
        tw = "" if a[1] is None else f"({a[1]})"
        return f"c^+({a[0].label}{tw})_{a[2]}"
    if k == "G_s":
        return f"G_{a[1]}({a[0].label})"
    if k == "G":
        return f"G({a[0].label})"
    if k == "p":
        return f"p({a[0].text()};{_phi_name(a[1])})"
    if k == "ph":
        return f"p({a[0].label}^-1;hbar)" if a[1] else f"p({a[0].label};h)"
    if k == "e":
        return f"e_{a[1]}({a[0].label})"
    if k == "Lchi":
        return f"L({a[0].label},{a[1]})"
    if k == "LM":
        return f"L({a[0].label},{a[1]})_{a[2]}"
    if k == "Qhol":
        return f"Q^hol({a[0]})"
    raise AssertionError(k)


# constructors

def two_pi_i() -> Generator:
    return Generator("2pii", ())


def disc_half(ext: CMExtension) -> Generator:
    return Generator("D", (ext.base,), ext)


def delta_sigma(M: HodgeData, sigma: str, phi: str, ext: CMExtension | None = None) -> Generator:
    return Generator("delta_s", (M, sigma, phi), ext)


def delta_total(M: HodgeData, phi: str, ext: CMExtension | None = None) -> Generator:
    return Generator("delta", (M, phi), ext)


def quad_sigma(M: HodgeData, j: int, sigma: str, phi: str,
               ext: CMExtension | None = None) -> Generator:
    return Generator("Q_s", (M, j, sigma, phi), ext)


def quad_total(M: HodgeData, j: int, phi: str, ext: CMExtension | None = None) -> Generator:
    return Generator("Q", (M, j, phi), ext)


def c_sigma(chi: HeckeCharacter, sigma: str, sign: str) -> Generator:
    return Generator("c_s", (chi, sigma, sign), chi.extension)


def c_total(chi: HeckeCharacter, sign: str) -> Generator:
    return Generator("c", (chi, sign), chi.extension)


def c_motive(T: Any, k: int | None, phi: str) -> Generator:
    return Generator("cM", (T, k, phi), T.chi.extension)


def g_sigma(chi: HeckeCharacter, sigma: str) -> Generator:
    return Generator("G_s", (chi, sigma), chi.extension)


def g_total(chi: HeckeCharacter) -> Generator:
    return Generator("G", (chi,), chi.extension)


def cm_period(word: CharacterWord, Phi: CMType) -> Generator:
    return Generator("p", (word, Phi), Phi.extension)


def h_period(psi: HeckeCharacter, bar: bool, n: int) -> Generator:
    return Generator("ph", (psi, bar, n), psi.extension)


def e_tau(chi: HeckeCharacter, tau: str) -> Generator:
    return Generator("e", (chi, chi.extension.canonical(tau)), chi.extension)


def l_char(chi: HeckeCharacter, m: int) -> Generator:
    return Generator("Lchi", (chi, m), chi.extension)


def l_motive(T: Any, k: int, phi: str) -> Generator:
    return Generator("LM", (T, k, phi), T.chi.extension)


def q_hol(label: str, field: AmbiguityField, ext: CMExtension | None = None) -> Generator:
    return Generator("Qhol", (label, field), ext)


class PeriodExpression:
    """Finitely supported exponent map on generators plus an ambiguity tag."""

    __slots__ = ("exps", "ambiguity")

    def __init__(self, exps: Mapping[Generator, int] | None = None,
                 ambiguity: AmbiguityField | None = None):
        self.exps = {g: int(e) for g, e in (exps or {}).items() if e}
        self.ambiguity = ambiguity if ambiguity is not None else AmbiguityField()

    @classmethod
    def one(cls, ambiguity: AmbiguityField | None = None) -> PeriodExpression:
        return cls({}, ambiguity)

    @classmethod
    def of(cls, g: Generator, e: int = 1,
           ambiguity: AmbiguityField | None = None) -> PeriodExpression:
        return cls({g: e}, ambiguity)

    def exponent(self, g: Generator) -> int:
        return self.exps.get(g, 0)

    def items(self) -> list[tuple[Generator, int]]:
        return sorted(self.exps.items(), key=lambda ge: ge[0].sort_key())

    def generators(self) -> list[Generator]:
        return [g for g, _ in self.items()]

    def __mul__(self, other: PeriodExpression) -> PeriodExpression:
        out = dict(self.exps)
        for g, e in other.exps.items():
            out[g] = out.get(g, 0) + e
        return PeriodExpression(out, self.ambiguity.join(other.ambiguity))

    def __truediv__(self, other: PeriodExpression) -> PeriodExpression:
        return self * other ** -1

    def __pow__(self, k: int) -> PeriodExpression:
        if k == 0:
            return PeriodExpression({}, self.ambiguity)
        return PeriodExpression({g: e * k for g, e in self.exps.items()}, self.ambiguity)

    def join(self, *fields: AmbiguityField | FieldSymbol) -> PeriodExpression:
        return PeriodExpression(self.exps, self.ambiguity.join(*fields))

    def with_ambiguity(self, amb: AmbiguityField) -> PeriodExpression:
        return PeriodExpression(self.exps, amb)

    def times(self, g: Generator, e: int = 1) -> PeriodExpression:
        return self * PeriodExpression.of(g, e)

    def same_exponents(self, other: PeriodExpression) -> bool:
        return self.exps == other.exps

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, PeriodExpression) and self.exps == other.exps
                and self.ambiguity == other.ambiguity)

    def __hash__(self) -> int:
        return hash((frozenset(self.exps.items()), self.ambiguity))

    def is_one(self) -> bool:
        return not self.exps

    def text(self) -> str:
        body = " * ".join(g.text() if e == 1 else f"{g.text()}^{e}" for g, e in self.items())
        return f"{body or '1'}  ~ {self.ambiguity}"

    def terms(self) -> list[str]:
        return [f"{g.text()}^{e}" for g, e in self.items()]

    def __repr__(self) -> str:
        return f"PeriodExpression({self.text()})"


def product(exprs: Iterable[PeriodExpression]) -> PeriodExpression:
    out = PeriodExpression.one()
    for x in exprs:
        out = out * x
    return out


def monomial(*pairs: tuple[Generator, int], ambiguity: AmbiguityField | None = None) -> PeriodExpression:
    out: dict[Generator, int] = {}
    for g, e in pairs:
        out[g] = out.get(g, 0) + e
    return PeriodExpression(out, ambiguity)
