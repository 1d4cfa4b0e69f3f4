"""LaTeX rendering of normal forms."""

from __future__ import annotations

import re

from .expression import Generator, PeriodExpression

_GREEK = {"psi", "chi", "phi", "pi", "sigma", "tau", "delta", "lambda", "mu", "rho"}


def _name(label: str) -> str:
    m = re.fullmatch(r"([A-Za-z]+)(.*)", label)
    if not m:
        return label
    head, rest = m.groups()
    head = f"\\{head}" if head in _GREEK else head
    rest = rest.replace("^iota", "^{\\iota}")
    rest = re.sub(r"\^\((.*?)\)", r"^{(\1)}", rest)
    return head + rest


def _phi(Phi) -> str:
    lab = Phi.extension.label
    return "\\Phi" if lab == "L" else f"\\Phi_{{{lab}}}"


def _field(name: str) -> str:
    name = name.replace("^Gal", "^{\\operatorname{Gal}}")
    if name.startswith("~"):
        name = f"\\tilde {name[1:]}"
    name = re.sub(r"^Q\((.*)\)$", lambda m: f"\\mathbb Q({_name(m.group(1))})", name)
    return name


def _gen(g: Generator) -> str:
    k, a = g.kind, g.args
    if k == "2pii":
        return "(2\\pi i)"
    if k == "D":
        return f"D_{{{a[0].label}}}^{{1/2}}"
    if k == "p":
        return f"p({_word(a[0])};{_phi(a[1])})"
    if k == "G":
        return f"G({_name(a[0].label)})"
    if k == "delta":
        return f"\\delta({a[0].label})_{{{a[1]}}}"
    if k == "Q":
        return f"Q_{{{a[1]},{a[2]}}}({a[0].label})"
    if k == "e":
        return f"e_{{{a[1]}}}({_name(a[0].label)})"
    if k == "c":
        return f"c^{{{a[1]}}}({_name(a[0].label)})"
    if k == "cM":
        return f"c^{{+}}({a[0].M.label}({_name(a[0].chi.label)}))_{{{a[2]}}}"
    if k == "Lchi":
        return f"L({_name(a[0].label)},{a[1]})"
    if k == "LM":
        return f"L({a[0].M.label}({_name(a[0].chi.label)}),{a[1]})_{{{a[2]}}}"
    return g.text()


def _braced(s: str) -> str:
    return f"{{{s}}}" if "^" in s else s


def _power(base: str, e: int) -> str:
    return base if e == 1 else f"{_braced(base)}^{{{e}}}"


def _word(w) -> str:
    parts = []
    for (atom, conj), e in w.factors:
        s = _name(atom.label)
        if conj:
            s = f"{_braced(s)}^{{\\iota}}"
        parts.append(s if e == 1 else f"{_braced(s)}^{{{e}}}")
    if w.norm:
        parts.append(f"\\|\\cdot\\|^{{{w.norm}}}")
    return "".join(parts) or "1"


def _tilde_pairs(expr: PeriodExpression) -> tuple[list[tuple[str, int]], set[Generator]]:
    """Pair p(a;Phi)^e with p(a^iota;Phi)^-e and print them as p(tilde a;Phi)^e."""
    used: set[Generator] = set()
    out = []
    for g, e in expr.items():
        if g.kind != "p" or g in used or not g.args[0].is_atomic():
            continue
        (atom, conj), _ = g.args[0].factors[0]
        if conj:
            continue
        for h, x in expr.items():
            if (h.kind == "p" and h.args[1] == g.args[1] and h.args[0].is_atomic()
                    and h.args[0].factors[0][0] == (atom, True) and x == -e):
                used |= {g, h}
                out.append((f"p(\\tilde{{{_name(atom.label)}}};{_phi(g.args[1])})", e))
    return out, used


def to_latex(expr: PeriodExpression, with_ambiguity: bool = True) -> str:
    pairs, used = _tilde_pairs(expr)
    terms = []
    tilde_done = False
    for g, e in expr.items():
        if g in used:
            if not tilde_done:
                terms += [_power(s, x) for s, x in pairs]
                tilde_done = True
            continue
        terms.append(_power(_gen(g), e))
    body = "\\,".join(terms) or "1"
    if not with_ambiguity:
        return body
    F = "".join(_field(n) for n in expr.ambiguity.names()) or "\\mathbb Q"
    return f"{body} \\sim_{{{F}}}"
