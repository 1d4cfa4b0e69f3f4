import random
import re

from critperiods.periods.expression import PeriodExpression, cm_period, disc_half, two_pi_i
from critperiods.periods.latex import to_latex
from critperiods.periods.rewrite import normalize
from critperiods.sampling import cm_setup
from critperiods.characters import construct_with_differences


def setup():
    ext, Phi = cm_setup(1, random.Random(0))
    psi = construct_with_differences(Phi, {t: 2 for t in Phi.members}, 0, "psi")
    return ext, Phi, psi


def test_empty_is_one():
    assert to_latex(PeriodExpression(), with_ambiguity=False) == "1"
    assert to_latex(PeriodExpression()) == "1 \\sim_{\\mathbb Q}"


def test_basic_generators():
    ext, _, _ = setup()
    e = PeriodExpression.of(two_pi_i(), 3) * PeriodExpression.of(disc_half(ext))
    s = to_latex(e, with_ambiguity=False)
    assert "(2\\pi i)^{3}" in s
    assert "D_{K}^{1/2}" in s
    assert "^{1}" not in s


def test_tilde_pairing():
    _, Phi, psi = setup()
    x = normalize(PeriodExpression.of(cm_period(psi.word, Phi)))
    s = to_latex(x)
    assert "\\tilde" in s or "\\iota" not in s
    assert s.endswith("}") and "\\sim_" in s


def test_greek_names():
    _, Phi, psi = setup()
    s = to_latex(normalize(PeriodExpression.of(cm_period(psi.word, Phi), 2)))
    assert "\\psi" in s


def _no_double_superscript(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += (ch == "{") - (ch == "}")
        if depth < 0:
            return False
    return depth == 0 and not re.search(r"\^(\{[^{}]*\}|[A-Za-z0-9])\^", s)


def test_rendering_is_valid_tex():
    from critperiods.sampling import generator_pool, random_monomial
    rng = random.Random(12)
    pool, fields = generator_pool(rng, 2, 3)
    for _ in range(200):
        s = to_latex(normalize(random_monomial(rng, pool, fields)))
        assert _no_double_superscript(s), s
