import random

import pytest

from critperiods.arithmetic import CMExtension, TotallyRealField, validate_cm_type
from critperiods.characters import (canonical_cm_type, construct_with_differences,
                                    dual_conjugate, tilde_psi)
from critperiods.critical import TwistData, build_interval_twist
from critperiods.errors import HypothesisFailed, MissingSigma, OutOfAutomorphicRange
from critperiods.hodge import GLnWeight, hodge_from_weight
from critperiods.lattice import AmbiguityField, FieldSymbol
from critperiods.periods.derive import (critical_range_above,
                                        deligne_period_expr, globalize, main_theorem_lhs,
                                        main_theorem_rhs, p_chi_cm_form, p_chi_expr,
                                        rhs_stated_form, tate_twist_expr,
                                        verify_main_theorem)
from critperiods.periods.expression import (PeriodExpression, c_sigma, c_total, cm_period,
                                            delta_sigma, delta_total, disc_half, e_tau,
                                            g_total, monomial, quad_sigma, two_pi_i)
from critperiods.periods.rewrite import equivalent, normalize, without_absorption
from critperiods.sampling import random_main_instance

Q = TotallyRealField("Q", ("s",))
L = CMExtension.standard(Q)
PHI = validate_cm_type(L, ["t_s"])
TWO_PI_I = two_pi_i()


def psi_q(diff=3, weight=1):
    return construct_with_differences(PHI, {"t_s": diff}, weight, "psi")


def atomic(word, Phi, e=1):
    """The exponent map a CM period p(word; Phi)^e normalizes to."""
    return normalize(PeriodExpression.of(cm_period(word, Phi), e)).exps


def m_rank2():
    return hodge_from_weight(GLnWeight(Q, {"s": (0, 0)}))


# monomial arithmetic

def test_inverse_cancels_and_keeps_tag():
    E = AmbiguityField([FieldSymbol("E")])
    x = PeriodExpression.of(TWO_PI_I, 3, E)
    y = x * x ** -1
    assert y.is_one()
    assert y.ambiguity == E


def test_zero_power_is_identity():
    x = monomial((TWO_PI_I, 2), (disc_half(L), 1))
    assert (x ** 0).is_one()


def test_product_joins_tags():
    a = PeriodExpression.one(AmbiguityField([FieldSymbol("E")]))
    b = PeriodExpression.one(AmbiguityField([FieldSymbol("Q(chi)")]))
    assert set((a * b).ambiguity.names()) == {"E", "Q(chi)"}


def test_zero_exponents_dropped():
    x = PeriodExpression({TWO_PI_I: 0, disc_half(L): 1})
    assert x.generators() == [disc_half(L)]


# local and global period formulas

def test_rank_two_top_interval_local_formula():
    M = m_rank2()
    chi = construct_with_differences(PHI, {"t_s": 5}, 1)
    T = TwistData(M, chi, PHI)
    expr = deligne_period_expr(T, "s", "1")
    assert not any(g.kind == "Q_s" for g in expr.exps)
    # Q_sigma(chi)^(r - 1) with r = 2 brings c^+^2 e_tau
    assert expr.exponent(c_sigma(chi, "s", "+")) == 2
    assert expr.exponent(e_tau(chi, "t_s")) == 1


def test_rank_one_uses_a_minus_branch():
    M = hodge_from_weight(GLnWeight(Q, {"s": (0,)}), n_plus=1)
    chi = construct_with_differences(PHI, {"t_s": 3}, 1)
    expr = deligne_period_expr(TwistData(M, chi, PHI), "s", "1")
    assert expr.exponent(c_sigma(chi, "s", "+")) == 1
    assert expr.exponent(c_sigma(chi, "s", "-")) == 0
    M0 = hodge_from_weight(GLnWeight(Q, {"s": (0,)}), n_plus=0)
    expr0 = deligne_period_expr(TwistData(M0, chi, PHI), "s", "1")
    assert expr0.exponent(c_sigma(chi, "s", "-")) == 1


def test_quadratic_periods_below_top_interval():
    M = hodge_from_weight(GLnWeight(Q, {"s": (2, 1, -1, -2)}))
    chi = build_interval_twist(M, PHI, 3, "1")
    expr = deligne_period_expr(TwistData(M, chi, PHI), "s", "1")
    assert expr.exponent(quad_sigma(M, 1, "s", "1", L)) == 1
    assert expr.exponent(quad_sigma(M, 2, "s", "1", L)) == 0


def test_globalize_single_place():
    chi = construct_with_differences(PHI, {"t_s": 3}, 1)
    fam = {"s": PeriodExpression.of(c_sigma(chi, "s", "+"))}
    out = globalize(fam, 1, L)
    # c^+ ~ D^(1/2) c_s^+, and the target carries D^(n+/2) with n+ = 1
    assert out.exps == {c_total(chi, "+"): 1}
    assert L.kgal_field in out.ambiguity.atoms or out.ambiguity.contains(L.kgal_field)


def test_globalize_delta_discriminant_power():
    K = TotallyRealField("K", ("s1", "s2"))
    ext = CMExtension.standard(K)
    M = hodge_from_weight(GLnWeight(K, {"s1": (1, 0, -1), "s2": (1, 0, -1)}))
    fam = {s: PeriodExpression.of(delta_sigma(M, s, "1", ext)) for s in K.embeddings}
    out = globalize(fam, 0, ext)
    assert out.exponent(delta_total(M, "1", ext)) == 1
    assert out.exponent(disc_half(ext)) == -3
    with pytest.raises(MissingSigma):
        globalize({"s1": fam["s1"]}, 0, ext)


def test_discriminant_absorbed_under_kgal():
    x = PeriodExpression.of(disc_half(L), 2, AmbiguityField([L.kgal_field]))
    assert normalize(x).is_one()
    y = PeriodExpression.of(disc_half(L), 2)
    assert normalize(y).exponent(disc_half(L)) == 2


def test_tate_twist_expr_arithmetic():
    K = TotallyRealField("K", ("s1", "s2"))
    ext = CMExtension.standard(K)
    Phi = validate_cm_type(ext, ["t_s1", "t_s2"])
    M = hodge_from_weight(GLnWeight(K, {"s1": (1, 0, -1), "s2": (1, 0, -1)}))
    chi = construct_with_differences(Phi, {"t_s1": 9, "t_s2": 9}, 1)
    T = TwistData(M, chi, Phi)
    base = PeriodExpression.one()
    one = tate_twist_expr(base, T, 1)
    assert one.exponent(TWO_PI_I) == 6
    assert all(one.exponent(e_tau(chi, t)) == -1 for t in Phi.members)
    zero = tate_twist_expr(base, T, 0)
    assert all(zero.exponent(e_tau(chi, t)) == 1 for t in Phi.members)
    assert normalize(zero).exps == {}
    for k in range(-3, 4):
        a = normalize(tate_twist_expr(base, T, k))
        b = normalize(tate_twist_expr(base, T, k + 2))
        assert b.exponent(TWO_PI_I) - a.exponent(TWO_PI_I) == 2 * 2 * 3


# rewrite rules

def test_minus_over_plus_is_trivial():
    chi = construct_with_differences(PHI, {"t_s": 3}, 1)
    x = monomial((c_sigma(chi, "s", "-"), 1), (c_sigma(chi, "s", "+"), -1),
                 ambiguity=AmbiguityField([chi.value_field]))
    assert normalize(x).is_one()


def test_c_plus_to_cm_period():
    chi = construct_with_differences(PHI, {"t_s": 3}, 1)
    x = PeriodExpression.of(c_total(chi, "+"), 1,
                            AmbiguityField([chi.value_field, L.kgal_field]))
    out = normalize(x)
    assert out.exps == atomic(dual_conjugate(chi).word, canonical_cm_type(chi))


def test_e_tau_sign_rule_without_absorption():
    chi = construct_with_differences(PHI, {"t_s": 3}, 1)
    x = PeriodExpression.of(e_tau(chi, "t_s"), 5)
    assert normalize(x, rules=without_absorption()).exps == {e_tau(chi, "t_s"): 1}


def test_normalize_trace_records_rules():
    chi = construct_with_differences(PHI, {"t_s": 3}, 1)
    trace = []
    normalize(PeriodExpression.of(c_total(chi, "-")), trace)
    names = [st.rule for st in trace]
    assert names[0] == "igualde"
    assert "blasius" in names


def test_equivalent_uses_common_tag():
    chi = construct_with_differences(PHI, {"t_s": 3}, 1)
    a = PeriodExpression.of(e_tau(chi, "t_s"))
    b = PeriodExpression.one(AmbiguityField([chi.value_field]))
    assert equivalent(a, b)
    assert not equivalent(a * PeriodExpression.of(TWO_PI_I), b)


# P(chi)

def test_p_chi_top_interval():
    chi = construct_with_differences(PHI, {"t_s": 5}, 1)
    out = normalize(p_chi_expr(chi, 4, PHI, 4))
    assert out.exps == atomic(dual_conjugate(chi).word, PHI, 4)


def test_p_chi_one_below_top():
    chi = construct_with_differences(PHI, {"t_s": 5}, 1)
    out = normalize(p_chi_expr(chi, 3, PHI, 4))
    want = dict(atomic(dual_conjugate(chi).word, PHI, 2))
    want[g_total(chi)] = 1
    want[TWO_PI_I] = want.get(TWO_PI_I, 0) - chi.weight
    assert out.exps == {g: e for g, e in want.items() if e}
    assert out == normalize(p_chi_cm_form(chi, 3, PHI, 4))


# the main comparison

def test_rank_two_example():
    M, psi = m_rank2(), psi_q()
    rhs = main_theorem_rhs(M, psi, 4)
    want = dict(atomic(tilde_psi(psi).word, PHI, 2))
    want[TWO_PI_I] = want.get(TWO_PI_I, 0) + 5
    assert rhs.exps == want
    assert rhs.exponent(TWO_PI_I) == 5
    lhs = main_theorem_lhs(M, psi, 4)
    assert lhs.exps == rhs.exps
    assert rhs.exps == normalize(rhs_stated_form(M, psi, 4)).exps
    assert verify_main_theorem(M, psi, 4).passed


def test_odd_rank_needs_delta_flag():
    M = hodge_from_weight(GLnWeight(Q, {"s": (1, 0, -1)}))
    psi = psi_q(7, 1)
    ks = critical_range_above(M, psi)
    assert ks
    with pytest.raises(HypothesisFailed, match="delta"):
        main_theorem_rhs(M, psi, ks[0])
    rep = verify_main_theorem(M, psi, ks[0])
    assert not rep.passed
    assert any(g.kind == "delta" for g in rep.residual.exps)
    flagged = hodge_from_weight(GLnWeight(Q, {"s": (1, 0, -1)}), delta_hypothesis=True)
    assert verify_main_theorem(flagged, psi, ks[0]).passed


def test_automorphic_range_bounds():
    M, psi = m_rank2(), psi_q()
    with pytest.raises(OutOfAutomorphicRange, match="not > n"):
        main_theorem_lhs(M, psi, psi.weight + M.rank)
    # m = k - w at the upper bound a_(tau,n) + m_tau - m_taubar is accepted
    top = M.gln_weight()["s"][-1] + psi.difference("t_s")
    main_theorem_lhs(M, psi, top + psi.weight)
    with pytest.raises(OutOfAutomorphicRange):
        main_theorem_lhs(M, psi, top + psi.weight + 1)


def test_hypothesis_two_reported():
    M = hodge_from_weight(GLnWeight(Q, {"s": (1, 0, -1)}), delta_hypothesis=True)
    psi = psi_q(1, 1)
    rep = verify_main_theorem(M, psi, 4)
    assert not rep.passed
    assert "(2)" in rep.notes[0]


def test_random_instances_pass():
    rng = random.Random(12)
    for _ in range(40):
        inst = random_main_instance(rng, rng.randint(1, 6), rng.randint(1, 2))
        for k in inst.ks:
            rep = verify_main_theorem(inst.M, inst.psi, k)
            assert rep.passed, rep.notes
            assert rep.ambiguity <= AmbiguityField(
                [inst.M.E.symbol("1"), inst.psi.value_field, inst.psi.extension.lgal_field])


def test_report_json_shape():
    rep = verify_main_theorem(m_rank2(), psi_q(), 4)
    js = rep.to_json()
    assert js["verdict"] == "PASS"
    assert js["residual"] == []
    assert set(js) == {"verdict", "lhs_normal", "rhs_normal", "residual", "ambiguity", "notes"}
