import random

import pytest

from critperiods.errors import PreconditionError
from critperiods.hodge import GLnWeight, hodge_from_weight
from critperiods.periods.expression import PeriodExpression, quad_total
from critperiods.periods.quadratic import (direct_quotient, qj_expr, telescoped,
                                           verify_qj, verify_qj_lvalue, verify_telescoping)
from critperiods.periods.rewrite import normalize
from critperiods.sampling import cm_setup, coefficients, random_gln_weight, real_field


def rank4():
    K = real_field(1)
    M = hodge_from_weight(GLnWeight(K, {"s1": (2, 1, -1, -2)}), E=coefficients(1))
    ext, Phi = cm_setup(1, random.Random(1))
    return M, Phi


def test_rank4_column():
    M, _ = rank4()
    assert M.column("s1", "1") == (5, 3, 0, -2)
    assert M.weight == 3


def test_q1_shape():
    M, Phi = rank4()
    q = normalize(qj_expr(M, "1", 1, Phi))
    kinds = sorted(g.kind for g in q.exps)
    assert kinds == ["2pii", "G", "cM", "p"]
    assert q.exps[next(g for g in q.exps if g.kind == "cM")] == 1


def test_q1_verifies():
    M, Phi = rank4()
    assert verify_qj(M, "1", 1, Phi).passed
    assert verify_telescoping(M, "1", 1, Phi).passed


def test_j_range():
    M, Phi = rank4()
    for j in (0, 2):
        with pytest.raises(PreconditionError):
            qj_expr(M, "1", j, Phi)


def test_telescoping_matches_direct_quotient():
    rng = random.Random(17)
    for n in (6, 8):
        M = hodge_from_weight(random_gln_weight(rng, n, 1), E=coefficients(1))
        _, Phi = cm_setup(1, rng)
        for j in range(1, (n + 1) // 2):
            assert normalize(telescoped(M, "1", j, Phi)).exps == \
                normalize(direct_quotient(M, "1", j, Phi)).exps


def test_qj_quotients_random():
    rng = random.Random(29)
    for n in (4, 5, 6):
        for _ in range(4):
            d = rng.randint(1, 2)
            M = hodge_from_weight(random_gln_weight(rng, n, d), E=coefficients(2))
            _, Phi = cm_setup(d, rng)
            for phi in M.E.embeddings:
                for j in range(1, (n + 1) // 2):
                    assert verify_qj(M, phi, j, Phi).passed


def test_lvalue_route_notes_noncritical_point():
    M, Phi = rank4()
    rep = verify_qj_lvalue(M, 1, Phi)
    assert rep.passed
    assert any("not critical" in n for n in rep.notes)


def test_mutated_target_fails():
    M, Phi = rank4()
    rep = verify_qj(M, "1", 1, Phi)
    wrong = rep.rhs_normal * PeriodExpression.of(quad_total(M, 1, "1", Phi.extension))
    assert normalize(wrong).exps != rep.lhs_normal.exps
