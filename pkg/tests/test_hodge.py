import random

import pytest

from critperiods.arithmetic import CoefficientField, TotallyRealField
from critperiods.errors import InvalidHodgeData, NotSelfDual
from critperiods.hodge import (DescentDatum, GLnWeight, HodgeData, hodge_from_weight,
                               restrict_scalars_degrees, tate_twist)
from critperiods.sampling import random_gln_weight, random_hodge

Q = TotallyRealField("Q", ("s",))


def test_rank_two_from_weight():
    M = hodge_from_weight(GLnWeight(Q, {"s": (1, -1)}))
    assert M.weight == 1
    # p_i = a_i + n - i
    assert M.column("s", "1") == (2, -1)


def test_rank_one_from_weight():
    M = hodge_from_weight(GLnWeight(Q, {"s": (0,)}))
    assert (M.rank, M.weight, M.column("s", "1")) == (1, 0, (0,))


def test_rank_three_from_weight():
    M = hodge_from_weight(GLnWeight(Q, {"s": (2, 0, -2)}))
    col = M.column("s", "1")
    assert col == (4, 1, -2)
    assert col[0] + col[2] == M.weight == 2


def test_not_self_dual():
    with pytest.raises(NotSelfDual, match="a_1"):
        hodge_from_weight(GLnWeight(Q, {"s": (3, -1)}))


def test_weight_round_trip():
    rng = random.Random(7)
    for _ in range(200):
        n, d = rng.randint(1, 8), rng.randint(1, 3)
        wt = random_gln_weight(rng, n, d)
        M = hodge_from_weight(wt)
        assert M.gln_weight() == wt
        for s in M.K.embeddings:
            col = M.column(s, "1")
            assert all(col[i] + col[n - 1 - i] == n - 1 for i in range(n))


def test_phi_permutation_copies_columns():
    K = TotallyRealField("K", ("s1", "s2"))
    E = CoefficientField("E", ("1", "2"), "1")
    wt = GLnWeight(K, {"s1": (1, -1), "s2": (3, -3)})
    M = hodge_from_weight(wt, E=E, phi_permutation={("2", "s1"): "s2", ("2", "s2"): "s1"})
    assert M.column("s1", "2") == M.column("s2", "1")


@pytest.mark.parametrize("bad, msg", [
    ({("s", "1"): (0, 2)}, "decreasing"),
    ({("s", "1"): (2, 0)}, "p_i"),
    ({("s", "1"): (2, 1, 0)}, "expected 2"),
])
def test_invalid_columns(bad, msg):
    with pytest.raises(InvalidHodgeData, match=msg):
        HodgeData(Q, CoefficientField(), 2, 1, bad)


def test_odd_rank_needs_even_weight():
    with pytest.raises(InvalidHodgeData, match="odd rank"):
        HodgeData(Q, CoefficientField(), 1, 1, {("s", "1"): (1,)})


def test_missing_key():
    K = TotallyRealField("K", ("s1", "s2"))
    with pytest.raises(InvalidHodgeData, match="s2"):
        HodgeData(K, CoefficientField(), 1, 0, {("s1", "1"): (0,)})


def test_value_sets_must_agree_across_phi():
    E = CoefficientField("E", ("1", "2"), "1")
    with pytest.raises(InvalidHodgeData, match="differ"):
        HodgeData(Q, E, 2, 2, {("s", "1"): (2, 0), ("s", "2"): (3, -1)})


def test_polarization_follows_weight():
    M = HodgeData(Q, CoefficientField(), 2, 2, {("s", "1"): (2, 0)})
    assert M.polarization == "symmetric"
    with pytest.raises(InvalidHodgeData):
        HodgeData(Q, CoefficientField(), 2, 2, {("s", "1"): (2, 0)}, polarization="alternating")


def test_sentinels():
    M = HodgeData(Q, CoefficientField(), 2, 2, {("s", "1"): (2, 0)})
    assert M.p(0, "s", "1") == float("inf")
    assert M.p(3, "s", "1") == float("-inf")


def test_tate_twist_example():
    M = HodgeData(Q, CoefficientField(), 2, 1, {("s", "1"): (2, -1)}, n_plus=1)
    N = tate_twist(M, 1)
    assert N.column("s", "1") == (1, -2)
    assert N.weight == -1
    assert tate_twist(M, 0) is M


def test_tate_twist_round_trip_and_invariants():
    rng = random.Random(3)
    for _ in range(100):
        M = random_hodge(rng, rng.randint(1, 8), rng.randint(1, 3), rng.randint(1, 2))
        k = rng.randint(-5, 5)
        N = tate_twist(M, k)
        assert N.weight == M.weight - 2 * k
        assert tate_twist(N, -k) == M
        assert N.n_plus == (M.n_minus if k % 2 else M.n_plus)


def test_degree_identities():
    assert restrict_scalars_degrees(Q, [DescentDatum("Q", 1, 1, 1)]).passed
    two = [DescentDatum("K1", 2, 2, 1), DescentDatum("K2", 1, 1, -1)]
    assert restrict_scalars_degrees(Q, two).passed
    rep = restrict_scalars_degrees(Q, [DescentDatum("K1", 3, 3, 1)])
    assert not rep.over_Q and not rep.passed


def test_descent_degrees_positive():
    with pytest.raises(InvalidHodgeData):
        DescentDatum("K1", 0, 1, 1)
