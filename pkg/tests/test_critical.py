import random

import pytest

from critperiods.arithmetic import (CMExtension, CoefficientField, TotallyRealField,
                                    all_cm_types, validate_cm_type)
from critperiods.characters import HeckeCharacter, dual_conjugate
from critperiods.critical import (TwistData, build_interval_twist, build_section5_character,
                                  character_critical_integers, critical_integers,
                                  critical_integers_oracle, has_critical_values,
                                  interval_differences, r_from_column, r_index, r_index_oracle,
                                  r_scan, section5_twist, section5_weight, t_invariant,
                                  verify_interval_lemma)
from critperiods.errors import (MidpointDegenerate, NoCriticalValues, NotCritical,
                                NotInTopInterval, ParityHypothesisFailed, PreconditionError)
from critperiods.hodge import GLnWeight, HodgeData, hodge_from_weight
from critperiods.sampling import random_hodge, random_top_twist

from oracles import critical_by_scan, r_by_count

Q = TotallyRealField("Q", ("s",))
L = CMExtension.standard(Q)
PHI = validate_cm_type(L, ["t_s"])
# rank 2, weight 2: w - 2p = (-2, 2)
M2 = HodgeData(Q, CoefficientField(), 2, 2, {("s", "1"): (2, 0)})


def char(a, b, label="chi"):
    return HeckeCharacter.primitive(L, {"t_s": a, "tbar_s": b}, label)


def test_t_invariant():
    assert t_invariant(char(4, -2), "s") == 6
    assert t_invariant(char(0, 2), "s") == 2
    chi = char(5, -2)
    assert t_invariant(dual_conjugate(chi), "s") == t_invariant(chi, "s")
    with pytest.raises(NotCritical):
        t_invariant(char(1, 1), "s")


def test_has_critical_values():
    assert has_critical_values(TwistData(M2, char(4, -2), PHI))
    assert not has_critical_values(TwistData(M2, char(2, 0), PHI))


def test_odd_t_against_even_weight_always_clear():
    rng = random.Random(1)
    for _ in range(200):
        M = random_hodge(rng, rng.choice([2, 4, 6]), 1, 1, weight=2 * rng.randint(-2, 2))
        ext = CMExtension.standard(M.K)
        Phi = validate_cm_type(ext, ["t_s1"])
        a = 2 * rng.randint(0, 6) + 1
        chi = HeckeCharacter.primitive(ext, {"t_s1": (a + 1) // 2, "tbar_s1": (1 - a) // 2})
        assert has_critical_values(TwistData(M, chi, Phi))


def test_r_index_example():
    T = TwistData(M2, char(4, -2), PHI)
    assert r_index(T, "s", "1") == 2
    assert r_index_oracle(T, "s", "1") == 2


def test_r_index_without_critical_values():
    with pytest.raises(NoCriticalValues):
        r_index(TwistData(M2, char(2, 0), PHI), "s", "1")
    with pytest.raises(NoCriticalValues):
        r_from_column(2, (2, 0), 2)


def test_r_index_monotone_and_unique():
    rng = random.Random(2)
    for _ in range(200):
        M = random_hodge(rng, rng.randint(1, 8), 1)
        col = M.column("s1", "1")
        prev = -1
        for t in range(1, 30):
            found = r_scan(M.weight, col, t)
            if t in [M.weight - 2 * p for p in col]:
                assert found == []
                continue
            assert len(found) == 1
            assert found[0] >= prev
            assert found[0] == r_by_count(M.weight, col, t)
            prev = found[0]


def test_interval_differences_examples():
    assert interval_differences(M2, 2, "1") == {"s": 3}
    assert interval_differences(M2, 1, "1") == {"s": -1}
    # largest integer below min(w - 2p_1) = -2 with parity w + 1
    assert interval_differences(M2, 0, "1") == {"s": -3}
    with pytest.raises(PreconditionError):
        interval_differences(M2, 3, "1")


def test_midpoint_degenerate():
    M = HodgeData(Q, CoefficientField(), 2, 1, {("s", "1"): (1, 0)})
    with pytest.raises(MidpointDegenerate):
        build_interval_twist(M, PHI, 1, "1")


@pytest.mark.parametrize("r, want", [(2, 2), (1, 1), (0, 2)])
def test_interval_lemma_rank_two(r, want):
    assert verify_interval_lemma(M2, PHI, r, "1")
    T = TwistData(M2, build_interval_twist(M2, PHI, r, "1"), PHI)
    assert r_index(T, "s", "1") == want


def test_lemma_sign_pattern_and_parity():
    rng = random.Random(3)
    for _ in range(150):
        n, d = rng.randint(1, 8), rng.randint(1, 3)
        M = random_hodge(rng, n, d)
        Phi = rng.choice(all_cm_types(CMExtension.standard(M.K)))
        for r in range(n + 1):
            try:
                chi = build_interval_twist(M, Phi, r, "1")
            except MidpointDegenerate:
                continue
            positive = all(chi.difference(t) > 0 for t in Phi.members)
            assert positive == (r >= n // 2 + 1)
            if r >= 1:
                for s in M.K.embeddings:
                    assert (t_invariant(chi, s) - M.weight) % 2 == 1


def test_critical_integers_example():
    T = TwistData(M2, char(4, -1), PHI)
    assert list(critical_integers(T)) == [2, 3, 4]
    assert list(critical_integers_oracle(T)) == [2, 3, 4]
    assert critical_by_scan(T) == [2, 3, 4]


def test_critical_integers_needs_top_interval():
    T = TwistData(M2, build_interval_twist(M2, PHI, 1, "1", w0=1), PHI)
    with pytest.raises((NotInTopInterval, PreconditionError)):
        critical_integers(T)


def test_rank_one_strip():
    # [chi] with n_t = a > n_tbar = b has critical integers b < k <= a
    for a, b in [(3, 0), (5, -2), (1, -4)]:
        assert list(character_critical_integers(char(a, b))) == list(range(b + 1, a + 1))


def test_automorphic_bounds():
    wt = GLnWeight(Q, {"s": (2, -2)})
    M = hodge_from_weight(wt)
    m = (3, -2)
    chi = char(2 * m[0], 2 * m[1])
    T = TwistData(M, chi, PHI)
    lo = wt["s"][0] + 2 - 1 + 2 * m[1]
    hi = wt["s"][1] + 2 * m[0]
    assert list(critical_integers(T)) == list(range(lo + 1, hi + 1))


def test_oracle_matches_gamma_scan():
    rng = random.Random(4)
    checked = 0
    for _ in range(300):
        T = random_top_twist(rng, rng.randint(1, 6), rng.randint(1, 3), rng.randint(1, 2))
        assert list(critical_integers_oracle(T)) == critical_by_scan(T)
        assert list(critical_integers(T)) == critical_by_scan(T)
        checked += 1
    assert checked == 300


def test_section5_weights():
    assert section5_weight(4) == 4
    assert section5_weight(8) == 12
    with pytest.raises(ParityHypothesisFailed):
        section5_weight(6)
    with pytest.raises(PreconditionError):
        section5_weight(5)


def test_section5_singleton():
    K = TotallyRealField("K", ("s1", "s2"))
    M = hodge_from_weight(GLnWeight(K, {"s1": (2, 1, -1, -2), "s2": (4, 3, -3, -4)}))
    Phi = validate_cm_type(CMExtension.standard(K), ["t_s1", "t_s2"])
    T = section5_twist(M, Phi, 3)
    assert list(critical_integers_oracle(T)) == [(4 + 4) // 2]
    assert critical_by_scan(T) == [4]


def test_section5_parity_failure():
    M = hodge_from_weight(GLnWeight(Q, {"s": (1, 1, -1, -1)}))
    with pytest.raises(ParityHypothesisFailed):
        build_section5_character(M, PHI, 3)
    with pytest.raises(PreconditionError):
        build_section5_character(M, PHI, 2)


def test_twist_data_checks_fields():
    K = TotallyRealField("K", ("s1", "s2"))
    other = CMExtension.standard(K)
    chi = HeckeCharacter.primitive(other, {t: (1 if t.startswith("t_") else 0)
                                           for t in other.embeddings})
    with pytest.raises(PreconditionError):
        TwistData(M2, chi, PHI)
