import random

import pytest

from critperiods.groups.brauer import brauer_decompose, descent_data_from_decomposition
from critperiods.groups.finite import fixture
from critperiods.hodge import DescentDatum
from critperiods.periods.potential import (base_change_all, synthetic_descent,
                                           synthetic_extension,
                                           verify_potentially_automorphic)
from critperiods.sampling import random_main_instance


@pytest.fixture(scope="module")
def inst():
    return random_main_instance(random.Random(3), 2, 1)


def test_synthetic_extension_shape(inst):
    ext = inst.psi.extension
    st = synthetic_extension(ext, DescentDatum("K3", 3, 3, 1))
    assert len(st.ext.embeddings) == 3 * len(ext.embeddings)
    lift = st.lift_map
    for t in st.ext.embeddings:
        assert lift[st.ext.conj(t)] == ext.conj(lift[t])


def test_trivial_descent_is_identity(inst):
    ext = inst.psi.extension
    st = synthetic_extension(ext, DescentDatum("K", 1, 1, 1))
    assert st.ext is ext
    ctx = base_change_all(inst.M, inst.psi, inst.ks[0], [st])
    assert ctx.motives[0] is inst.M


@pytest.mark.parametrize("data", [
    [DescentDatum("K", 1, 1, 1)],
    [DescentDatum("K2", 2, 2, 1), DescentDatum("K", 1, 1, -1)],
    [DescentDatum("K2", 2, 2, 2), DescentDatum("K3", 3, 3, -1), DescentDatum("K", 1, 1, 0)],
])
def test_descents_pass(inst, data):
    rep = verify_potentially_automorphic(inst.M, inst.psi, inst.ks[0], data)
    assert rep.passed, rep.notes


def test_wrong_multiplicity_fails(inst):
    data = [DescentDatum("K2", 2, 2, 1), DescentDatum("K", 1, 1, -2)]
    rep = verify_potentially_automorphic(inst.M, inst.psi, inst.ks[0], data)
    assert not rep.passed


def test_a5_descent():
    rng = random.Random(5)
    dec = brauer_decompose(fixture("A5"))
    for d in (1, 2):
        m = random_main_instance(rng, 3, d, delta=True)
        data = descent_data_from_decomposition(dec, d)
        assert sum(x.multiplicity * x.degree_over_Q for x in data) == d
        rep = verify_potentially_automorphic(m.M, m.psi, m.ks[0], data)
        assert rep.passed, rep.notes


def test_descent_list(inst):
    ext = inst.psi.extension
    steps = synthetic_descent(ext, [DescentDatum("K", 1, 1, 1), DescentDatum("K2", 2, 2, 1)])
    assert [s.multiplicity for s in steps] == [1, 1]
