import pytest

from kernelforge.generators import generate_instance
from kernelforge.modulator import verify_modulator


def test_apex_pendants():
    inst = generate_instance("apex-pendants", {"k": 1, "copies": 10, "d": 1})
    g = inst.graph
    assert g.n == 11 and g.m == 10 and inst.modulator == (0,)
    assert g.degree(0) == 10


def test_subdivided_grid():
    inst = generate_instance("subdivided-grid", {"rows": 5, "cols": 5, "subdiv": 3})
    g = inst.graph
    assert g.n == 25 + 40 * 3 and g.m == 40 * 4
    assert verify_modulator(g, inst.modulator, inst.d)


def test_random_modulated_reproducible():
    a = generate_instance("random-modulated", {"n": 12, "k": 2, "d": 2}, seed=7)
    b = generate_instance("random-modulated", {"n": 12, "k": 2, "d": 2}, seed=7)
    c = generate_instance("random-modulated", {"n": 12, "k": 2, "d": 2}, seed=8)
    assert a.graph == b.graph and a.graph != c.graph
    assert verify_modulator(a.graph, a.modulator, 2)


def test_many_seeds_verify():
    for seed in range(100):
        for d in (1, 2, 3):
            inst = generate_instance("random-modulated", {"n": 14, "k": 3, "d": d}, seed)
            assert verify_modulator(inst.graph, inst.modulator, d)


def test_invalid_params():
    with pytest.raises(ValueError):
        generate_instance("hypercube", {})
    with pytest.raises(ValueError):
        generate_instance("apex-pendants", {"d": 0})
    with pytest.raises(ValueError):
        generate_instance("random-modulated", {"n": 3, "k": 5})
