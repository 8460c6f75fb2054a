import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from minsing.discriminant import discriminant, emit_representative
from minsing.errors import BadParameters, UnsupportedFamily
from minsing.families import (
    FamilySpec,
    an_chain,
    cone,
    cyclic,
    expected_discriminant,
    generate,
    hj_expand,
    hj_value,
    random_minimal_graph,
    star,
)
from minsing.graph import validate_graph
from minsing.oracle import classify


def test_hj_examples():
    assert hj_expand(5, 2) == [3, 2]
    assert hj_expand(7, 3) == [3, 2, 2]
    assert hj_expand(9, 1) == [9]
    with pytest.raises(BadParameters):
        hj_expand(6, 4)
    with pytest.raises(BadParameters):
        hj_expand(3, 3)


def test_hj_roundtrip_exhaustive_small():
    for n in range(2, 400):
        for q in range(1, n):
            if gcd(n, q) == 1:
                w = hj_expand(n, q)
                assert min(w) >= 2 and hj_value(w) * q == n


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 10**4).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))))
def test_hj_roundtrip(nq):
    n, q = nq
    if gcd(n, q) == 1:
        assert hj_value(hj_expand(n, q)) == Fraction(n, q)


def test_generate_examples():
    assert generate(an_chain(3)) == validate_graph(
        "v1 2\nv2 2\nv3 2\nedge v1 v2\nedge v2 v3\n")
    g = generate(cone(4))
    assert g.vertices == ("v1",) and g.weight("v1") == 4
    assert [generate(cyclic(7, 3)).weight(v) for v in ("v1", "v2", "v3")] == [3, 2, 2]


def test_bad_specs():
    for bad in [("an", (0,)), ("cone", (1,)), ("cyclic", (6, 4)), ("star", ()), ("x", (1,)),
                ("an", (True,))]:
        with pytest.raises(BadParameters):
            FamilySpec(*bad)


def test_expected_examples():
    e = expected_discriminant(cyclic(7, 3))
    assert sorted(b.char_exponents for b in e.branches) == [(1,)] * 4
    pair = [b.id for b in e.branches if b.support == ("v2",)]
    assert len(pair) == 2 and e.contact(*pair) == 2
    assert [b.char_exponents for b in expected_discriminant(an_chain(4)).branches] == [(2, 5)]
    assert len(expected_discriminant(cone(3)).branches) == 4
    with pytest.raises(UnsupportedFamily):
        expected_discriminant(star(1, 2))


@pytest.mark.parametrize("spec", [cyclic(7, 3), cyclic(11, 4), an_chain(5), an_chain(6), cone(5)])
def test_pipeline_matches_expected(spec):
    assert discriminant(generate(spec)).signature() == expected_discriminant(spec).signature()


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 500).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))))
def test_cyclic_up_to_500(nq):
    n, q = nq
    if gcd(n, q) == 1:
        spec = cyclic(n, q)
        assert discriminant(generate(spec)).signature() == expected_discriminant(spec).signature()


def test_an_representatives_are_x2_plus_y():
    for n in range(1, 9):
        cls = discriminant(generate(an_chain(n)))
        rep = emit_representative(cls)
        assert classify(rep.branches).signature() == cls.signature()


@pytest.mark.parametrize("arms", [(1,), (1, 1, 1), (2, 3, 4), (1, 1, 1, 1, 1), (5, 5)])
def test_star_invariants(arms):
    cls = discriminant(generate(star(*arms)))
    inv = cls.invariants
    assert inv.e_delta == sum(b.multiplicity for b in cls.branches)
    assert inv.n_b == inv.e_delta - inv.n_bs


def test_random_graphs_are_minimal():
    rng = random.Random(3)
    for _ in range(100):
        g = random_minimal_graph(rng)
        assert 1 <= len(g) <= 40
        assert all(g.weight(v) >= max(2, g.valence(v)) for v in g.vertices)
