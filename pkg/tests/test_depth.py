import random
from fractions import Fraction

from conftest import chain
from minsing.depth import branch_counts, closed_form_count, depth_map, omega_cycle
from minsing.families import random_minimal_graph
from minsing.graph import canonical_cycle, fundamental_cycle, pair, pair_with_component, validate_graph


def counts(g):
    d = depth_map(g)
    return d, branch_counts(g, d, omega_cycle(g, d))


def test_fig1_depths(fig1):
    d = depth_map(fig1)
    assert d.s == {"x1": 1, "a": 2, "b": 2, "x2": 1, "c": 2, "x3": 1, "d": 3, "e": 2, "x4": 1}
    assert sorted(map(sorted, d.tyurina_components)) == [["a", "b", "d", "e"], ["c"]]
    assert d.central_vertices == {"c", "d"}
    assert d.central_arcs == {("a", "b")}
    assert d.klass("x1") == "NT" and d.klass("d") == "central" and d.klass("e") == "Tyurina"


def test_a3_depths():
    d = depth_map(chain(2, 2, 2))
    assert [d.s[v] for v in ("v1", "v2", "v3")] == [1, 2, 1]
    assert d.central_vertices == {"v2"} and not d.central_arcs


def test_a2_arc_at_depth_one():
    d = depth_map(chain(2, 2))
    assert d.s == {"v1": 1, "v2": 1}
    assert d.central_arcs == {("v1", "v2")}


def test_omega_examples(fig1):
    d = depth_map(chain(2, 2, 2))
    om = omega_cycle(chain(2, 2, 2), d)
    assert [om[v] for v in ("v1", "v2", "v3")] == [1, 2, 1]
    for n in range(2, 8):
        g = validate_graph({"vertices": [{"id": "v", "weight": n}], "edges": []})
        assert omega_cycle(g, depth_map(g))["v"] == Fraction(2 * n - 2, n)
    assert pair_with_component(omega_cycle(fig1, depth_map(fig1)), "x1") == -4


def test_fig1_counts(fig1):
    _, c = counts(fig1)
    assert c.m == {"x1": 4, "a": 1, "b": 1, "x2": 0, "c": 2, "x3": 0, "d": 2, "e": 0, "x4": 0}


def test_small_counts():
    for n in range(2, 10):
        g = validate_graph({"vertices": [{"id": "v", "weight": n}], "edges": []})
        assert counts(g)[1].m == {"v": 2 * n - 2}
    assert counts(chain(2, 2, 2))[1].m == {"v1": 0, "v2": 2, "v3": 0}


def test_properties_on_random_trees():
    rng = random.Random(7)
    for _ in range(200):
        g = random_minimal_graph(rng, 30)
        d, c = counts(g)
        for x in g.vertices:
            assert (d.s[x] == 1) == (g.weight(x) > g.valence(x))
            for y in g.neighbors(x):
                assert abs(d.s[x] - d.s[y]) <= 1
            cen = d.census[x]
            if x not in d.non_tyurina:
                assert cen.n_minus >= 1
                assert c.m[x] - d.arcs_at(x) == 2 * (cen.n_minus - 1)
            else:
                assert c.m[x] - d.arcs_at(x) == 2 * (g.weight(x) - g.valence(x)) - 2
            assert c.m[x] == closed_form_count(g, d, x)
        for x in d.central_vertices:
            assert d.s[x] >= 2
        for a, b in d.central_arcs:
            assert d.s[a] == d.s[b]
        assert sum(c.m.values()) == -pair(fundamental_cycle(g), c.omega)
        assert c.omega == omega_cycle(g, d, canonical_cycle(g))
