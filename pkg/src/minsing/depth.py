"""Desingularization depths, Tyurina decomposition and polar branch counts."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .errors import NegativeBranchCount
from .graph import Cycle, ResolutionGraph, canonical_cycle, pair_with_component


@dataclass(frozen=True)
class Census:
    n_minus: int
    n_zero: int
    n_plus: int


@dataclass(frozen=True, eq=False)
class DepthProfile:
    graph: ResolutionGraph
    s: Mapping[str, int]
    non_tyurina: frozenset[str]
    tyurina_components: tuple[frozenset[str], ...]
    central_vertices: frozenset[str]
    central_arcs: frozenset[tuple[str, str]]
    census: Mapping[str, Census]

    @property
    def max_depth(self) -> int:
        return max(self.s.values())

    def klass(self, x: str) -> str:
        if x in self.non_tyurina:
            return "NT"
        if x in self.central_vertices:
            return "central"
        return "Tyurina"

    def arcs_at(self, x: str) -> int:
        return sum(1 for a in self.central_arcs if x in a)


@dataclass(frozen=True, eq=False)
class BranchCounts:
    m: Mapping[str, int]
    omega: Cycle


def depth_map(g: ResolutionGraph) -> DepthProfile:
    nt = frozenset(v for v in g.vertices if g.weight(v) > g.valence(v))
    # multi-source BFS from the non-Tyurina vertices
    s = {v: 1 for v in nt}
    q = deque(sorted(nt))
    while q:
        v = q.popleft()
        for u in g.neighbors(v):
            if u not in s:
                s[u] = s[v] + 1
                q.append(u)

    census = {}
    for x in g.vertices:
        d = [s[y] - s[x] for y in g.neighbors(x)]
        census[x] = Census(d.count(-1), d.count(0), d.count(1))

    deep = {v for v in g.vertices if s[v] >= 2}
    comps = []
    seen = set()
    for v in g.vertices:
        if v in deep and v not in seen:
            comp = _component_within(g, v, deep)
            seen |= comp
            comps.append(frozenset(comp))

    return DepthProfile(
        graph=g,
        s=s,
        non_tyurina=nt,
        tyurina_components=tuple(comps),
        central_vertices=frozenset(x for x in g.vertices if census[x].n_minus >= 2),
        central_arcs=frozenset(e for e in g.edges if s[e[0]] == s[e[1]]),
        census=census,
    )


def _component_within(g, start, allowed) -> set:
    comp = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for u in g.neighbors(v):
            if u in allowed and u not in comp:
                comp.add(u)
                todo.append(u)
    return comp


def omega_cycle(g: ResolutionGraph, depths: DepthProfile, zk: Cycle | None = None) -> Cycle:
    if zk is None:
        zk = canonical_cycle(g)
    return Cycle(g, {v: depths.s[v] - zk[v] for v in g.vertices})


def closed_form_count(g: ResolutionGraph, depths: DepthProfile, x: str) -> int:
    """Branch count on ``L_x`` from the neighbour census alone."""
    c = depths.census[x]
    w = g.weight(x)
    if x in depths.non_tyurina:
        return 2 * w - g.valence(x) - c.n_plus - 2
    return w + c.n_minus - c.n_plus - 2


def branch_counts(g: ResolutionGraph, depths: DepthProfile, omega: Cycle) -> BranchCounts:
    m = {}
    for x in g.vertices:
        value = -pair_with_component(omega, x)
        if value.denominator != 1 or value < 0:
            raise NegativeBranchCount(f"-Z_Omega.L_{x} = {value} is not a nonnegative integer")
        m[x] = int(value)
        if m[x] != closed_form_count(g, depths, x):
            raise NegativeBranchCount(f"census formula disagrees at {x}")
        if m[x] < depths.arcs_at(x):
            raise NegativeBranchCount(f"fewer branches than central arcs at {x}")
    return BranchCounts(m=m, omega=omega)
