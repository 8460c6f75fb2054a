"""Weighted dual graphs of minimal resolutions and their intersection form.

A graph is a tree whose vertices carry weights ``w(x) = -L_x^2``.  All the
linear algebra here is exact (``fractions.Fraction``) and exploits the tree
shape: eliminating leaves first produces no fill-in, so both the
definiteness certificate and the canonical-cycle solve run in linear time.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .errors import (
    DefinitenessFailure,
    DegenerateGraph,
    GraphMismatch,
    MalformedInput,
    NotATree,
    NotMinimal,
    NotMinimalResolution,
    SingularSystem,
)


@dataclass(frozen=True, eq=False)
class ResolutionGraph:
    vertices: tuple[str, ...]
    weights: Mapping[str, int]
    edges: tuple[tuple[str, str], ...]
    adjacency: Mapping[str, tuple[str, ...]] = field(repr=False)

    def weight(self, x: str) -> int:
        return self.weights[x]

    def valence(self, x: str) -> int:
        return len(self.adjacency[x])

    def neighbors(self, x: str) -> tuple[str, ...]:
        return self.adjacency[x]

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, ResolutionGraph):
            return NotImplemented
        return (self.vertices == other.vertices and dict(self.weights) == dict(other.weights)
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges, tuple(self.weights[v] for v in self.vertices)))

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v, "weight": self.weights[v]} for v in self.vertices],
            "edges": [list(e) for e in self.edges],
        }

    def to_text(self) -> str:
        lines = [f"{v} {self.weights[v]}" for v in self.vertices]
        lines += [f"edge {a} {b}" for a, b in self.edges]
        return "\n".join(lines) + "\n"


def _check_id(v) -> str:
    if not isinstance(v, str) or not v or any(c.isspace() for c in v):
        raise MalformedInput(f"vertex id must be a non-empty string without whitespace: {v!r}")
    return v


def validate_graph(raw) -> ResolutionGraph:
    """Build a :class:`ResolutionGraph` from a raw description and check it.

    ``raw`` is either a mapping shaped like the JSON input
    (``{"vertices": [{"id", "weight"}], "edges": [[a, b]]}``) or a string in
    the JSON or line-oriented text format.  Failures raise a subclass of
    :class:`~minsing.errors.ValidationError`, checked in the order
    malformed input, tree shape, weight >= 2, weight >= valence,
    non-degeneracy.
    """
    if isinstance(raw, str):
        raw = parse_graph_text(raw)
    if not isinstance(raw, Mapping):
        raise MalformedInput("graph description must be a mapping")
    vraw = raw.get("vertices")
    eraw = raw.get("edges", [])
    if not isinstance(vraw, list) or not vraw:
        raise MalformedInput("at least one vertex is required")
    if not isinstance(eraw, list):
        raise MalformedInput("edges must be a list")

    weights: dict[str, int] = {}
    for item in vraw:
        if not isinstance(item, Mapping) or "id" not in item or "weight" not in item:
            raise MalformedInput(f"bad vertex entry: {item!r}")
        v = _check_id(item["id"])
        w = item["weight"]
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            raise MalformedInput(f"weight of {v} must be a positive integer, got {w!r}", [v])
        if v in weights:
            raise MalformedInput(f"duplicate vertex id {v}", [v])
        weights[v] = w

    adj: dict[str, set[str]] = {v: set() for v in weights}
    edges = set()
    for e in eraw:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise MalformedInput(f"bad edge entry: {e!r}")
        a, b = (_check_id(u) for u in e)
        for u in (a, b):
            if u not in weights:
                raise MalformedInput(f"edge refers to unknown vertex {u}", [u])
        if a == b:
            raise MalformedInput(f"self-loop at {a}", [a])
        key = (min(a, b), max(a, b))
        if key in edges:
            raise MalformedInput(f"repeated edge {a}-{b}", key)
        edges.add(key)
        adj[a].add(b)
        adj[b].add(a)

    vertices = tuple(sorted(weights))
    if len(edges) != len(vertices) - 1 or len(_component(vertices[0], adj)) != len(vertices):
        raise NotATree(f"graph with {len(vertices)} vertices and {len(edges)} edges is not a tree")

    low = [v for v in vertices if weights[v] < 2]
    if low:
        raise NotMinimalResolution("weights below 2 (the resolution is not minimal)", low)
    bad = [v for v in vertices if weights[v] < len(adj[v])]
    if bad:
        raise NotMinimal("weight smaller than valence", bad)
    if all(weights[v] == len(adj[v]) for v in vertices):
        raise DegenerateGraph("every vertex has weight equal to its valence")

    return ResolutionGraph(
        vertices=vertices,
        weights=dict(weights),
        edges=tuple(sorted(edges)),
        adjacency={v: tuple(sorted(adj[v])) for v in vertices},
    )


def _component(start, adj) -> set:
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


def parse_graph_text(text: str) -> dict:
    """Parse JSON or the line format (``id weight`` / ``edge a b``).

    Blank lines and ``#`` comments are ignored in the line format.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from None
    vertices, edges = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "edge":
            if len(parts) != 3:
                raise MalformedInput(f"line {lineno}: expected 'edge id1 id2'")
            edges.append(parts[1:])
        elif len(parts) == 2:
            try:
                w = int(parts[1])
            except ValueError:
                raise MalformedInput(f"line {lineno}: weight is not an integer") from None
            vertices.append({"id": parts[0], "weight": w})
        else:
            raise MalformedInput(f"line {lineno}: cannot parse {line!r}")
    return {"vertices": vertices, "edges": edges}


# --- intersection form -----------------------------------------------------

@dataclass(frozen=True)
class IntersectionForm:
    """Matrix ``M`` in lexicographic vertex order, plus LDL^T pivots.

    ``pivots[i]`` belongs to ``elimination_order[i]``; a tree is eliminated
    leaves first, so ``L`` has the sparsity pattern of the tree.
    """

    order: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]
    elimination_order: tuple[str, ...]
    pivots: tuple[Fraction, ...]

    @property
    def negative_definite(self) -> bool:
        return all(p < 0 for p in self.pivots)


def _rooted(g: ResolutionGraph):
    """BFS order from the smallest id, with parent pointers."""
    root = g.vertices[0]
    parent = {root: None}
    order = [root]
    q = deque([root])
    while q:
        v = q.popleft()
        for u in g.neighbors(v):
            if u not in parent:
                parent[u] = v
                order.append(u)
                q.append(u)
    return order, parent


def _eliminate(g: ResolutionGraph, rhs: Mapping[str, Fraction] | None = None):
    order, parent = _rooted(g)
    piv: dict[str, Fraction] = {v: Fraction(-g.weight(v)) for v in g.vertices}
    b = {v: Fraction(rhs[v]) for v in g.vertices} if rhs is not None else None
    for v in reversed(order):
        if piv[v] == 0:
            raise SingularSystem(f"zero pivot at {v}")
        p = parent[v]
        if p is not None:
            piv[p] -= 1 / piv[v]
            if b is not None:
                b[p] -= b[v] / piv[v]
    return order, parent, piv, b


def intersection_form(g: ResolutionGraph) -> IntersectionForm:
    idx = {v: i for i, v in enumerate(g.vertices)}
    n = len(g.vertices)
    rows = [[0] * n for _ in range(n)]
    for v in g.vertices:
        rows[idx[v]][idx[v]] = -g.weight(v)
    for a, b in g.edges:
        rows[idx[a]][idx[b]] = rows[idx[b]][idx[a]] = 1
    order, _, piv, _ = _eliminate(g)
    elim = tuple(reversed(order))
    form = IntersectionForm(
        order=g.vertices,
        matrix=tuple(tuple(r) for r in rows),
        elimination_order=elim,
        pivots=tuple(piv[v] for v in elim),
    )
    if not form.negative_definite:
        raise DefinitenessFailure("intersection form is not negative definite")
    return form


# --- cycles ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Cycle:
    graph: ResolutionGraph
    coefficients: Mapping[str, Fraction]

    def __getitem__(self, x):
        return self.coefficients[x]

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.graph == other.graph and dict(self.coefficients) == dict(other.coefficients)

    def __add__(self, other):
        _same_graph(self, other)
        return Cycle(self.graph, {v: self[v] + other[v] for v in self.graph.vertices})

    def __sub__(self, other):
        _same_graph(self, other)
        return Cycle(self.graph, {v: self[v] - other[v] for v in self.graph.vertices})

    def scale(self, k) -> "Cycle":
        return Cycle(self.graph, {v: k * c for v, c in self.coefficients.items()})

    @cached_property
    def scaled(self) -> tuple[int, dict[str, int]]:
        """``(d, n)`` with integer ``n[v] = d * self[v]``; pairings then run on ints."""
        d = 1
        for c in self.coefficients.values():
            den = Fraction(c).denominator
            d = d * den // gcd(d, den)
        return d, {v: int(Fraction(c) * d) for v, c in self.coefficients.items()}


def make_cycle(g: ResolutionGraph, coefficients: Mapping[str, object]) -> Cycle:
    if set(coefficients) != set(g.vertices):
        raise GraphMismatch("cycle keys differ from the vertex set")
    return Cycle(g, {v: Fraction(coefficients[v]) for v in g.vertices})


def zero_cycle(g: ResolutionGraph) -> Cycle:
    return Cycle(g, {v: Fraction(0) for v in g.vertices})


def component(g: ResolutionGraph, x: str) -> Cycle:
    """The cycle ``L_x``."""
    return Cycle(g, {v: Fraction(int(v == x)) for v in g.vertices})


def _same_graph(c1: Cycle, c2: Cycle):
    if c1.graph is not c2.graph and c1.graph != c2.graph:
        raise GraphMismatch("cycles live on different graphs")


def pair(c1: Cycle, c2: Cycle) -> Fraction:
    """Intersection number ``c1 . c2``."""
    _same_graph(c1, c2)
    g = c1.graph
    (d1, n1), (d2, n2) = c1.scaled, c2.scaled
    total = 0
    for v in g.vertices:
        total -= g.weight(v) * n1[v] * n2[v]
    for a, b in g.edges:
        total += n1[a] * n2[b] + n1[b] * n2[a]
    return Fraction(total, d1 * d2)


def pair_with_component(c: Cycle, x: str) -> Fraction:
    g = c.graph
    d, n = c.scaled
    return Fraction(-g.weight(x) * n[x] + sum(n[y] for y in g.neighbors(x)), d)


def fundamental_cycle(g: ResolutionGraph) -> Cycle:
    z = Cycle(g, {v: Fraction(1) for v in g.vertices})
    for x in g.vertices:
        zx = pair_with_component(z, x)
        assert zx == g.valence(x) - g.weight(x) <= 0
    return z


def solve(g: ResolutionGraph, rhs: Mapping[str, object]) -> Cycle:
    """Exact solution ``z`` of ``M z = rhs`` by leaf-first elimination."""
    order, parent, piv, b = _eliminate(g, {v: Fraction(rhs[v]) for v in g.vertices})
    z: dict[str, Fraction] = {}
    for v in order:
        p = parent[v]
        z[v] = (b[v] - (z[p] if p is not None else 0)) / piv[v]
    return Cycle(g, {v: z[v] for v in g.vertices})


def canonical_cycle(g: ResolutionGraph) -> Cycle:
    """The rational cycle ``Z_K`` with ``Z_K . L_x = w(x) - 2`` for all x."""
    rhs = {v: g.weight(v) - 2 for v in g.vertices}
    zk = solve(g, rhs)
    for x in g.vertices:
        if pair_with_component(zk, x) != rhs[x]:
            raise SingularSystem(f"nonzero residual at {x}")
    return zk


def from_edges(weights: Mapping[str, int], edges: Iterable[tuple[str, str]]) -> ResolutionGraph:
    """Shorthand used by generators and tests."""
    return validate_graph({
        "vertices": [{"id": v, "weight": w} for v, w in weights.items()],
        "edges": [list(e) for e in edges],
    })
