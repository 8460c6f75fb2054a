"""Standard graph families and their closed-form discriminants."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .discriminant import Branch, EquisingularityClass, intersection_multiplicities
from .errors import BadParameters, UnsupportedFamily
from .graph import ResolutionGraph, from_edges
from .ultrametric import key


@dataclass(frozen=True)
class FamilySpec:
    variant: str  # "an", "cone", "cyclic", "star"
    params: tuple[int, ...]

    def __post_init__(self):
        v, p = self.variant, self.params
        if v not in ("an", "cone", "cyclic", "star"):
            raise BadParameters(f"unknown family {v!r}")
        if any(isinstance(k, bool) or not isinstance(k, int) or k < 1 for k in p):
            raise BadParameters("family parameters must be positive integers")
        if v == "an" and (len(p) != 1):
            raise BadParameters("an takes one parameter n >= 1")
        if v == "cone" and (len(p) != 1 or p[0] < 2):
            raise BadParameters("cone takes one parameter n >= 2")
        if v == "cyclic" and (len(p) != 2 or not 0 < p[1] < p[0] or gcd(*p) != 1):
            raise BadParameters("cyclic needs coprime 0 < q < n")
        if v == "star" and not p:
            raise BadParameters("star needs at least one arm")


def an_chain(n):
    return FamilySpec("an", (n,))


def cone(n):
    return FamilySpec("cone", (n,))


def cyclic(n, q):
    return FamilySpec("cyclic", (n, q))


def star(*arms):
    return FamilySpec("star", tuple(arms))


def hj_expand(n: int, q: int) -> list[int]:
    """Hirzebruch-Jung continued fraction ``n/q = b1 - 1/(b2 - 1/(...))``."""
    if not (isinstance(n, int) and isinstance(q, int)) or not 0 < q < n or gcd(n, q) != 1:
        raise BadParameters(f"need coprime 0 < q < n, got ({n}, {q})")
    out = []
    while q:
        b = -(-n // q)  # ceiling
        out.append(b)
        n, q = q, b * q - n
    return out


def hj_value(weights) -> Fraction:
    value = Fraction(weights[-1])
    for b in reversed(weights[:-1]):
        value = b - 1 / value
    return value


def _chain(weights) -> ResolutionGraph:
    ids = [f"v{i + 1}" for i in range(len(weights))]
    return from_edges(dict(zip(ids, weights)), zip(ids, ids[1:]))


def generate(spec: FamilySpec) -> ResolutionGraph:
    if spec.variant != "star":
        return _chain(chain_weights(spec))
    p = spec.params
    # star: centre of weight = number of arms (Tyurina), arms are (2,...,2) chains
    weights = {"c": max(2, len(p))}
    edges = []
    for a, length in enumerate(p, 1):
        prev = "c"
        for j in range(1, length + 1):
            node = f"a{a}_{j}"
            weights[node] = 2
            edges.append((prev, node))
            prev = node
    return from_edges(weights, edges)


def expected_discriminant(spec: FamilySpec) -> EquisingularityClass:
    """Closed-form class for chains and cones (ids are not the pipeline's)."""
    if spec.variant == "star":
        raise UnsupportedFamily("no closed form for star-shaped graphs")
    weights = chain_weights(spec)
    branches: list[Branch] = []
    contacts: dict[tuple[str, str], int] = {}
    k = len(weights)
    if k == 1:
        branches += [Branch(f"L{i}", ("v1",), 1) for i in range(1, 2 * weights[0] - 1)]
    else:
        nt = [i for i, w in enumerate(weights) if i in (0, k - 1) or w > 2]
        for i in nt:
            lines = 2 * weights[i] - (4 if i in (0, k - 1) else 6)
            branches += [Branch(f"L{i + 1}.{j}", (f"v{i + 1}",), 1) for j in range(1, lines + 1)]
        for i, j in zip(nt, nt[1:]):
            length = j - i + 1
            if length % 2 == 0:
                # central arc, a (2, length+1) cusp
                depth = length // 2
                branches.append(Branch(f"A{i + 1}-{j + 1}", (f"v{i + 1}", f"v{j + 1}"), depth))
            else:
                half = (length + 1) // 2
                pair_ = [Branch(f"A{i + 1}-{j + 1}.{t}", (f"v{i + half}",), half) for t in (1, 2)]
                branches += pair_
                contacts[key(pair_[0].id, pair_[1].id)] = half
    ids = [b.id for b in branches]
    for a, i in enumerate(ids):
        for j in ids[a + 1:]:
            contacts.setdefault((i, j) if i <= j else (j, i), 1)
    ims = intersection_multiplicities(branches, contacts)
    return EquisingularityClass(tuple(branches), contacts, ims)


def chain_weights(spec: FamilySpec) -> list[int]:
    v, p = spec.variant, spec.params
    if v == "an":
        return [2] * p[0]
    if v == "cone":
        return [p[0]]
    if v == "cyclic":
        return hj_expand(*p)
    raise UnsupportedFamily(f"{v} graphs are not chains")


def random_minimal_graph(rng: random.Random, max_vertices: int = 40) -> ResolutionGraph:
    """Random tree with weights ``w = max(2, valence + extra)``.

    ``extra`` is zero half of the time so that Tyurina components with
    several depth levels are common.
    """
    n = rng.randint(1, max_vertices)
    edges = [(f"n{rng.randrange(i)}", f"n{i}") for i in range(1, n)]
    val = {f"n{i}": 0 for i in range(n)}
    for a, b in edges:
        val[a] += 1
        val[b] += 1
    weights = {v: max(2, d + rng.choice((0, 0, 0, 0, 1, 1, 2))) for v, d in val.items()}
    return from_edges(weights, edges)
