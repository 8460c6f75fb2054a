"""Equisingularity class of the generic discriminant of a minimal singularity.

Pipeline: depths and branch counts on the resolution graph give the polar
branches (smooth ones on vertices, one ``(2, 2s+1)`` cusp per central arc),
their pairwise contacts come from the depth filtration of the graph, and the
usual plane-curve formulas give the numerical invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .depth import BranchCounts, DepthProfile, branch_counts, depth_map, omega_cycle
from .errors import (
    EmissionUnrealized,
    IdentityViolation,
    InconsistentCounts,
    UltrametricViolation,
)
from .graph import (
    Cycle,
    ResolutionGraph,
    canonical_cycle,
    fundamental_cycle,
    intersection_form,
    pair,
)
from .poly import Poly
from .ultrametric import classes_above, key, matrix_violation, signature


@dataclass(frozen=True)
class Branch:
    id: str
    support: tuple[str, ...]
    depth: int

    @property
    def on_arc(self) -> bool:
        return len(self.support) == 2

    @property
    def multiplicity(self) -> int:
        return 2 if self.on_arc else 1

    @property
    def char_exponents(self) -> tuple[int, ...]:
        return (2, 2 * self.depth + 1) if self.on_arc else (1,)

    @property
    def delta(self) -> int:
        return self.depth if self.on_arc else 0

    def mult_sequence(self, length: int) -> list[int]:
        twos = self.depth if self.on_arc else 0
        return [2] * min(twos, length) + [1] * max(0, length - twos)

    @property
    def label(self) -> str:
        return "(" + ",".join(map(str, self.char_exponents)) + ")"


@dataclass(frozen=True)
class Invariants:
    e_delta: int
    n_b: int
    n_bs: int
    e_surface: int
    mu_section: int
    delta: int
    milnor: int


@dataclass(eq=False)
class EquisingularityClass:
    branches: tuple[Branch, ...]
    contacts: dict[tuple[str, str], int]
    intersections: dict[tuple[str, str], int]
    invariants: Invariants | None = None

    def contact(self, i: str, j: str) -> int:
        return self.contacts[key(i, j)]

    def signature(self) -> str:
        return signature({b.id: b.label for b in self.branches}, self.contacts)


@dataclass(eq=False)
class Analysis:
    """Everything computed for one graph, kept together for reporting."""

    graph: ResolutionGraph
    z: Cycle
    zk: Cycle
    depths: DepthProfile
    counts: BranchCounts
    discriminant: EquisingularityClass = field(repr=False)


# --- branches --------------------------------------------------------------

def enumerate_branches(g: ResolutionGraph, depths: DepthProfile, counts: BranchCounts) -> list[Branch]:
    branches = []
    for x, y in sorted(depths.central_arcs):
        branches.append(Branch(f"{x}~{y}", (x, y), depths.s[x]))
    for u in g.vertices:
        smooth = counts.m[u] - depths.arcs_at(u)
        if smooth < 0:
            raise InconsistentCounts(f"{counts.m[u]} branches but {depths.arcs_at(u)} arcs at {u}")
        branches.extend(Branch(f"{u}.{i}", (u,), depths.s[u]) for i in range(1, smooth + 1))
    return branches


# --- contacts --------------------------------------------------------------

class _Filtration:
    """Component labels of ``A_k = {v : s_v >= max(2, k + 1)}`` for each stage k."""

    def __init__(self, depths: DepthProfile):
        self.depths = depths
        self._cache = {}
        g = depths.graph
        self.labels = []
        for k in range(depths.max_depth + 1):
            floor = max(2, k + 1)
            members = {v for v in g.vertices if depths.s[v] >= floor}
            lab = {}
            for v in g.vertices:
                if v in members and v not in lab:
                    todo = [v]
                    lab[v] = v
                    while todo:
                        a = todo.pop()
                        for b in g.neighbors(a):
                            if b in members and b not in lab:
                                lab[b] = v
                                todo.append(b)
            self.labels.append(lab)

    def contact(self, b1: Branch, b2: Branch) -> int:
        k = (b1.support, b2.support)
        if k not in self._cache:
            self._cache[k] = self._contact(b1, b2)
        return self._cache[k]

    def _contact(self, b1: Branch, b2: Branch) -> int:
        shared = set(b1.support) & set(b2.support)
        if shared:
            return max(self.depths.s[u] for u in shared)
        union = b1.support + b2.support
        c = len(self.labels) + 1
        for k, lab in enumerate(self.labels):
            if len({lab.get(v) for v in union}) != 1 or union[0] not in lab:
                c = 1 + k
                break
        # a smooth branch leaves through a generic point of L_u, created at stage s_u
        for b in (b1, b2):
            if not b.on_arc:
                c = min(c, self.depths.s[b.support[0]])
        return c


def contact(b1: Branch, b2: Branch, depths: DepthProfile) -> int:
    """Number of shared infinitely near points of two discriminant branches."""
    return _Filtration(depths).contact(b1, b2)


def _support_groups(branches: Sequence[Branch]):
    """Index of each branch's support among the distinct supports, and one branch per support."""
    first: dict[tuple[str, ...], int] = {}
    reps, group = [], []
    for b in branches:
        if b.support not in first:
            first[b.support] = len(reps)
            reps.append(b)
        group.append(first[b.support])
    return group, reps


def _expand(branches: Sequence[Branch], table) -> dict[tuple[str, str], int]:
    # branches with equal support are interchangeable: look values up per support pair
    group, _ = _support_groups(branches)
    ids = [b.id for b in branches]
    out = {}
    for a in range(len(ids)):
        ia, row = ids[a], table[group[a]]
        for b in range(a + 1, len(ids)):
            ib = ids[b]
            out[(ia, ib) if ia <= ib else (ib, ia)] = row[group[b]]
    return out


def _contact_table(branches: Sequence[Branch], depths: DepthProfile):
    filt = _Filtration(depths)
    top = 1 + depths.max_depth
    group, reps = _support_groups(branches)
    table = [[filt.contact(b1, b2) for b2 in reps] for b1 in reps]
    for b1, row in zip(reps, table):
        for b2, c in zip(reps, row):
            if not 1 <= c <= top:
                raise UltrametricViolation(f"contact {c} of {b1.id}, {b2.id} out of range")
    m = [[table[ga][gb] for gb in group] for ga in group]
    bad = matrix_violation(m)
    if bad is not None:
        raise UltrametricViolation(
            f"contacts of {tuple(branches[i].id for i in bad)} are not ultrametric")
    return reps, table


def contact_matrix(branches: Sequence[Branch], depths: DepthProfile) -> dict[tuple[str, str], int]:
    return _expand(branches, _contact_table(branches, depths)[1])


def noether_sum(b1: Branch, b2: Branch, c: int) -> int:
    """Sum of products of multiplicities over the first ``c`` shared points."""
    return _noether(b1.delta, b2.delta, c)


def _noether(t1: int, t2: int, c: int) -> int:
    # t1, t2: number of double points on each branch
    if not (t1 or t2):
        return c
    lo, hi = min(t1, t2, c), min(max(t1, t2), c)
    return 4 * lo + 2 * (hi - lo) + (c - hi)


def intersection_multiplicities(branches: Sequence[Branch], contacts) -> dict[tuple[str, str], int]:
    delta = {b.id: b.delta for b in branches}
    n = len(delta)
    if len(contacts) != n * (n - 1) // 2:
        raise InconsistentCounts(f"{len(contacts)} contacts for {n} branches")
    return {(i, j): _noether(delta[i], delta[j], c) for (i, j), c in contacts.items()}


# --- invariants ------------------------------------------------------------

def invariants(g, z, zk, branches, intersections, omega=None) -> Invariants:
    zz, zzk = pair(z, z), pair(z, zk)
    e_delta = _integral(zzk - zz)
    mu_section = _integral(1 + zzk)
    e_surface = _integral(-zz)
    n_b = len(branches)
    n_bs = sum(1 for b in branches if b.on_arc)
    checks = [
        ("E1", e_delta == sum(b.multiplicity for b in branches), "e_delta != sum of multiplicities"),
        ("E2", n_b == e_delta - n_bs, "n_b != e_delta - n_bs"),
        ("E4", e_delta == mu_section - 1 + e_surface, "e_delta != mu - 1 + e(S)"),
    ]
    if omega is not None:
        checks.append(("E3", n_b == -pair(z, omega) - n_bs, "n_b != -Z.Z_Omega - n_bs"))
    for name, ok, msg in checks:
        if not ok:
            raise IdentityViolation(name, msg)
    delta = sum(b.delta for b in branches) + sum(intersections.values())
    return Invariants(e_delta, n_b, n_bs, e_surface, mu_section, delta, 2 * delta - n_b + 1)


def _integral(q: Fraction) -> int:
    if q.denominator != 1:
        raise IdentityViolation("integrality", f"{q} is not an integer")
    return int(q)


def analyze(g: ResolutionGraph) -> Analysis:
    """Run the full pipeline on a validated graph."""
    intersection_form(g)  # definiteness certificate
    z = fundamental_cycle(g)
    zk = canonical_cycle(g)
    depths = depth_map(g)
    counts = branch_counts(g, depths, omega_cycle(g, depths, zk))
    branches = enumerate_branches(g, depths, counts)
    reps, table = _contact_table(branches, depths)
    contacts = _expand(branches, table)
    ims = _expand(branches, [[noether_sum(b1, b2, c) for b2, c in zip(reps, row)]
                             for b1, row in zip(reps, table)])
    inv = invariants(g, z, zk, branches, ims, counts.omega)
    cls = EquisingularityClass(tuple(branches), contacts, ims, inv)
    return Analysis(g, z, zk, depths, counts, cls)


def discriminant(g: ResolutionGraph) -> EquisingularityClass:
    return analyze(g).discriminant


# --- representative --------------------------------------------------------

def unrealizable_pair(cls: EquisingularityClass) -> str | None:
    """Explain why no plane curve has these contacts, or return None.

    A ``(2, 2s+1)`` cusp shares at most ``s + 1`` points with a branch of a
    different type.  Two such cusps sharing ``s + 1`` points also share the
    satellite point that follows, so their contact is never exactly ``s + 1``.
    """
    for b1, b2 in combinations(cls.branches, 2):
        c = cls.contact(b1.id, b2.id)
        for a, b in ((b1, b2), (b2, b1)):
            if a.on_arc and c > a.depth + 1 and not (b.on_arc and b.depth == a.depth):
                return f"contact {c} of {a.id} and {b.id} exceeds {a.depth + 1}"
        if b1.on_arc and b2.on_arc and b1.depth == b2.depth and c == b1.depth + 1:
            return (f"equal-depth cusps {b1.id}, {b2.id} cannot have contact "
                    f"{c} (only <= {c - 1} or >= {c + 1})")
    return None


@dataclass
class Representative:
    branches: list  # of oracle.ParamBranch
    factors: dict[str, Poly]

    @property
    def polynomial(self) -> str:
        return "*".join(f"({self.factors[b.id]})" for b in self.branches)


def emit_representative(cls: EquisingularityClass, verify: bool = True) -> Representative:
    """Explicit plane curve in the class, checked by the blow-up oracle.

    Smooth branches are graphs ``y = P(x)``; a cusp of depth ``s`` is
    ``x = t^2, y = P(t^2) + t^(2s+1)`` with ``deg P <= s``.  Two branches
    share the coefficients of ``P`` below their contact and differ at it.
    """
    from .oracle import make_branch, verify_class

    branches = list(cls.branches)
    by_id = {b.id: b for b in branches}
    problem = unrealizable_pair(cls)
    if problem:
        raise EmissionUnrealized(problem)
    top = max(cls.contacts.values(), default=1)
    coeffs: dict[str, list[int]] = {b.id: [] for b in branches}

    def horizon(b: Branch) -> int:
        return b.depth if b.on_arc else top

    def assign(group: list[str], level: int):
        group = [i for i in group if horizon(by_id[i]) >= level]
        if level > top or not group:
            return
        for value, cls_ in enumerate(classes_above(group, cls.contact, level), 1):
            for i in cls_:
                coeffs[i].append(value)
            assign(cls_, level + 1)

    assign([b.id for b in branches], 1)

    truncation = 4 * (1 + max((b.depth for b in branches), default=1)) + 8
    params, factors = [], {}
    for b in branches:
        p = [0] + coeffs[b.id]
        if b.on_arc:
            s = b.depth
            xs = [0, 0, 1]
            ys = [0] * (2 * s + 2)
            for k, a in enumerate(p):
                ys[2 * k] += a
            ys[2 * s + 1] = 1
            f = (Poly.y() - Poly.in_x(p)) ** 2 - Poly({(2 * s + 1, 0): 1})
        else:
            xs, ys = [0, 1], p
            f = Poly.y() - Poly.in_x(p)
        factors[b.id] = f
        params.append(make_branch(b.id, xs, ys, truncation, f))

    rep = Representative(params, factors)
    if verify:
        report = verify_class(rep, cls)
        if not report.ok:
            raise EmissionUnrealized(report.first)
    return rep
