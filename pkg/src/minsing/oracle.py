"""Independent plane-curve engine: contacts and intersections by blowing up.

Branches are given parametrically, ``t -> (x(t), y(t))``, with exact
rational coefficients.  Two branches are followed through the same
sequence of point blow-ups (always in the chart where the common tangent
direction is not the exceptional divisor) until their tangent directions
differ; the number of shared points is their contact and the Noether sum
of products of multiplicities is their intersection number.

Nothing here looks at resolution graphs.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Callable, Sequence

from .errors import NotAtOrigin, OracleError, TruncationExhausted
from .poly import Poly
from .series import Series, compose, exact, revert
from .ultrametric import key, signature

TRUNCATION_CAP = 2 ** 12


@dataclass(frozen=True)
class ParamBranch:
    id: str
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    truncation: int = 32
    factor: Poly | None = field(default=None, compare=False)

    def series(self, prec: int) -> tuple[Series, Series]:
        return Series.of(self.x, prec), Series.of(self.y, prec)

    def to_dict(self) -> dict:
        return {"id": self.id, "x": [str(c) for c in self.x], "y": [str(c) for c in self.y]}


def make_branch(id, x, y, truncation=32, factor=None) -> ParamBranch:
    return ParamBranch(id, tuple(exact(c) for c in x), tuple(exact(c) for c in y),
                       truncation, factor)


@dataclass(frozen=True)
class Step:
    """One shared infinitely near point: multiplicities and the chart used to leave it."""

    m1: int
    m2: int
    chart: str | None
    slope: Fraction | None


def _tangent(xs: Series, ys: Series):
    m = min(_ord(xs), _ord(ys))
    if m >= min(xs.prec, ys.prec):
        raise TruncationExhausted("branch vanishes to working precision")
    return m, (xs[m], ys[m])


def _ord(s: Series) -> int:
    for i, a in enumerate(s.coeffs):
        if a:
            return i
    return s.prec


def _blow_up(xs, ys, direction):
    a, b = direction
    if a:
        lam = exact(Fraction(b) / a)
        ny = ys / xs - Series.of([lam], ys.prec)
        return xs.truncate(ny.prec), ny, "x", lam
    nx = xs / ys
    return nx, ys.truncate(nx.prec), "y", Fraction(0)


def _check_origin(b: ParamBranch, xs, ys):
    if xs.coeffs[0] or ys.coeffs[0]:
        raise NotAtOrigin(f"branch {b.id} does not pass through the origin")


def _strip(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _check_distinct(b1: ParamBranch, b2: ParamBranch):
    if (_strip(b1.x), _strip(b1.y)) == (_strip(b2.x), _strip(b2.y)):
        raise OracleError(f"branches {b1.id} and {b2.id} have the same parametrization")


def shared_trace(b1: ParamBranch, b2: ParamBranch, prec: int) -> list[Step]:
    """Blow-up trace of the points common to ``b1`` and ``b2``."""
    _check_distinct(b1, b2)
    x1, y1 = b1.series(prec)
    x2, y2 = b2.series(prec)
    _check_origin(b1, x1, y1)
    _check_origin(b2, x2, y2)
    trace = []
    while True:
        m1, d1 = _tangent(x1, y1)
        m2, d2 = _tangent(x2, y2)
        if d1[0] * d2[1] != d1[1] * d2[0]:
            trace.append(Step(m1, m2, None, None))
            return trace
        x1, y1, chart, lam = _blow_up(x1, y1, d1)
        x2, y2, _, _ = _blow_up(x2, y2, d2)
        trace.append(Step(m1, m2, chart, lam))


def multiplicity_sequence(b: ParamBranch, prec: int) -> list[int]:
    """Multiplicities at the successive points of ``b`` until it becomes smooth."""
    xs, ys = b.series(prec)
    _check_origin(b, xs, ys)
    seq = []
    while True:
        m, d = _tangent(xs, ys)
        seq.append(m)
        if m == 1:
            return seq
        xs, ys, _, _ = _blow_up(xs, ys, d)


def default_truncation(branches: Sequence[ParamBranch]) -> int:
    env = os.environ.get("MINSING_TRUNCATION")
    if env:
        return int(env)
    return max(b.truncation for b in branches)


def with_retry(fn: Callable[[int], object], branches: Sequence[ParamBranch], truncation=None):
    """Run ``fn(prec)``, doubling ``prec`` on :class:`TruncationExhausted` up to the cap."""
    prec = truncation or default_truncation(branches)
    while True:
        try:
            return fn(prec)
        except TruncationExhausted:
            if prec >= TRUNCATION_CAP:
                raise
            prec = min(2 * prec, TRUNCATION_CAP)


def trace_of(b1: ParamBranch, b2: ParamBranch, truncation=None) -> list[Step]:
    return with_retry(lambda n: shared_trace(b1, b2, n), (b1, b2), truncation)


def oracle_contact(b1: ParamBranch, b2: ParamBranch, truncation=None) -> int:
    # every trace step is a shared point, the origin included
    return len(trace_of(b1, b2, truncation))


def noether_intersection(b1, b2, truncation=None) -> int:
    return sum(s.m1 * s.m2 for s in trace_of(b1, b2, truncation))


def substitution_intersection(b1: ParamBranch, b2: ParamBranch, truncation=None) -> int:
    """``ord_t F2(x1(t), y1(t))`` where ``F2`` is the polynomial factor of ``b2``."""
    if b2.factor is None:
        raise OracleError(f"branch {b2.id} carries no polynomial factor")
    return with_retry(lambda n: b2.factor.substitute(*b1.series(n)).order(), (b1, b2), truncation)


def oracle_intersection(b1: ParamBranch, b2: ParamBranch, truncation=None, trace=None) -> int:
    if trace is None:
        trace = trace_of(b1, b2, truncation)
    value = sum(s.m1 * s.m2 for s in trace)
    for p, q in ((b1, b2), (b2, b1)):
        if q.factor is not None:
            alt = substitution_intersection(p, q, truncation)
            if alt != value:
                raise OracleError(
                    f"Noether sum {value} and substitution {alt} disagree for {b1.id}, {b2.id}")
    return value


def ord_difference_contact(b1: ParamBranch, b2: ParamBranch, truncation=None) -> int:
    """Contact of two smooth branches as the order of ``f1 - f2`` once both are graphs."""
    _check_distinct(b1, b2)

    def run(n):
        x1, y1 = b1.series(n)
        x2, y2 = b2.series(n)
        m1, d1 = _tangent(x1, y1)
        m2, d2 = _tangent(x2, y2)
        if m1 != 1 or m2 != 1:
            raise OracleError("ord-of-difference shortcut needs smooth branches")
        if d1[0] * d2[1] != d1[1] * d2[0]:
            return 1
        if d1[0]:
            f1 = compose(y1.coeffs, revert(x1))
            f2 = compose(y2.coeffs, revert(x2))
        else:
            f1 = compose(x1.coeffs, revert(y1))
            f2 = compose(x2.coeffs, revert(y2))
        return (f1 - f2).order()
    return with_retry(run, (b1, b2), truncation)


def char_exponents(seq: Sequence[int]) -> tuple[int, ...]:
    if seq[0] == 1:
        return (1,)
    if seq[0] == 2:
        s = sum(1 for m in seq if m == 2)
        return (2, 2 * s + 1)
    raise OracleError(f"multiplicity {seq[0]} branches are not supported")


def branch_type(b: ParamBranch, truncation=None) -> tuple[int, ...]:
    return char_exponents(with_retry(lambda n: multiplicity_sequence(b, n), (b,), truncation))


def type_label(exps: Sequence[int]) -> str:
    return "(" + ",".join(str(e) for e in exps) + ")"


# --- whole curves ----------------------------------------------------------

@dataclass
class OracleClass:
    types: dict[str, tuple[int, ...]]
    contacts: dict[tuple[str, str], int]
    intersections: dict[tuple[str, str], int]

    def signature(self) -> str:
        return signature({i: type_label(t) for i, t in self.types.items()}, self.contacts)


def classify(branches: Sequence[ParamBranch], truncation=None) -> OracleClass:
    types = {b.id: branch_type(b, truncation) for b in branches}
    contacts, ims = {}, {}
    for b1, b2 in combinations(branches, 2):
        k = key(b1.id, b2.id)
        trace = trace_of(b1, b2, truncation)
        contacts[k] = len(trace)
        ims[k] = oracle_intersection(b1, b2, truncation, trace)
    return OracleClass(types, contacts, ims)


@dataclass
class VerificationReport:
    checked_pairs: int = 0
    discrepancies: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    @property
    def first(self) -> str | None:
        return self.discrepancies[0] if self.discrepancies else None


def verify_class(model, expected, truncation=None) -> VerificationReport:
    """Recompute every branch type, contact and intersection of ``model``.

    ``model`` is a sequence of :class:`ParamBranch` (or an object with a
    ``branches`` attribute holding them) whose ids match the branch ids of
    ``expected``, an equisingularity class from the discriminant builder.
    """
    params = list(getattr(model, "branches", model))
    report = VerificationReport()
    by_id = {b.id: b for b in expected.branches}
    if set(by_id) != {p.id for p in params}:
        report.discrepancies.append("branch ids of model and expected class differ")
        return report
    for p in params:
        got = branch_type(p, truncation)
        want = tuple(by_id[p.id].char_exponents)
        if got != want:
            report.discrepancies.append(f"branch {p.id}: type {got} != {want}")
    for p1, p2 in combinations(params, 2):
        k = key(p1.id, p2.id)
        report.checked_pairs += 1
        trace = trace_of(p1, p2, truncation)
        c = len(trace)
        if c != expected.contacts[k]:
            report.discrepancies.append(f"contact{k}: oracle {c} != expected {expected.contacts[k]}")
            continue
        im = oracle_intersection(p1, p2, truncation, trace)
        if im != expected.intersections[k]:
            report.discrepancies.append(
                f"intersection{k}: oracle {im} != expected {expected.intersections[k]}")
    return report


# --- binomial products such as (x^4+y^4)(x^2+y^5) ---------------------------

_FACTOR = re.compile(r"\(\s*([xy])(?:\^(\d+))?\s*\+\s*([xy])(?:\^(\d+))?\s*\)")


def parse_binomial_product(text: str) -> list[ParamBranch]:
    """Branches of a product of factors ``(x^a + y^b)``.

    The ``g = gcd(a, b)`` branches of ``x^a + y^b`` are ``x^a' = z y^b'`` for
    the ``g`` roots ``z`` of ``z^g = -1``.  Any ``g`` distinct nonzero
    constants give an equisingular curve, so rational ones are used:
    branch ``i`` is ``(i t^b', t^a')``.
    """
    body = re.sub(r"\s+", "", text).split("=")[0]
    factors = _FACTOR.findall(body)
    if not factors or _FACTOR.sub("", body).replace("*", ""):
        raise OracleError(f"cannot parse binomial product {text!r}")
    branches = []
    for n, (v1, e1, v2, e2) in enumerate(factors):
        if v1 == v2:
            raise OracleError(f"factor {n} must involve both x and y")
        exps = {v1: int(e1 or 1), v2: int(e2 or 1)}
        a, b = exps["x"], exps["y"]
        g = gcd(a, b)
        ap, bp = a // g, b // g
        trunc = 4 * (a * b // g + 1) + 8
        for i in range(1, g + 1):
            xs = [0] * bp + [i]
            ys = [0] * ap + [1]
            factor = Poly({(ap, 0): 1, (0, bp): -Fraction(i) ** ap})
            branches.append(make_branch(f"f{n}.{i}", xs, ys, trunc, factor))
    return branches
