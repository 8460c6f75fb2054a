"""JSON reports, tables and DOT rendering.

Every number in a JSON report is an exact string ("4", "-7/3"), so reports
can be compared byte for byte and parsed back without loss.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .depth import BranchCounts, DepthProfile
from .discriminant import (
    Analysis,
    Branch,
    EquisingularityClass,
    Invariants,
    Representative,
    intersection_multiplicities,
)
from .errors import MalformedInput
from .graph import ResolutionGraph, validate_graph
from .oracle import ParamBranch, make_branch
from .poly import Poly
from .ultrametric import key

INVARIANT_FIELDS = ("e_delta", "n_b", "n_bs", "e_surface", "mu_section", "delta", "milnor")


def _num(v) -> str:
    return str(Fraction(v))


@dataclass
class Report:
    graph: ResolutionGraph
    discriminant: EquisingularityClass
    representative: Representative | None = None


def report_to_dict(r: Report) -> dict:
    cls = r.discriminant
    out = {
        "graph": r.graph.to_dict(),
        "branches": [
            {
                "id": b.id,
                "support": list(b.support),
                "multiplicity": _num(b.multiplicity),
                "depth": _num(b.depth),
                "char_exponents": [_num(e) for e in b.char_exponents],
            }
            for b in cls.branches
        ],
        "contacts": [[i, j, _num(c)] for (i, j), c in sorted(cls.contacts.items())],
        "invariants": {f: _num(getattr(cls.invariants, f)) for f in INVARIANT_FIELDS},
        "representative": None,
    }
    if r.representative is not None:
        rep = r.representative
        out["representative"] = {
            "parametrizations": [
                dict(b.to_dict(), factor=str(rep.factors[b.id])) for b in rep.branches
            ],
            "polynomial": rep.polynomial,
        }
    return out


def _int(v, what) -> int:
    try:
        q = Fraction(v)
    except (TypeError, ValueError):
        raise MalformedInput(f"{what}: {v!r} is not an exact number") from None
    if q.denominator != 1:
        raise MalformedInput(f"{what}: {v!r} is not an integer")
    return int(q)


def parse_report(data: dict) -> Report:
    """Rebuild a :class:`Report` from its JSON form (no recomputation)."""
    try:
        g = validate_graph(data["graph"])
        branches = []
        for b in data["branches"]:
            br = Branch(b["id"], tuple(b["support"]), _int(b["depth"], "depth"))
            if (_int(b["multiplicity"], "multiplicity") != br.multiplicity
                    or tuple(_int(e, "char_exponents") for e in b["char_exponents"]) != br.char_exponents):
                raise MalformedInput(f"branch {br.id}: type does not match its support")
            branches.append(br)
        contacts = {key(i, j): _int(c, "contact") for i, j, c in data["contacts"]}
        inv = Invariants(**{f: _int(data["invariants"][f], f) for f in INVARIANT_FIELDS})
        rep = None
        if data.get("representative") is not None:
            params, factors = [], {}
            for p in data["representative"]["parametrizations"]:
                f = Poly.parse(p["factor"]) if p.get("factor") is not None else None
                params.append(make_branch(p["id"], [Fraction(c) for c in p["x"]],
                                          [Fraction(c) for c in p["y"]], factor=f))
                factors[p["id"]] = f
            rep = Representative(params, factors)
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedInput(f"malformed report: {e}") from None
    ims = intersection_multiplicities(branches, contacts)
    return Report(g, EquisingularityClass(tuple(branches), contacts, ims, inv), rep)


def discriminant_table(r: Report) -> str:
    cls = r.discriminant
    lines = ["branch\tsupport\tmultiplicity\tdepth\tchar_exponents"]
    for b in cls.branches:
        lines.append(f"{b.id}\t{','.join(b.support)}\t{b.multiplicity}\t{b.depth}\t{b.label}")
    lines.append("")
    lines.append("contacts")
    for (i, j), c in sorted(cls.contacts.items()):
        lines.append(f"{i}\t{j}\t{c}")
    lines.append("")
    lines.append("invariants")
    for f in INVARIANT_FIELDS:
        lines.append(f"{f}\t{getattr(cls.invariants, f)}")
    if r.representative is not None:
        lines.append("")
        lines.append(f"representative\t{r.representative.polynomial}")
    return "\n".join(lines) + "\n"


# --- analyze ---------------------------------------------------------------

def analysis_rows(a: Analysis) -> list[dict]:
    g, d = a.graph, a.depths
    return [
        {
            "vertex": v,
            "weight": _num(g.weight(v)),
            "valence": _num(g.valence(v)),
            "depth": _num(d.s[v]),
            "klass": d.klass(v),
            "branches": _num(a.counts.m[v]),
        }
        for v in g.vertices
    ]


def analysis_to_dict(a: Analysis) -> dict:
    return {
        "graph": a.graph.to_dict(),
        "vertices": analysis_rows(a),
        "arcs": [list(e) for e in sorted(a.depths.central_arcs)],
    }


def analysis_table(a: Analysis) -> str:
    cols = ("vertex", "weight", "valence", "depth", "klass", "branches")
    lines = ["\t".join(cols)]
    lines += ["\t".join(row[c] for c in cols) for row in analysis_rows(a)]
    arcs = sorted(a.depths.central_arcs)
    lines.append("arcs\t" + (" ".join(f"{x}~{y}" for x, y in arcs) if arcs else "-"))
    return "\n".join(lines) + "\n"


# --- DOT -------------------------------------------------------------------

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: ResolutionGraph, depths: DepthProfile, counts: BranchCounts) -> str:
    lines = ["graph resolution {", "  node [shape=circle];"]
    for v in g.vertices:
        label = f"{v} w={g.weight(v)} s={depths.s[v]} m={counts.m[v]}"
        attrs = [f"label={_quote(label)}"]
        if v in depths.central_vertices:
            attrs.append("shape=doublecircle")
        lines.append(f"  {_quote(v)} [{', '.join(attrs)}];")
    arcs = {tuple(sorted(e)) for e in depths.central_arcs}
    for a, b in g.edges:
        style = " [style=bold]" if tuple(sorted((a, b))) in arcs else ""
        lines.append(f"  {_quote(a)} -- {_quote(b)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
