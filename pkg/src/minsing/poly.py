"""Bivariate polynomials over the rationals, as ``{(i, j): coeff}`` for ``x^i y^j``."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .series import Series, exact


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        self.terms = {k: exact(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def in_x(cls, coeffs):
        """Univariate polynomial in x from its coefficient list."""
        return cls({(i, 0): c for i, c in enumerate(coeffs)})

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(out)

    def __neg__(self):
        return Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly({k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                k = (a + c, b + d)
                out[k] = out.get(k, 0) + u * v
        return Poly(out)

    def __pow__(self, n: int):
        result = Poly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def substitute(self, xs: Series, ys: Series) -> Series:
        """Evaluate at ``(x(t), y(t))``."""
        prec = min(xs.prec, ys.prec)
        total = Series.of([], prec)
        xp, yp = {0: Series.of([1], prec)}, {0: Series.of([1], prec)}
        for (i, j), c in self.terms.items():
            for pows, base, e in ((xp, xs, i), (yp, ys, j)):
                while e not in pows:
                    k = max(pows)
                    pows[k + 1] = pows[k] * base
            total = total + xp[i] * yp[j] * c
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (k[0] + k[1], -k[0], k)):
            c = self.terms[(i, j)]
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in (("x", i), ("y", j)) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Inverse of ``str``: sums of terms like ``3``, ``-1/2*x^2*y``, ``y^3``."""
        body = text.replace(" ", "")
        if not body:
            raise ValueError("empty polynomial")
        if body[0] not in "+-":
            body = "+" + body
        terms: dict[tuple[int, int], object] = {}
        for sign, term in _TERM.findall(body):
            coeff, exps = Fraction(1), [0, 0]
            for factor in term.split("*"):
                m = _POWER.fullmatch(factor)
                if m:
                    exps["xy".index(m[1])] += int(m[2] or 1)
                else:
                    coeff *= Fraction(factor)
            k = tuple(exps)
            terms[k] = terms.get(k, 0) + (-coeff if sign == "-" else coeff)
        if "".join(s + t for s, t in _TERM.findall(body)) != body:
            raise ValueError(f"cannot parse polynomial {text!r}")
        return cls(terms)


_TERM = re.compile(r"([+-])([^+-]+)")
_POWER = re.compile(r"([xy])(?:\^(\d+))?")
