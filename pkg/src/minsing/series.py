"""Truncated power series in one variable with exact rational coefficients.

A :class:`Series` knows its coefficients of ``t^0 .. t^(prec-1)``; anything
beyond is unknown, and every operation tracks how much precision survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import TruncationExhausted


def exact(a):
    """``a`` as an int when integral, else a Fraction (ints keep arithmetic fast)."""
    q = Fraction(a)
    return q.numerator if q.denominator == 1 else q


@dataclass(frozen=True)
class Series:
    coeffs: tuple[Fraction, ...]

    @classmethod
    def of(cls, coeffs: Iterable, prec: int) -> "Series":
        c = [exact(a) for a in coeffs][:prec]
        c += [0] * (prec - len(c))
        return cls(tuple(c))

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        if i >= self.prec:
            raise TruncationExhausted(f"coefficient t^{i} beyond precision {self.prec}")
        return self.coeffs[i]

    def order(self) -> int:
        for i, a in enumerate(self.coeffs):
            if a:
                return i
        raise TruncationExhausted(f"series vanishes to precision {self.prec}")

    def truncate(self, prec: int) -> "Series":
        return Series(self.coeffs[:prec])

    def __add__(self, other):
        n = min(self.prec, other.prec)
        return Series(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __sub__(self, other):
        n = min(self.prec, other.prec)
        return Series(tuple(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __neg__(self):
        return Series(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Series):
            k = exact(other)
            return Series(tuple(k * a for a in self.coeffs))
        # the product is known up to min(ord a + prec b, ord b + prec a)
        oa, ob = _order_or(self), _order_or(other)
        n = min(oa + other.prec, ob + self.prec)
        out = [0] * n
        ca, cb = self.coeffs, other.coeffs
        for i in range(oa, min(n, self.prec)):
            a = ca[i]
            if not a:
                continue
            for j in range(ob, min(n - i, other.prec)):
                b = cb[j]
                if b:
                    out[i + j] += a * b
        return Series(tuple(out))

    __rmul__ = __mul__

    def shift_down(self, m: int) -> "Series":
        """Divide by ``t^m``; the first ``m`` coefficients must vanish."""
        if any(self.coeffs[:m]):
            raise ValueError("series not divisible by t^%d" % m)
        if m > self.prec:
            raise TruncationExhausted("division by t^%d exceeds precision" % m)
        return Series(self.coeffs[m:])

    def inverse(self) -> "Series":
        a0 = self.coeffs[0] if self.coeffs else 0
        if not a0:
            raise ZeroDivisionError("series is not a unit")
        n = self.prec
        inv = [0] * n
        inv[0] = exact(Fraction(1) / a0)
        for k in range(1, n):
            acc = sum(self.coeffs[j] * inv[k - j] for j in range(1, k + 1))
            inv[k] = exact(-Fraction(acc) / a0)
        return Series(tuple(inv))

    def __truediv__(self, other: "Series") -> "Series":
        """Quotient with ``ord(self) >= ord(other)``."""
        m = other.order()
        unit = other.shift_down(m)
        if unit.coeffs[0] == 1 and not any(unit.coeffs[1:]):
            return self.shift_down(m).truncate(unit.prec)
        return self.shift_down(m) * unit.inverse()


def _order_or(s: Series) -> int:
    for i, a in enumerate(s.coeffs):
        if a:
            return i
    return s.prec


def variable(prec: int) -> Series:
    return Series.of([0, 1], prec)


def compose(f: Sequence, g: Series) -> Series:
    """``f(g(t))`` for a polynomial/series ``f`` given by coefficients; ``g(0) = 0``."""
    if g.coeffs and g.coeffs[0]:
        raise ValueError("inner series must vanish at 0")
    if g.prec > 1 and g.coeffs[1] == 1 and not any(g.coeffs[2:]):
        return Series.of(f, g.prec)  # g = t
    result = Series.of([], g.prec)
    for a in reversed(list(f)[: g.prec]):
        result = result * g + Series.of([a], g.prec)
    return result


def revert(f: Series) -> Series:
    """Compositional inverse of ``f`` with ``f(0) = 0``, ``f'(0) != 0``."""
    n = f.prec
    if f.coeffs[0] or not f.coeffs[1]:
        raise ValueError("series is not invertible for composition")
    if all(a == (1 if i == 1 else 0) for i, a in enumerate(f.coeffs)):
        return f
    g = [0, exact(Fraction(1) / f.coeffs[1])] + [0] * (n - 2)
    for k in range(2, n):
        # coefficient of t^k in f(g) with the current partial g; fix g_k
        ck = compose(f.coeffs, Series(tuple(g))).coeffs[k]
        g[k] = exact(-Fraction(ck) / f.coeffs[1])
    return Series(tuple(g))
