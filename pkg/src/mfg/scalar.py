"""Exact arithmetic in the cyclotomic field Q(zeta_M).

Elements are coordinate tuples of Fractions in the power basis
1, zeta, ..., zeta^(phi(M)-1), reduced modulo the M-th cyclotomic
polynomial, so equality is tuple equality.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .errors import ParseError


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _divide_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _divide_exact(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert not any(num), "non-exact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Coordinates of zeta^k for k in 0..2*m, reduced modulo Phi_m."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(2 * m + 1):
        rows.append(tuple(cur))
        # multiply by zeta: shift up, then reduce the overflow coefficient
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def degree(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


Number = Union[int, Fraction, "Scalar"]


class Scalar:
    """Element of Q(zeta_M)."""

    __slots__ = ("m", "c", "_hash")

    def __init__(self, m: int, coords: Sequence):
        self.m = m
        self.c = tuple(Fraction(x) for x in coords)
        self._hash = None

    @classmethod
    def of(cls, m: int, value: Number) -> "Scalar":
        if isinstance(value, Scalar):
            if value.m != m:
                raise ValueError(f"scalar of order {value.m} used in context of order {m}")
            return value
        d = degree(m)
        return cls(m, (Fraction(value),) + (Fraction(0),) * (d - 1))

    @classmethod
    def root(cls, m: int, e: int) -> "Scalar":
        """zeta_M ** e."""
        return cls(m, _reduction_table(m)[e % m])

    @classmethod
    def _from_poly(cls, m: int, poly: Sequence[Fraction]) -> "Scalar":
        d = degree(m)
        table = _reduction_table(m)
        out = [Fraction(0)] * d
        for k, a in enumerate(poly):
            if a:
                row = table[k % m]
                for i in range(d):
                    if row[i]:
                        out[i] += a * row[i]
        return cls(m, out)

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.m != self.m:
                raise ValueError("mixing scalars of different orders")
            return other
        return Scalar.of(self.m, other)

    def __add__(self, other):
        o = self._coerce(other)
        return Scalar(self.m, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.m, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            f = Fraction(other)
            return Scalar(self.m, [a * f for a in self.c])
        o = self._coerce(other)
        if len(self.c) == 1:
            return Scalar(self.m, (self.c[0] * o.c[0],))
        poly = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        poly[i + j] += a * b
        return Scalar._from_poly(self.m, poly)

    __rmul__ = __mul__

    def conj(self) -> "Scalar":
        if len(self.c) == 1:  # Q(zeta_1) = Q(zeta_2) = Q is real
            return self
        poly = [Fraction(0)] * (self.m + 1)
        for k, a in enumerate(self.c):
            if a:
                poly[(-k) % self.m] += a
        return Scalar._from_poly(self.m, poly)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return not self.is_zero()

    def is_one(self) -> bool:
        return self.c[0] == 1 and not any(self.c[1:])

    def is_unimodular(self) -> bool:
        return (self * self.conj()).is_one()

    def root_exponent(self) -> int | None:
        """e with self == zeta_M^e, or None."""
        for e in range(self.m):
            if _reduction_table(self.m)[e] == self.c:
                return e
        return None

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.m == other.m and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.c[1:]):
                self._hash = hash(self.c[0])
            else:
                self._hash = hash((self.m, self.c))
        return self._hash

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        parts = []
        for k, a in enumerate(self.c):
            if not a:
                continue
            if k == 0:
                parts.append(str(a))
            else:
                z = "z" if k == 1 else f"z^{k}"
                parts.append(z if a == 1 else f"-{z}" if a == -1 else f"{a}*{z}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def to_json(self) -> list[str]:
        return [f"{a.numerator}/{a.denominator}" for a in self.c]

    @classmethod
    def from_json(cls, m: int, data) -> "Scalar":
        try:
            if isinstance(data, (int, str)) and not isinstance(data, bool):
                return cls.of(m, Fraction(data))
            coords = [Fraction(x) for x in data]
        except (ValueError, TypeError, ZeroDivisionError):
            raise ParseError(f"cannot parse scalar {data!r}") from None
        d = degree(m)
        if len(coords) > d:
            return cls._from_poly(m, coords)
        return cls(m, coords + [Fraction(0)] * (d - len(coords)))
