"""Eventually periodic points ``pre · per^∞`` as exact stand-ins for points of X_A."""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .errors import Inadmissible, ParseError
from .shift import MarkovShift, Word, format_word, parse_word


def _primitive_root(per: Word) -> Word:
    n = len(per)
    for d in range(1, n):
        if n % d == 0 and per[:d] * (n // d) == per:
            return per[:d]
    return per


def _canonical(pre: Word, per: Word) -> tuple[Word, Word]:
    per = _primitive_root(per)
    # absorb trailing preperiod symbols into a rotated period
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1:] + per[:-1]
    return pre, per


class EPPoint:
    """The sequence ``pre, per, per, ...`` in canonical form.

    Canonical means the period is primitive and the preperiod cannot be
    shortened by rotating the period, so equality is structural.
    Points carry no shift; admissibility is checked against one on demand.
    """

    __slots__ = ("pre", "per", "_hash")

    def __init__(self, pre: Word, per: Word, *, _canonical_form: bool = False):
        if not per:
            raise ValueError("period must be nonempty")
        if not _canonical_form:
            pre, per = _canonical(tuple(pre), tuple(per))
        self.pre = pre
        self.per = per
        self._hash = hash((pre, per))

    @classmethod
    def parse(cls, text: str) -> "EPPoint":
        if "|" not in text:
            raise ParseError(f"point {text!r} must look like 'pre|period'")
        a, b = text.split("|", 1)
        per = parse_word(b)
        if not per:
            raise ParseError(f"point {text!r} has an empty period")
        return cls(parse_word(a), per)

    def __str__(self):
        return f"{format_word(self.pre)}|{format_word(self.per)}"

    def __repr__(self):
        return f"EPPoint({str(self)!r})"

    def __eq__(self, other):
        return (
            isinstance(other, EPPoint)
            and self._hash == other._hash
            and self.pre == other.pre
            and self.per == other.per
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (len(self.pre), len(self.per), self.pre, self.per) < (
            len(other.pre), len(other.per), other.pre, other.per)

    @property
    def first(self) -> int:
        return self.pre[0] if self.pre else self.per[0]

    def symbol(self, i: int) -> int:
        """0-indexed symbol."""
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def prefix(self, k: int) -> Word:
        pre, per = self.pre, self.per
        if k <= len(pre):
            return pre[:k]
        reps = -(-(k - len(pre)) // len(per))
        return (pre + per * reps)[:k]

    def starts_with(self, w: Word) -> bool:
        return self.prefix(len(w)) == w

    def drop(self, k: int) -> "EPPoint":
        """sigma^k."""
        if k == 0:
            return self
        pre, per = self.pre, self.per
        if k <= len(pre):
            return EPPoint(pre[k:], per, _canonical_form=True)
        r = (k - len(pre)) % len(per)
        return EPPoint((), per[r:] + per[:r], _canonical_form=True)

    def shift(self) -> "EPPoint":
        return self.drop(1)

    def prepend(self, w: Word) -> "EPPoint":
        if not w:
            return self
        pre = w + self.pre
        per = self.per
        if self.pre:
            return EPPoint(pre, per, _canonical_form=True)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        return EPPoint(pre, per, _canonical_form=True)

    def is_admissible(self, shift: MarkovShift) -> bool:
        return shift.is_admissible(self.pre + self.per + self.per)

    def check(self, shift: MarkovShift) -> "EPPoint":
        if not self.is_admissible(shift):
            raise Inadmissible(f"point {self} is not in X_A")
        return self

    def to_json(self) -> str:
        return str(self)


def shift_point(p: EPPoint) -> EPPoint:
    return p.shift()


def _primitive_cycles(shift: MarkovShift, q: int) -> list[Word]:
    out = []
    for length in range(1, q + 1):
        for w in shift.words(length):
            if shift.allowed(w[-1], w[0]) and _primitive_root(w) == w:
                out.append(w)
    return out


@lru_cache(maxsize=64)
def sweep(shift: MarkovShift, max_pre: int, max_per: int) -> tuple[EPPoint, ...]:
    """Every canonical point of X_A with |pre| <= max_pre and |per| <= max_per."""
    pts = []
    for per in _primitive_cycles(shift, max_per):
        # preperiods are built right-to-left so the junction is admissible
        layer: list[Word] = [()]
        pts.append(EPPoint((), per, _canonical_form=True))
        for _ in range(max_pre):
            nxt = []
            for pre in layer:
                head = pre[0] if pre else per[0]
                for a in shift.symbols:
                    if not shift.allowed(a, head):
                        continue
                    if not pre and a == per[-1]:
                        continue
                    nxt.append((a,) + pre)
            layer = nxt
            pts.extend(EPPoint(pre, per, _canonical_form=True) for pre in layer)
    pts.sort()
    return tuple(pts)


def points_in_cylinder(points, w: Word) -> Iterator[EPPoint]:
    return (p for p in points if p.starts_with(w))
