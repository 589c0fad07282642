"""Clopen subsets and locally constant functions of X_A at a uniform depth."""
from __future__ import annotations

from typing import Any, Callable, Iterable, Mapping

from .errors import ShiftMismatch
from .points import EPPoint
from .shift import MarkovShift, Word, format_word, parse_word


def _same_shift(a: MarkovShift, b: MarkovShift) -> None:
    if a != b:
        raise ShiftMismatch("operands live on different shifts")


class ClopenSet:
    """Union of cylinders U_w over a set of words of one common length."""

    __slots__ = ("shift", "depth", "words")

    def __init__(self, shift: MarkovShift, depth: int, words: Iterable[Word]):
        words = frozenset(tuple(w) for w in words)
        for w in words:
            if len(w) != depth:
                raise ValueError(f"word {format_word(w)} has length != depth {depth}")
            shift.check_word(w)
        self.shift = shift
        self.depth = depth
        self.words = words

    @classmethod
    def cylinder(cls, shift: MarkovShift, w: Word) -> "ClopenSet":
        return cls(shift, len(w), [tuple(w)])

    @classmethod
    def whole(cls, shift: MarkovShift, depth: int = 0) -> "ClopenSet":
        return cls(shift, depth, shift.words(depth))

    @classmethod
    def empty(cls, shift: MarkovShift, depth: int = 0) -> "ClopenSet":
        return cls(shift, depth, ())

    def refine_to_depth(self, d: int) -> "ClopenSet":
        if d < self.depth:
            raise ValueError("can only refine to a larger depth")
        if d == self.depth:
            return self
        out = [u for w in self.words for u in self.shift.extensions(w, d)]
        return ClopenSet(self.shift, d, out)

    def _align(self, other: "ClopenSet"):
        _same_shift(self.shift, other.shift)
        d = max(self.depth, other.depth)
        return self.refine_to_depth(d), other.refine_to_depth(d), d

    def union(self, other: "ClopenSet") -> "ClopenSet":
        a, b, d = self._align(other)
        return ClopenSet(self.shift, d, a.words | b.words)

    def intersection(self, other: "ClopenSet") -> "ClopenSet":
        a, b, d = self._align(other)
        return ClopenSet(self.shift, d, a.words & b.words)

    def complement(self) -> "ClopenSet":
        return ClopenSet(self.shift, self.depth, set(self.shift.words(self.depth)) - self.words)

    __or__ = union
    __and__ = intersection
    __invert__ = complement

    def is_whole(self) -> bool:
        return self.words == frozenset(self.shift.words(self.depth))

    def is_empty(self) -> bool:
        return not self.words

    def same_set(self, other: "ClopenSet") -> bool:
        a, b, _ = self._align(other)
        return a.words == b.words

    def __contains__(self, p: EPPoint) -> bool:
        return p.prefix(self.depth) in self.words

    def __repr__(self):
        ws = ",".join(sorted(format_word(w) for w in self.words))
        return f"ClopenSet(depth={self.depth}, {{{ws}}})"


def point_in(p: EPPoint, c: ClopenSet) -> bool:
    return p in c


class LCFunction:
    """Locally constant function given by its table on B_depth(X_A).

    Values may be any hashable objects supporting ``==`` (ints, Fractions,
    cyclotomic scalars).
    """

    __slots__ = ("shift", "depth", "table")

    def __init__(self, shift: MarkovShift, depth: int, table: Mapping[Word, Any]):
        table = {tuple(w): v for w, v in table.items()}
        words = shift.words(depth)
        if len(table) != len(words) or any(w not in table for w in words):
            raise ValueError(f"table is not total on B_{depth}")
        self.shift = shift
        self.depth = depth
        self.table = table

    @classmethod
    def constant(cls, shift: MarkovShift, value, depth: int = 0) -> "LCFunction":
        return cls(shift, depth, {w: value for w in shift.words(depth)})

    @classmethod
    def from_pieces(cls, shift: MarkovShift, pieces: Mapping[Word, Any], default=None) -> "LCFunction":
        """Build from values on a prefix-free family of cylinders.

        Points outside every cylinder get ``default``; if no default is given
        the cylinders must cover X_A.
        """
        depth = max((len(w) for w in pieces), default=0)
        table = {}
        for u in shift.words(depth):
            for w, v in pieces.items():
                if u[: len(w)] == tuple(w):
                    table[u] = v
                    break
            else:
                if default is None:
                    raise ValueError(f"cylinders do not cover U_{format_word(u)}")
                table[u] = default
        return cls(shift, depth, table)

    def _new(self, depth: int, table) -> "LCFunction":
        return LCFunction(self.shift, depth, table)

    def __call__(self, p: EPPoint):
        return self.table[p.prefix(self.depth)]

    def value_on(self, w: Word):
        """Value on the cylinder U_w, assuming ``len(w) >= depth``."""
        return self.table[tuple(w[: self.depth])]

    def refine_to_depth(self, d: int) -> "LCFunction":
        if d < self.depth:
            raise ValueError("can only refine to a larger depth")
        if d == self.depth:
            return self
        return self._new(d, {u: self.table[u[: self.depth]] for u in self.shift.words(d)})

    def canonical(self) -> "LCFunction":
        """Merge sibling cylinders carrying equal values, down to minimal depth."""
        f = self
        while f.depth > 0:
            coarse = {}
            for w in f.shift.words(f.depth - 1):
                vals = {f.table[w + (j,)] for j in f.shift.follow_set(w)}
                if len(vals) != 1:
                    return f
                coarse[w] = vals.pop()
            f = f._new(f.depth - 1, coarse)
        return f

    def combine(self, other: "LCFunction", op: Callable[[Any, Any], Any]) -> "LCFunction":
        _same_shift(self.shift, other.shift)
        d = max(self.depth, other.depth)
        a, b = self.refine_to_depth(d), other.refine_to_depth(d)
        return self._new(d, {w: op(a.table[w], b.table[w]) for w in a.table})

    def map(self, fn: Callable[[Any], Any]) -> "LCFunction":
        return self._new(self.depth, {w: fn(v) for w, v in self.table.items()})

    def compose_shift(self) -> "LCFunction":
        """f o sigma_A: the word j·w gets the old value at w."""
        d = self.depth + 1
        return self._new(d, {u: self.table[u[1:]] for u in self.shift.words(d)})

    def values(self) -> set:
        return set(self.table.values())

    def __eq__(self, other):
        if not isinstance(other, LCFunction) or self.shift != other.shift:
            return NotImplemented
        d = max(self.depth, other.depth)
        return self.refine_to_depth(d).table == other.refine_to_depth(d).table

    __hash__ = None

    def __repr__(self):
        items = ", ".join(f"{format_word(w)}:{v}" for w, v in sorted(self.table.items()))
        return f"LCFunction(depth={self.depth}, {{{items}}})"

    def to_json(self, encode=lambda v: v) -> dict:
        return {
            "depth": self.depth,
            "values": {format_word(w): encode(v) for w, v in sorted(self.table.items())},
        }

    @classmethod
    def from_json(cls, shift: MarkovShift, data: Mapping, decode=lambda v: v) -> "LCFunction":
        table = {parse_word(k): decode(v) for k, v in data["values"].items()}
        return cls(shift, int(data["depth"]), table)


def characteristic(shift: MarkovShift, c: ClopenSet) -> LCFunction:
    return LCFunction(shift, c.depth, {w: int(w in c.words) for w in shift.words(c.depth)})


def eval_function(f: LCFunction, p: EPPoint):
    return f(p)
