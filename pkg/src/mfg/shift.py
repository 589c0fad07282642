"""One-sided topological Markov shifts given by 0-1 matrices.

Symbols are the integers ``1..n``; a word is a plain tuple of symbols and
the empty tuple is the empty word.
"""
from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import (
    NonBinaryEntry,
    NonSquare,
    ParseError,
    WordNotAdmissible,
    ZeroRowOrColumn,
)

Word = tuple[int, ...]
EMPTY: Word = ()


class MarkovShift:
    """Validated essential 0-1 matrix together with its word machinery."""

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n < 2 or any(len(r) != n for r in rows):
            raise NonSquare(f"expected a square matrix of size >= 2, got {n} rows")
        for r in rows:
            for v in r:
                if v not in (0, 1):
                    raise NonBinaryEntry(f"entry {v!r} is not 0 or 1")
        for i in range(n):
            if not any(rows[i]):
                raise ZeroRowOrColumn(f"row {i + 1} is zero")
            if not any(rows[j][i] for j in range(n)):
                raise ZeroRowOrColumn(f"column {i + 1} is zero")
        self.n = n
        self.rows: tuple[tuple[int, ...], ...] = tuple(tuple(int(v) for v in r) for r in rows)
        self._succ = tuple(
            tuple(j + 1 for j in range(n) if self.rows[i][j]) for i in range(n)
        )

    # -- basic structure -------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, MarkovShift) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"MarkovShift({[list(r) for r in self.rows]})"

    @property
    def symbols(self) -> range:
        return range(1, self.n + 1)

    def allowed(self, a: int, b: int) -> bool:
        return self.rows[a - 1][b - 1] == 1

    def successors(self, a: int | None) -> tuple[int, ...]:
        """Symbols that may follow ``a``; every symbol when ``a`` is None."""
        if a is None:
            return tuple(self.symbols)
        return self._succ[a - 1]

    def row(self, a: int | None) -> tuple[int, ...]:
        if a is None:
            return (1,) * self.n
        return self.rows[a - 1]

    def follow_set(self, w: Word) -> tuple[int, ...]:
        return self.successors(w[-1] if w else None)

    def transpose(self) -> "MarkovShift":
        return MarkovShift([[self.rows[j][i] for j in range(self.n)] for i in range(self.n)])

    # -- words -------------------------------------------------------------
    def is_admissible(self, w: Sequence[int]) -> bool:
        if any(not (1 <= s <= self.n) for s in w):
            return False
        return all(self.rows[a - 1][b - 1] for a, b in zip(w, w[1:]))

    def check_word(self, w: Sequence[int]) -> Word:
        w = tuple(w)
        if not self.is_admissible(w):
            raise WordNotAdmissible(f"word {format_word(w)} is not admissible")
        return w

    def words(self, k: int) -> tuple[Word, ...]:
        """B_k(X_A) in lexicographic order."""
        return _words(self, k)

    def extensions(self, w: Word, depth: int) -> tuple[Word, ...]:
        """All admissible words of length ``depth`` having ``w`` as prefix."""
        if len(w) >= depth:
            return (w[:depth],)
        out = [w]
        for _ in range(depth - len(w)):
            out = [u + (j,) for u in out for j in self.follow_set(u)]
        return tuple(out)

    # -- condition (I) -------------------------------------------------------
    @cached_property
    def condition_I(self) -> bool:
        """True iff X_A has no isolated point.

        A point is isolated exactly when, from some symbol on, its path is
        forced: every symbol reachable from there has a single successor.
        """
        for i in self.symbols:
            seen = {i}
            stack = [i]
            forced = True
            while stack:
                a = stack.pop()
                succ = self.successors(a)
                if len(succ) != 1:
                    forced = False
                    break
                for b in succ:
                    if b not in seen:
                        seen.add(b)
                        stack.append(b)
            if forced:
                return False
        return True

    @cached_property
    def transpose_condition_I(self) -> bool:
        return self.transpose().condition_I

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [list(r) for r in self.rows]}


@lru_cache(maxsize=None)
def _words(shift: MarkovShift, k: int) -> tuple[Word, ...]:
    if k < 0:
        raise ValueError("word length must be non-negative")
    if k == 0:
        return (EMPTY,)
    prev = _words(shift, k - 1)
    return tuple(w + (j,) for w in prev for j in shift.follow_set(w))


def validate_matrix(rows: Sequence[Sequence[int]]) -> MarkovShift:
    return MarkovShift(rows)


def satisfies_condition_I(shift: MarkovShift) -> bool:
    return shift.condition_I


def admissible_words(shift: MarkovShift, k: int) -> tuple[Word, ...]:
    return shift.words(k)


def full_shift(n: int = 2) -> MarkovShift:
    return MarkovShift([[1] * n for _ in range(n)])


def golden_mean() -> MarkovShift:
    return MarkovShift([[1, 1], [1, 0]])


NAMED_SHIFTS = {
    "A2": lambda: full_shift(2),
    "full2": lambda: full_shift(2),
    "F": golden_mean,
    "golden": golden_mean,
}


# -- word syntax -------------------------------------------------------------
def parse_word(text: str) -> Word:
    """Parse ``"211"`` or, for alphabets past 9, ``"10,2,3"``."""
    text = text.strip()
    if text in ("", "e", "ε"):
        return EMPTY
    try:
        if "," in text:
            return tuple(int(t) for t in text.split(",") if t.strip())
        return tuple(int(c) for c in text)
    except ValueError:
        raise ParseError(f"cannot parse word {text!r}") from None


def format_word(w: Iterable[int]) -> str:
    w = tuple(w)
    if any(s > 9 for s in w):
        return ",".join(map(str, w))
    return "".join(map(str, w))
