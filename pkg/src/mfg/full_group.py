"""Prefix-exchange tables: the elements of the topological full group.

A table is a finite list of word pairs ``(mu, nu)``; it sends ``mu·z`` to
``nu·z``. The domain cylinders U_mu and the range cylinders U_nu each
partition X_A, and the last symbols of ``mu`` and ``nu`` have equal rows so
the suffix map is a bijection U_mu -> U_nu.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .clopen import LCFunction
from .errors import (
    ConditionIFailure,
    DomainNotPartition,
    EmptyWordEntry,
    Inadmissible,
    NotAPermutation,
    RangeNotPartition,
    ShiftMismatch,
    SuffixMapNotIntoShift,
    WordNotAdmissible,
)
from .points import EPPoint
from .shift import MarkovShift, Word, format_word, parse_word

Entry = tuple[Word, Word]


def _is_partition(shift: MarkovShift, words: Iterable[Word]) -> bool:
    """True iff the cylinders U_w are pairwise disjoint and cover X_A."""
    ws = set(words)
    if not ws:
        return False
    prefixes = set()
    for w in ws:
        for i in range(len(w)):
            prefixes.add(w[:i])
    if ws & prefixes:
        return False  # some word is a proper prefix of another
    maxlen = max(len(w) for w in ws)

    def covered(u: Word) -> bool:
        if u in ws:
            return True
        if len(u) >= maxlen or u not in prefixes:
            return False
        return all(covered(u + (j,)) for j in shift.follow_set(u))

    return covered(())


def _merge(shift: MarkovShift, table: dict[Word, Word]) -> dict[Word, Word]:
    """Coarsen sibling entries that act as one prefix exchange on their parent."""
    table = dict(table)
    changed = True
    while changed:
        changed = False
        parents: dict[Word, list[Word]] = {}
        for mu in table:
            if len(mu) >= 2:
                parents.setdefault(mu[:-1], []).append(mu)
        for p in sorted(parents, key=len, reverse=True):
            kids = parents[p]
            if any(k not in table for k in kids):
                continue
            follow = shift.follow_set(p)
            if len(kids) != len(follow):
                continue
            stem = None
            for k in kids:
                nu = table[k]
                if len(nu) < 2 or nu[-1] != k[-1]:
                    break
                if stem is None:
                    stem = nu[:-1]
                elif nu[:-1] != stem:
                    break
            else:
                if shift.row(stem[-1]) != shift.row(p[-1]):
                    continue
                for k in kids:
                    del table[k]
                table[p] = stem
                changed = True
    return table


class PrefixExchangeTable:
    """Validated, canonical prefix-exchange table over a fixed shift."""

    __slots__ = ("shift", "entries", "_map", "_lengths", "_hash")

    def __init__(self, shift: MarkovShift, entries: Iterable[tuple[Sequence[int], Sequence[int]]]):
        table = _validated(shift, entries)
        self._set(shift, _merge(shift, table))

    @classmethod
    def _trusted(cls, shift: MarkovShift, table: Mapping[Word, Word], merge: bool = True):
        obj = cls.__new__(cls)
        obj._set(shift, _merge(shift, table) if merge else dict(table))
        return obj

    def _set(self, shift, table):
        self.shift = shift
        self.entries: tuple[Entry, ...] = tuple(sorted(table.items(), key=lambda e: (len(e[0]), e[0])))
        self._map = dict(table)
        self._lengths = tuple(sorted({len(m) for m in table}))
        self._hash = hash((shift, frozenset(table.items())))

    @classmethod
    def identity(cls, shift: MarkovShift) -> "PrefixExchangeTable":
        return cls._trusted(shift, {(j,): (j,) for j in shift.symbols}, merge=False)

    # -- value semantics -----------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, PrefixExchangeTable)
            and self._hash == other._hash
            and self.shift == other.shift
            and self._map == other._map
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(f"({format_word(a)},{format_word(b)})" for a, b in self.entries)
        return f"PrefixExchangeTable({{{body}}})"

    def __mul__(self, other: "PrefixExchangeTable") -> "PrefixExchangeTable":
        return compose(self, other)

    def __call__(self, p: EPPoint) -> EPPoint:
        return apply(self, p)

    @property
    def depth(self) -> int:
        return self._lengths[-1]

    def is_identity(self) -> bool:
        return all(m == n for m, n in self.entries)

    def refined(self, depth: int) -> dict[Word, Word]:
        """Entries refined so every domain word has length ``depth``."""
        out = {}
        for mu, nu in self.entries:
            for u in self.shift.extensions(mu, max(depth, len(mu))):
                out[u] = nu + u[len(mu):]
        return out

    def to_json(self) -> dict:
        return {
            "shift": self.shift.to_json(),
            "entries": [[format_word(a), format_word(b)] for a, b in self.entries],
        }


def _validated(shift: MarkovShift, entries) -> dict[Word, Word]:
    raw = [(tuple(a), tuple(b)) for a, b in entries]
    if not raw:
        raise EmptyWordEntry("a table needs at least one entry")
    table: dict[Word, Word] = {}
    for mu, nu in raw:
        if not mu or not nu:
            raise EmptyWordEntry("entry words must be nonempty")
        for w in (mu, nu):
            if not shift.is_admissible(w):
                raise WordNotAdmissible(f"word {format_word(w)} is not admissible")
        rmu, rnu = shift.row(mu[-1]), shift.row(nu[-1])
        if any(a > b for a, b in zip(rmu, rnu)):
            raise SuffixMapNotIntoShift(
                f"row of {mu[-1]} is not contained in row of {nu[-1]} "
                f"(entry {format_word(mu)} -> {format_word(nu)})"
            )
        pieces = [(mu, nu)] if rmu == rnu else [(mu + (j,), nu + (j,)) for j in shift.successors(mu[-1])]
        for m, n in pieces:
            if m in table:
                raise DomainNotPartition(f"domain word {format_word(m)} repeated")
            table[m] = n
    if not _is_partition(shift, table.keys()):
        raise DomainNotPartition("domain cylinders do not partition X_A")
    if len(set(table.values())) != len(table) or not _is_partition(shift, table.values()):
        raise RangeNotPartition("range cylinders do not partition X_A")
    return table


def validate_table(shift: MarkovShift, entries) -> PrefixExchangeTable:
    return PrefixExchangeTable(shift, entries)


def parse_entries(pairs: Iterable[Sequence[str]]) -> list[Entry]:
    return [(parse_word(a), parse_word(b)) for a, b in pairs]


def apply(tau: PrefixExchangeTable, p: EPPoint) -> EPPoint:
    head = p.prefix(tau._lengths[-1])
    for k in tau._lengths:
        nu = tau._map.get(head[:k])
        if nu is not None:
            return p.drop(k).prepend(nu)
    raise AssertionError(f"table does not cover {p}")  # excluded by validation


def compose(t1: PrefixExchangeTable, t2: PrefixExchangeTable) -> PrefixExchangeTable:
    """The table of ``t1 o t2`` (apply t2 first)."""
    if t1.shift != t2.shift:
        raise ShiftMismatch("cannot compose tables over different shifts")
    shift = t1.shift
    out: dict[Word, Word] = {}
    for mu, nu in t2.entries:
        for mu1, nu1 in t1.entries:
            if mu1[: len(nu)] == nu:
                w = mu1[len(nu):]
                if shift.is_admissible(mu + w):
                    out[mu + w] = nu1
            elif nu[: len(mu1)] == mu1:
                w = nu[len(mu1):]
                if shift.is_admissible(nu1 + w):
                    out[mu] = nu1 + w
    return PrefixExchangeTable._trusted(shift, out)


def invert(tau: PrefixExchangeTable) -> PrefixExchangeTable:
    return PrefixExchangeTable._trusted(tau.shift, {nu: mu for mu, nu in tau.entries})


def is_af(tau: PrefixExchangeTable) -> bool:
    """Length-preserving prefix exchange (membership in the AF-full group)."""
    return all(len(m) == len(n) for m, n in tau.entries)


@dataclass(frozen=True)
class CocyclePair:
    k: LCFunction
    l: LCFunction


def cocycles(tau: PrefixExchangeTable) -> CocyclePair:
    k = LCFunction.from_pieces(tau.shift, {m: len(n) for m, n in tau.entries})
    l = LCFunction.from_pieces(tau.shift, {m: len(m) for m, n in tau.entries})
    return CocyclePair(k, l)


def cocycle_counterexamples(tau: PrefixExchangeTable, k, l, points) -> list[EPPoint]:
    """Points where sigma^k(x)(tau x) != sigma^l(x)(x); ``k``/``l`` are callables."""
    bad = []
    for x in points:
        if apply(tau, x).drop(k(x)) != x.drop(l(x)):
            bad.append(x)
    return bad


# -- generator constructions -----------------------------------------------
def identity_complement(shift: MarkovShift, taken: Iterable[Word]) -> dict[Word, Word]:
    """Identity entries on the complement of the given cylinders."""
    taken = list(taken)
    depth = max(len(w) for w in taken)
    out = {}
    for u in shift.words(depth):
        if not any(u[: len(w)] == w for w in taken):
            out[u] = u
    return out


def lemma32_generator(shift: MarkovShift, mu: Sequence[int]) -> PrefixExchangeTable:
    """An element acting as the shift on U_mu, for mu of length two."""
    mu = tuple(mu)
    if len(mu) != 2 or not shift.is_admissible(mu):
        raise WordNotAdmissible(f"{format_word(mu)} is not in B_2(X_A)")
    if not shift.condition_I:
        raise ConditionIFailure("A does not satisfy condition (I)")
    if not shift.transpose_condition_I:
        raise ConditionIFailure("the transpose of A does not satisfy condition (I)")
    a, b = mu
    if a == b:
        b1 = next((c for c in shift.symbols if c != a and shift.allowed(c, a)), None)
        others = [c for c in shift.successors(a) if c != a]
        if b1 is None or not others:
            raise ConditionIFailure(f"no symbols available around {a}")
        entries = {(a, a): (a,), (b1, a): (b1, a, a)}
        for c in others:
            entries[(a, c)] = (b1, a, c)
    else:
        entries = {(a, b): (b,), (b,): (a, b)}
    entries.update(identity_complement(shift, entries.keys()))
    return PrefixExchangeTable(shift, entries.items())


def lemma33_mover(shift: MarkovShift, x: EPPoint, j: int) -> PrefixExchangeTable:
    """An element sending x to j·x."""
    x.check(shift)
    if not shift.allowed(j, x.first):
        raise Inadmissible(f"symbol {j} cannot precede {x}")
    if x.pre == () and x.per == (j,):
        return PrefixExchangeTable.identity(shift)
    k = 1
    while x.symbol(k - 1) == j:
        k += 1
    mu = x.prefix(k)
    nu = (j,) + mu
    entries = {mu: nu, nu: mu}
    entries.update(identity_complement(shift, entries.keys()))
    return PrefixExchangeTable(shift, entries.items())


def permutation_element(
    shift: MarkovShift, p: int, s: Mapping[int, Mapping[Word, Word]]
) -> PrefixExchangeTable:
    """tau_s(mu·i·z) = s_i(mu)·i·z with each s_i a permutation of W_p(i)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    entries = {}
    for i in shift.symbols:
        wp = [w for w in shift.words(p) if shift.allowed(w[-1], i)]
        perm = {tuple(a): tuple(b) for a, b in (s.get(i) or {}).items()}
        full = {w: perm.get(w, w) for w in wp}
        if set(perm) - set(wp) or sorted(full.values()) != sorted(wp):
            raise NotAPermutation(f"s_{i} is not a permutation of W_{p}({i})")
        for w in wp:
            entries[w + (i,)] = full[w] + (i,)
    return PrefixExchangeTable(shift, entries.items())


def orbit_within(
    shift: MarkovShift, x: EPPoint, k: int, l: int, mu: Sequence[int]
) -> tuple[EPPoint, PrefixExchangeTable]:
    """y = mu·sigma^l(x) with an explicit full-group element sending x to y."""
    mu = tuple(mu)
    if len(mu) != k or not shift.is_admissible(mu):
        raise Inadmissible(f"{format_word(mu)} is not in B_{k}")
    x.check(shift)
    target = x.drop(l)
    if mu and not shift.allowed(mu[-1], target.first):
        raise Inadmissible(f"{format_word(mu)}·sigma^{l}(x) is not admissible")
    tau = PrefixExchangeTable.identity(shift)
    cur = x
    for _ in range(l):
        step = lemma32_generator(shift, cur.prefix(2))
        tau = compose(step, tau)
        cur = apply(step, cur)
    for j in reversed(mu):
        step = lemma33_mover(shift, cur, j)
        tau = compose(step, tau)
        cur = apply(step, cur)
    y = target.prepend(mu)
    assert cur == y and apply(tau, x) == y
    return y, tau


# -- random elements -------------------------------------------------------
def random_partition(shift: MarkovShift, rng: random.Random, max_depth: int = 4, splits: int = 4) -> list[Word]:
    part = [(j,) for j in shift.symbols]
    for _ in range(rng.randint(0, splits)):
        cand = [w for w in part if len(w) < max_depth]
        if not cand:
            break
        w = rng.choice(cand)
        part.remove(w)
        part.extend(w + (j,) for j in shift.follow_set(w))
    return part


def random_af_table(shift: MarkovShift, rng: random.Random, max_depth: int = 4) -> PrefixExchangeTable:
    """Permute same-length cylinders with equal last-symbol rows."""
    part = random_partition(shift, rng, max_depth)
    groups: dict = {}
    for w in part:
        groups.setdefault((len(w), shift.row(w[-1])), []).append(w)
    entries = {}
    for ws in groups.values():
        img = ws[:]
        rng.shuffle(img)
        entries.update(zip(ws, img))
    return PrefixExchangeTable(shift, entries.items())


def random_exchange_table(shift: MarkovShift, rng: random.Random, max_depth: int = 4) -> PrefixExchangeTable:
    """Permute cylinders of a random partition among those with equal rows."""
    part = random_partition(shift, rng, max_depth)
    groups: dict = {}
    for w in part:
        groups.setdefault(shift.row(w[-1]), []).append(w)
    entries = {}
    for ws in groups.values():
        img = ws[:]
        rng.shuffle(img)
        entries.update(zip(ws, img))
    return PrefixExchangeTable(shift, entries.items())


def random_table(shift: MarkovShift, rng: random.Random, max_depth: int = 4) -> PrefixExchangeTable:
    """A random exchange, possibly composed with a shift-like generator."""
    tau = random_exchange_table(shift, rng, max_depth)
    if shift.condition_I and shift.transpose_condition_I and rng.random() < 0.6:
        g = lemma32_generator(shift, rng.choice(shift.words(2)))
        if rng.random() < 0.5:
            g = invert(g)
        tau = compose(g, tau) if rng.random() < 0.5 else compose(tau, g)
    return tau
