"""Homeomorphisms between shift spaces given as rewrite programs.

A program is a list of clauses. Consecutive substitution clauses form one
greedy left-to-right pass (first matching pattern wins, unmatched symbols
are copied); an exchange clause rewrites a prefix once, like a
prefix-exchange table whose two sides may live on different shifts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .ck import CKElement, diagonal_to_function, function_to_diagonal, is_diagonal
from .clopen import LCFunction
from .errors import (
    DepthExhausted,
    InputError,
    MFGError,
    NotDiagonal,
    ParseError,
    PatternStraddlesUnstably,
    ShiftMismatch,
    ValidationMismatch,
)
from .full_group import PrefixExchangeTable, apply
from .points import EPPoint, sweep
from .shift import MarkovShift, Word, format_word, golden_mean, full_shift, parse_word

DEFAULT_BOUNDS = (6, 4)
DEFAULT_DEPTH = 8


@dataclass(frozen=True)
class Substitution:
    pattern: Word
    replacement: Word

    def to_json(self):
        return {"sub": [format_word(self.pattern), format_word(self.replacement)]}


@dataclass(frozen=True)
class Exchange:
    entries: tuple[tuple[Word, Word], ...]

    def to_json(self):
        return {"exchange": [[format_word(a), format_word(b)] for a, b in self.entries]}


Clause = Substitution | Exchange


def _greedy_pass(p: EPPoint, rules: Sequence[Substitution]) -> EPPoint:
    width = max(len(r.pattern) for r in rules)
    npre, nper = len(p.pre), len(p.per)
    out: list[int] = []
    seen: dict[int, int] = {}
    pos = 0
    while True:
        if pos >= npre:
            phase = (pos - npre) % nper
            if phase in seen:
                start = seen[phase]
                if start == len(out):
                    raise PatternStraddlesUnstably(f"rewrite of {p} has an empty period")
                return EPPoint(tuple(out[:start]), tuple(out[start:]))
            seen[phase] = len(out)
        window = tuple(p.symbol(i) for i in range(pos, pos + width))
        for r in rules:
            if window[: len(r.pattern)] == r.pattern:
                out.extend(r.replacement)
                pos += len(r.pattern)
                break
        else:
            out.append(window[0])
            pos += 1


def _exchange(p: EPPoint, clause: Exchange) -> EPPoint:
    for mu, nu in clause.entries:
        if p.starts_with(mu):
            return p.drop(len(mu)).prepend(nu)
    raise ValidationMismatch(f"exchange clause does not cover {p}")


def run_program(program: Sequence[Clause], p: EPPoint) -> EPPoint:
    i = 0
    while i < len(program):
        clause = program[i]
        if isinstance(clause, Exchange):
            p = _exchange(p, clause)
            i += 1
            continue
        j = i
        while j < len(program) and isinstance(program[j], Substitution):
            j += 1
        p = _greedy_pass(p, program[i:j])
        i = j
    return p


@dataclass(frozen=True)
class TailMap:
    source: MarkovShift
    target: MarkovShift
    forward: tuple[Clause, ...]
    backward: tuple[Clause, ...]

    def __call__(self, p: EPPoint) -> EPPoint:
        return run_program(self.forward, p)

    def inverse(self) -> "TailMap":
        return TailMap(self.target, self.source, self.backward, self.forward)

    @classmethod
    def identity(cls, shift: MarkovShift) -> "TailMap":
        return cls(shift, shift, (), ())

    @classmethod
    def from_table(cls, tau: PrefixExchangeTable) -> "TailMap":
        fwd = Exchange(tau.entries)
        bwd = Exchange(tuple((b, a) for a, b in tau.entries))
        return cls(tau.shift, tau.shift, (fwd,), (bwd,))

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "forward": [c.to_json() for c in self.forward],
            "inverse": [c.to_json() for c in self.backward],
        }


def parse_program(items: Iterable[Mapping]) -> tuple[Clause, ...]:
    out: list[Clause] = []
    for item in items:
        if "sub" in item:
            pat, rep = item["sub"]
            pat = parse_word(pat)
            if not pat:
                raise ParseError("substitution patterns must be nonempty")
            out.append(Substitution(pat, parse_word(rep)))
        elif "exchange" in item:
            out.append(Exchange(tuple((parse_word(a), parse_word(b)) for a, b in item["exchange"])))
        else:
            raise ParseError(f"unknown clause {item!r}")
    return tuple(out)


def apply_tail_map(h: TailMap, p: EPPoint) -> EPPoint:
    return h(p)


def round_trip_failures(h: TailMap, bounds=DEFAULT_BOUNDS) -> list[dict]:
    """Points where the inverse program fails to undo the forward one."""
    bad = []
    for a, b in ((h, h.inverse()), (h.inverse(), h)):
        for p in sweep(a.source, *bounds):
            q = a(p)
            if not q.is_admissible(a.target) or b(q) != p:
                bad.append({"point": str(p), "image": str(q), "identity": "round-trip"})
    return bad


@dataclass
class OrbitCocycleData:
    k1: LCFunction
    l1: LCFunction
    k2: LCFunction
    l2: LCFunction

    def to_json(self) -> dict:
        return {name: getattr(self, name).to_json() for name in ("k1", "l1", "k2", "l2")}

    @classmethod
    def from_json(cls, source: MarkovShift, target: MarkovShift, data: Mapping) -> "OrbitCocycleData":
        return cls(
            LCFunction.from_json(source, data["k1"], int),
            LCFunction.from_json(source, data["l1"], int),
            LCFunction.from_json(target, data["k2"], int),
            LCFunction.from_json(target, data["l2"], int),
        )


def golden_mean_example() -> tuple[TailMap, OrbitCocycleData]:
    """X_F -> X_{A_[2]}: every block 21 becomes 2, read from the left."""
    F, A2 = golden_mean(), full_shift(2)
    h = TailMap(F, A2, (Substitution((2, 1), (2,)),), (Substitution((2,), (2, 1)),))
    data = OrbitCocycleData(
        k1=LCFunction(F, 1, {(1,): 0, (2,): 1}),
        l1=LCFunction(F, 1, {(1,): 1, (2,): 1}),
        k2=LCFunction(A2, 1, {(1,): 0, (2,): 0}),
        l2=LCFunction(A2, 1, {(1,): 1, (2,): 2}),
    )
    return h, data


def _power_cocycle(k: LCFunction, x: EPPoint, n: int) -> int:
    return sum(k(x.drop(i)) for i in range(n))


def verify_orbit_cocycles(h: TailMap, data: OrbitCocycleData, bounds=DEFAULT_BOUNDS, powers: int = 3) -> list[dict]:
    """Counterexamples to the orbit-cocycle identities and their n-step sums.

    An empty list means every check passed on the sweep.
    """
    report = []
    for g, k, l, tag in ((h, data.k1, data.l1, "forward"), (h.inverse(), data.k2, data.l2, "inverse")):
        if k.shift != g.source or l.shift != g.source:
            raise ShiftMismatch(f"{tag} cocycles do not live on the map's source")
        for x in sweep(g.source, *bounds):
            gx = g(x)
            for n in range(1, powers + 1):
                lhs = g(x.drop(n)).drop(_power_cocycle(k, x, n))
                rhs = gx.drop(_power_cocycle(l, x, n))
                if lhs != rhs:
                    report.append({"point": str(x), "lhs": str(lhs), "rhs": str(rhs), "identity": f"{tag} n={n}"})
    return report


def is_uniform_orbit_equivalence(h: TailMap, k1: int, k2: int, bounds=DEFAULT_BOUNDS) -> list[dict]:
    """Counterexamples to sigma^k(h(sigma x)) = sigma^(k+1)(h x) and the mirror identity."""
    report = []
    for g, k, tag in ((h, k1, "forward"), (h.inverse(), k2, "inverse")):
        for x in sweep(g.source, *bounds):
            lhs = g(x.shift()).drop(k)
            rhs = g(x).drop(k + 1)
            if lhs != rhs:
                report.append({"point": str(x), "lhs": str(lhs), "rhs": str(rhs), "identity": f"uniform {tag} k={k}"})
    return report


def _representatives(shift: MarkovShift, w: Word) -> list[EPPoint]:
    tails = sweep(shift, 2, 3)
    return [z.prepend(w) for z in tails if not w or shift.allowed(w[-1], z.first)]


def _probe_prefix(g: Callable[[EPPoint], EPPoint], shift: MarkovShift, w: Word, max_len: int) -> Word | None:
    """Common nonempty nu with g(w·z) = nu·z for every probed tail z."""
    common: set[Word] | None = None
    for z in sweep(shift, 2, 3):
        if not shift.allowed(w[-1], z.first):
            continue
        gy = g(z.prepend(w))
        cands = {gy.prefix(n) for n in range(1, max_len + 1) if gy.drop(n) == z}
        common = cands if common is None else common & cands
        if not common:
            return None
    if not common:
        return None
    return min(common, key=lambda u: (len(u), u))


def conjugate_table(
    h: TailMap, tau: PrefixExchangeTable, depth: int = DEFAULT_DEPTH, bounds=DEFAULT_BOUNDS
) -> PrefixExchangeTable:
    """Infer and certify the table of h o tau o h^{-1} on the target shift."""
    if tau.shift != h.source:
        raise ShiftMismatch("table does not live on the map's source")
    target = h.target
    hinv = h.inverse()

    def g(y: EPPoint) -> EPPoint:
        return h(apply(tau, hinv(y)))

    entries: dict[Word, Word] = {}
    pending = [(j,) for j in target.symbols]
    while pending:
        w = pending.pop()
        nu = _probe_prefix(g, target, w, len(w) + depth + 4)
        if nu is not None and all(a <= b for a, b in zip(target.row(w[-1]), target.row(nu[-1]))):
            entries[w] = nu
        elif len(w) >= depth:
            raise DepthExhausted(f"no prefix exchange found on U_{format_word(w)} within depth {depth}")
        else:
            pending.extend(w + (j,) for j in target.follow_set(w))
    try:
        table = PrefixExchangeTable(target, entries.items())
    except InputError as exc:
        raise ValidationMismatch(f"inferred entries do not form a table: {exc}") from exc
    for y in sweep(target, *bounds):
        if apply(table, y) != g(y):
            raise ValidationMismatch(f"inferred table disagrees with the conjugate at {y}")
    return table


def transport_diagonal(
    h: TailMap, f: CKElement, depth: int = DEFAULT_DEPTH, bounds=DEFAULT_BOUNDS
) -> CKElement:
    """f o h^{-1} as a certified diagonal element over the target."""
    if not is_diagonal(f):
        raise NotDiagonal("only diagonal elements can be transported")
    if f.shift != h.source:
        raise ShiftMismatch("element does not live on the map's source")
    fn = diagonal_to_function(f)
    hinv = h.inverse()
    target = h.target
    pts = sweep(target, *bounds)
    for d in range(depth + 1):
        table = {}
        for w in target.words(d):
            vals = {fn(hinv(y)) for y in _representatives(target, w)}
            if len(vals) != 1:
                break
            table[w] = vals.pop()
        else:
            cand = LCFunction(target, d, table)
            if all(cand(y) == fn(hinv(y)) for y in pts):
                return function_to_diagonal(cand.canonical(), f.m)
    raise DepthExhausted(f"f o h^-1 is not locally constant up to depth {depth}")
