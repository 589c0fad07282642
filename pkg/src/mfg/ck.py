"""Exact symbolic Cuntz-Krieger algebra.

An element is a finite linear combination of terms ``S_alpha S_beta^*`` with
coefficients in Q(zeta_M). Elements are kept in a graded normal form: for
each gauge degree ``m = |alpha| - |beta|`` every term has the same
``|beta|``, and such terms are linearly independent, so coefficients are
unique and equality is a dictionary comparison after aligning depths.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping

from .clopen import LCFunction
from .errors import (
    NonScalarObstruction,
    NotANormalizer,
    NotDiagonal,
    NotUnimodular,
    ShiftMismatch,
    ValueOutsidePhaseGroup,
)
from .full_group import PrefixExchangeTable, _is_partition
from .points import EPPoint
from .scalar import Scalar
from .shift import MarkovShift, Word, format_word, parse_word

Term = tuple[Word, Word]
DEFAULT_ORDER = 4


def _common_follow(shift: MarkovShift, a: Word, b: Word) -> list[int]:
    ra, rb = shift.row(a[-1] if a else None), shift.row(b[-1] if b else None)
    return [j for j in shift.symbols if ra[j - 1] and rb[j - 1]]


def _normalize(shift: MarkovShift, m: int, terms: Mapping[Term, Scalar]) -> dict[Term, Scalar]:
    depth: dict[int, int] = {}
    for (a, b), c in terms.items():
        if c:
            deg = len(a) - len(b)
            depth[deg] = max(depth.get(deg, 0), len(b))
    out: dict[Term, Scalar] = {}
    for (a, b), c in terms.items():
        if not c:
            continue
        stack = [(a, b)]
        target = depth[len(a) - len(b)]
        while stack:
            x, y = stack.pop()
            if len(y) == target:
                if _common_follow(shift, x, y):
                    key = (x, y)
                    prev = out.get(key)
                    out[key] = c if prev is None else prev + c
                continue
            for j in _common_follow(shift, x, y):
                stack.append((x + (j,), y + (j,)))
    return {k: v for k, v in out.items() if v}


class CKElement:
    """Element of the dense *-subalgebra of O_A, in normal form."""

    __slots__ = ("shift", "m", "terms")

    def __init__(self, shift: MarkovShift, terms: Mapping[Term, object] | None = None, m: int = DEFAULT_ORDER):
        raw = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            shift.check_word(a)
            shift.check_word(b)
            c = Scalar.of(m, c)
            raw[(a, b)] = raw[(a, b)] + c if (a, b) in raw else c
        self.shift = shift
        self.m = m
        self.terms = _normalize(shift, m, raw)

    @classmethod
    def _raw(cls, shift, m, terms, normalize=True) -> "CKElement":
        obj = cls.__new__(cls)
        obj.shift = shift
        obj.m = m
        obj.terms = _normalize(shift, m, terms) if normalize else dict(terms)
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, shift, m=DEFAULT_ORDER):
        return cls._raw(shift, m, {}, False)

    @classmethod
    def one(cls, shift, m=DEFAULT_ORDER):
        return cls._raw(shift, m, {((), ()): Scalar.of(m, 1)}, False)

    @classmethod
    def term(cls, shift, alpha, beta=(), coeff=1, m=DEFAULT_ORDER):
        """c · S_alpha S_beta^*."""
        return cls(shift, {(tuple(alpha), tuple(beta)): coeff}, m)

    @classmethod
    def projection(cls, shift, w, m=DEFAULT_ORDER):
        """chi_{U_w} = S_w S_w^*."""
        return cls.term(shift, w, w, 1, m)

    # -- arithmetic ------------------------------------------------------------
    def _check(self, other: "CKElement"):
        if self.shift != other.shift:
            raise ShiftMismatch("elements live over different shifts")
        if self.m != other.m:
            raise ShiftMismatch("elements use different scalar fields")

    def __add__(self, other):
        if not isinstance(other, CKElement):
            other = CKElement.one(self.shift, self.m) * other
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return CKElement._raw(self.shift, self.m, terms)

    __radd__ = __add__

    def __neg__(self):
        return CKElement._raw(self.shift, self.m, {k: -c for k, c in self.terms.items()}, False)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "CKElement":
        c = Scalar.of(self.m, c)
        if not c:
            return CKElement.zero(self.shift, self.m)
        return CKElement._raw(self.shift, self.m, {k: v * c for k, v in self.terms.items()}, False)

    def __mul__(self, other):
        if not isinstance(other, CKElement):
            return self.scale(other)
        self._check(other)
        shift = self.shift
        acc: dict[Term, Scalar] = {}

        def put(key, c):
            acc[key] = acc[key] + c if key in acc else c

        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                c = c1 * c2
                if len(a2) > len(b1):
                    if a2[: len(b1)] != b1:
                        continue
                    w = a2[len(b1):]
                    if a1 and not shift.allowed(a1[-1], w[0]):
                        continue
                    put((a1 + w, b2), c)
                elif len(b1) > len(a2):
                    if b1[: len(a2)] != a2:
                        continue
                    w = b1[len(a2):]
                    if b2 and not shift.allowed(b2[-1], w[0]):
                        continue
                    put((a1, b2 + w), c)
                else:
                    if a2 != b1:
                        continue
                    if not b1:
                        put((a1, b2), c)
                        continue
                    # S_a1 P_b S_b2^* with P_b the source projection of last(b1)
                    rb = shift.row(b1[-1])
                    keep = _common_follow(shift, a1, b2)
                    if all(rb[j - 1] for j in keep):
                        put((a1, b2), c)
                    else:
                        for j in keep:
                            if rb[j - 1]:
                                put((a1 + (j,), b2 + (j,)), c)
        return CKElement._raw(shift, self.m, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def adjoint(self) -> "CKElement":
        return CKElement._raw(
            self.shift, self.m, {(b, a): c.conj() for (a, b), c in self.terms.items()}, False
        )

    star = adjoint

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = CKElement.one(self.shift, self.m).scale(other)
        if not isinstance(other, CKElement):
            return NotImplemented
        return self.shift == other.shift and self.m == other.m and (self - other).is_zero()

    __hash__ = None

    def degrees(self) -> set[int]:
        return {len(a) - len(b) for a, b in self.terms}

    def max_lengths(self) -> tuple[int, int]:
        return (
            max((len(a) for a, _ in self.terms), default=0),
            max((len(b) for _, b in self.terms), default=0),
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            op = f"S[{format_word(a)}]S[{format_word(b)}]*"
            parts.append(op if c.is_one() else f"({c}){op}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "shift": self.shift.to_json(),
            "M": self.m,
            "terms": [
                {"alpha": format_word(a), "beta": format_word(b), "coeff": c.to_json()}
                for (a, b), c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, shift: MarkovShift, data: Mapping) -> "CKElement":
        m = int(data.get("M", DEFAULT_ORDER))
        terms: dict = {}
        for t in data.get("terms", []):
            key = (parse_word(t["alpha"]), parse_word(t["beta"]))
            c = Scalar.from_json(m, t.get("coeff", 1))
            terms[key] = terms[key] + c if key in terms else c
        return cls(shift, terms, m)


# -- module-level operations ---------------------------------------------------
def generator(shift: MarkovShift, i: int, m: int = DEFAULT_ORDER) -> CKElement:
    return CKElement.term(shift, (i,), (), 1, m)


def normal_form(e: CKElement) -> CKElement:
    return CKElement._raw(e.shift, e.m, e.terms)


def equals(a: CKElement, b: CKElement) -> bool:
    return a == b


def act_on_point(e: CKElement, p: EPPoint) -> dict[EPPoint, Scalar]:
    """The vector e·e_p in the point basis, as {point: coefficient}."""
    out: dict[EPPoint, Scalar] = {}
    shift = e.shift
    for (a, b), c in e.terms.items():
        if not p.starts_with(b):
            continue
        z = p.drop(len(b))
        if a and not shift.allowed(a[-1], z.first):
            continue
        q = z.prepend(a)
        out[q] = out[q] + c if q in out else c
    return {q: c for q, c in out.items() if c}


def gauge_component(e: CKElement, deg: int) -> CKElement:
    return CKElement._raw(
        e.shift, e.m, {(a, b): c for (a, b), c in e.terms.items() if len(a) - len(b) == deg}, False
    )


def conditional_expectation(e: CKElement) -> CKElement:
    return gauge_component(e, 0)


def strip_prefix(v: CKElement, n: int) -> dict[Word, CKElement]:
    """mu -> E(S_mu^* v) for every mu in B_n(X_A)."""
    out = {}
    for mu in v.shift.words(n):
        s_mu_star = CKElement.term(v.shift, (), mu, 1, v.m)
        out[mu] = conditional_expectation(s_mu_star * v)
    return out


def strip_suffix(v: CKElement, n: int) -> dict[Word, CKElement]:
    """mu -> E(v S_mu) for every mu in B_n(X_A)."""
    out = {}
    for mu in v.shift.words(n):
        s_mu = CKElement.term(v.shift, mu, (), 1, v.m)
        out[mu] = conditional_expectation(v * s_mu)
    return out


def unitary_from_table(tau: PrefixExchangeTable, m: int = DEFAULT_ORDER) -> CKElement:
    """u_tau = sum over entries of S_nu S_mu^*."""
    one = Scalar.of(m, 1)
    return CKElement._raw(tau.shift, m, {(nu, mu): one for mu, nu in tau.entries})


def is_in_F(e: CKElement) -> bool:
    return e.degrees() <= {0}


def is_diagonal(e: CKElement) -> bool:
    return all(a == b for a, b in e.terms)


def is_unitary(e: CKElement) -> bool:
    one = CKElement.one(e.shift, e.m)
    return e * e.adjoint() == one and e.adjoint() * e == one


def is_normalizer(e: CKElement) -> bool:
    """Unitary with e chi_{U_w} e^* diagonal for every w of depth D*."""
    if not is_unitary(e):
        return False
    la, lb = e.max_lengths()
    depth = la + lb
    for w in e.shift.words(depth):
        x = e * CKElement.projection(e.shift, w, e.m)
        if not is_diagonal(x * x.adjoint()):
            return False
    return True


# -- phase functions and the diagonal ----------------------------------------
class PhaseFunction(LCFunction):
    """Locally constant unimodular function: a unitary of the diagonal."""

    __slots__ = ("m",)

    def __init__(self, shift: MarkovShift, depth: int, table: Mapping[Word, object], m: int = DEFAULT_ORDER):
        table = {tuple(w): Scalar.of(m, v) for w, v in table.items()}
        for w, v in table.items():
            if not v.is_unimodular():
                raise NotUnimodular(f"value {v} on U_{format_word(w)} is not unimodular")
        super().__init__(shift, depth, table)
        self.m = m

    def _new(self, depth, table):
        obj = PhaseFunction.__new__(PhaseFunction)
        LCFunction.__init__(obj, self.shift, depth, table)
        obj.m = self.m
        return obj

    @classmethod
    def from_exponents(cls, shift, depth, exps: Mapping[Word, int], m: int = DEFAULT_ORDER) -> "PhaseFunction":
        return cls(shift, depth, {w: Scalar.root(m, e) for w, e in exps.items()}, m)

    @classmethod
    def constant(cls, shift, value=1, depth: int = 0, m: int = DEFAULT_ORDER) -> "PhaseFunction":
        return cls(shift, depth, {w: value for w in shift.words(depth)}, m)

    def exponents(self) -> dict[Word, int]:
        out = {}
        for w, v in self.table.items():
            e = v.root_exponent()
            if e is None:
                raise ValueOutsidePhaseGroup(f"value {v} is not a power of zeta_{self.m}")
            out[w] = e
        return out

    def __mul__(self, other: "PhaseFunction") -> "PhaseFunction":
        return self.combine(other, lambda a, b: a * b)

    def conj(self) -> "PhaseFunction":
        return self.map(lambda a: a.conj())

    def to_element(self) -> CKElement:
        return CKElement._raw(self.shift, self.m, {(w, w): v for w, v in self.table.items()})

    def to_json(self) -> dict:
        try:
            exps = self.exponents()
        except ValueOutsidePhaseGroup:
            return {
                "depth": self.depth,
                "order": self.m,
                "coords": {format_word(w): v.to_json() for w, v in sorted(self.table.items())},
            }
        return {
            "depth": self.depth,
            "order": self.m,
            "values": {format_word(w): e for w, e in sorted(exps.items())},
        }

    @classmethod
    def from_json(cls, shift: MarkovShift, data: Mapping) -> "PhaseFunction":
        m = int(data.get("order", data.get("M", DEFAULT_ORDER)))
        depth = int(data["depth"])
        if "coords" in data:
            table = {parse_word(k): Scalar.from_json(m, v) for k, v in data["coords"].items()}
            return cls(shift, depth, table, m)
        exps = {parse_word(k): int(v) for k, v in data["values"].items()}
        return cls.from_exponents(shift, depth, exps, m)


def diagonal_to_function(e: CKElement) -> LCFunction:
    if not is_diagonal(e):
        raise NotDiagonal("element has off-diagonal terms")
    depth = max((len(a) for a, _ in e.terms), default=0)
    zero = Scalar.of(e.m, 0)
    table = {w: zero for w in e.shift.words(depth)}
    for (a, _), c in e.terms.items():
        table[a] = c
    return LCFunction(e.shift, depth, table)


def function_to_diagonal(f: LCFunction, m: int = DEFAULT_ORDER) -> CKElement:
    return CKElement(f.shift, {(w, w): v for w, v in f.table.items()}, m)


def phase_of(e: CKElement) -> PhaseFunction:
    f = diagonal_to_function(e)
    return PhaseFunction(e.shift, f.depth, f.table, e.m)


def normalizer_decompose(v: CKElement) -> tuple[PhaseFunction, PrefixExchangeTable]:
    """Write a normalizer as v = d · u_tau."""
    if not is_unitary(v):
        raise NotANormalizer("element is not unitary")
    shift = v.shift
    pieces: list[tuple[Word, Word, Scalar]] = []
    stack = [(a, b, c) for (a, b), c in v.terms.items()]
    while stack:
        a, b, c = stack.pop()
        if a and b and shift.row(a[-1]) == shift.row(b[-1]):
            pieces.append((a, b, c))
            continue
        for j in _common_follow(shift, a, b):
            stack.append((a + (j,), b + (j,), c))
    domain = [b for _, b, _ in pieces]
    rng = [a for a, _, _ in pieces]
    prefixes = {w[:i] for w in domain for i in range(len(w))}
    if len(set(domain)) != len(domain) or set(domain) & prefixes:
        raise NonScalarObstruction("a basis point is sent to a sum of several points")
    rprefixes = {w[:i] for w in rng for i in range(len(w))}
    if len(set(rng)) != len(rng) or set(rng) & rprefixes:
        raise NonScalarObstruction("two basis points are sent onto one")
    if not _is_partition(shift, domain) or not _is_partition(shift, rng):
        raise NotANormalizer("terms do not define a bijection of X_A")
    for a, b, c in pieces:
        if not c.is_unimodular():
            raise NotANormalizer(f"coefficient {c} is not unimodular")
    tau = PrefixExchangeTable(shift, [(b, a) for a, b, _ in pieces])
    d = LCFunction.from_pieces(shift, {a: c for a, _, c in pieces})
    phase = PhaseFunction(shift, d.depth, d.table, v.m).canonical()
    return phase, tau


def phi_A(f: CKElement) -> CKElement:
    """sum_i S_i f S_i^*, i.e. f o sigma_A."""
    if not is_diagonal(f):
        raise NotDiagonal("phi_A is defined on the diagonal")
    out = CKElement.zero(f.shift, f.m)
    for i in f.shift.symbols:
        s = generator(f.shift, i, f.m)
        out = out + s * f * s.adjoint()
    return out


def cocycle_values(u1: PhaseFunction, k: int) -> PhaseFunction:
    """U(k) = U1 · phi(U1) ··· phi^{k-1}(U1); U(0) = 1."""
    out = PhaseFunction.constant(u1.shift, 1, 0, u1.m)
    cur = u1
    for _ in range(k):
        out = out * cur
        cur = cur.compose_shift()
    return out


def cocycle_automorphism(u1: PhaseFunction, e: CKElement) -> CKElement:
    """lambda(U): S_a S_b^* -> U(|a|) S_a S_b^* U(|b|)^*."""
    if not isinstance(u1, PhaseFunction):
        raise NotUnimodular("cocycle must be a phase function")
    if u1.shift != e.shift:
        raise ShiftMismatch("cocycle and element live over different shifts")
    cache: dict[int, CKElement] = {}

    def U(k):
        if k not in cache:
            cache[k] = cocycle_values(u1, k).to_element()
        return cache[k]

    out = CKElement.zero(e.shift, e.m)
    for (a, b), c in e.terms.items():
        t = CKElement._raw(e.shift, e.m, {(a, b): c}, False)
        out = out + U(len(a)) * t * U(len(b)).adjoint()
    return out


def solve_coboundary(u1: PhaseFunction, depth: int) -> PhaseFunction | None:
    """Find v at the given depth with U1(x) = v(x)·conj(v(sigma x)), or None.

    Exact at the given depth: vertices are B_d(X_A); each word u of length
    d+1 is an edge u[:d] -> u[1:] labelled U1(u); a solution exists iff
    every cycle has trivial label product, found by a spanning-forest pass.
    """
    shift, m = u1.shift, u1.m
    exps = u1.exponents()
    f = PhaseFunction.from_exponents(shift, u1.depth, exps, m).canonical()
    if f.depth > depth + 1:
        return None
    f = f.refine_to_depth(depth + 1)
    label = {u: v.root_exponent() for u, v in f.table.items()}
    adj: dict[Word, list[tuple[Word, int]]] = defaultdict(list)
    for u in shift.words(depth + 1):
        src, dst, e = u[:depth], u[1:], label[u]
        # v(src) = U1(u) · v(dst)
        adj[src].append((dst, e))
        adj[dst].append((src, -e))
    pot: dict[Word, int] = {}
    for root in shift.words(depth):
        if root in pot:
            continue
        pot[root] = 0
        queue = [root]
        while queue:
            x = queue.pop()
            for y, e in adj[x]:
                want = (pot[x] - e) % m
                if y not in pot:
                    pot[y] = want
                    queue.append(y)
                elif pot[y] != want:
                    return None
    return PhaseFunction.from_exponents(shift, depth, pot, m)


def coboundary_of(v: PhaseFunction) -> PhaseFunction:
    """U1 = v · phi_A(v^*)."""
    return v * v.conj().compose_shift()
