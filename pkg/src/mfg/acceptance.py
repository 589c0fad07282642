"""Bounded-depth acceptance suite.

Each criterion is a function ``(bounds, depth) -> (passed, detail)``; all
checks are exact equalities over exhaustive sweeps of eventually periodic
points. ``run_all`` prints one line per criterion.
"""
from __future__ import annotations

import itertools
import random
import time
from typing import Callable

from . import ck
from .ck import CKElement, PhaseFunction
from .clopen import LCFunction
from .full_group import (
    PrefixExchangeTable,
    apply,
    cocycles,
    compose,
    invert,
    is_af,
    lemma32_generator,
    lemma33_mover,
    permutation_element,
    random_af_table,
    random_table,
)
from .orbit_equiv import (
    TailMap,
    conjugate_table,
    golden_mean_example,
    is_uniform_orbit_equivalence,
    round_trip_failures,
    verify_orbit_cocycles,
)
from .points import EPPoint, sweep
from .shift import MarkovShift, full_shift, golden_mean

SEED = 20080101
Result = tuple[bool, str]


def example_i_table() -> PrefixExchangeTable:
    """The involution of X_F swapping the prefixes 111 and 211."""
    F = golden_mean()
    entries = [((1, 1, 1), (2, 1, 1)), ((2, 1, 1), (1, 1, 1))]
    entries += [(w, w) for w in F.words(3) if w not in ((1, 1, 1), (2, 1, 1))]
    return PrefixExchangeTable(F, entries)


def random_condition_I_matrices(count: int, rng: random.Random, max_n: int = 4) -> list[MarkovShift]:
    out = []
    while len(out) < count:
        n = rng.randint(2, max_n)
        rows = [[int(rng.random() < 0.55) for _ in range(n)] for _ in range(n)]
        try:
            s = MarkovShift(rows)
        except Exception:
            continue
        if s.condition_I and s.transpose_condition_I and s not in out:
            out.append(s)
    return out


def random_phase(shift: MarkovShift, rng: random.Random, m: int = 4, max_depth: int = 2) -> PhaseFunction:
    d = rng.randint(0, max_depth)
    return PhaseFunction.from_exponents(shift, d, {w: rng.randrange(m) for w in shift.words(d)}, m).canonical()


def handwritten_shift_cocycles(shift: MarkovShift, mu) -> tuple[LCFunction, LCFunction]:
    """The cocycle tables written down alongside the two-letter generators."""
    a, b = mu
    k, l = {}, {}
    if a == b:
        b1 = next(c for c in shift.symbols if c != a and shift.allowed(c, a))
        k[(a, a)], l[(a, a)] = 0, 1
        for c in shift.successors(a):
            if c != a:
                k[(a, c)], l[(a, c)] = 1, 0
        k[(b1, a)], l[(b1, a)] = 2, 1
    else:
        k[(a, b)], l[(a, b)] = 0, 1
        k[(b,)], l[(b,)] = 1, 0
    return LCFunction.from_pieces(shift, k, default=0), LCFunction.from_pieces(shift, l, default=0)


def _cocycle_ok(tau: PrefixExchangeTable, k, l, points) -> bool:
    return all(apply(tau, x).drop(k(x)) == x.drop(l(x)) for x in points)


# -- criteria ---------------------------------------------------------------
def c01_ck_relations(bounds, depth) -> Result:
    rng = random.Random(SEED + 1)
    shifts = [full_shift(2), golden_mean()] + random_condition_I_matrices(5, rng)
    for s in shifts:
        one = CKElement.one(s)
        S = [ck.generator(s, i) for i in s.symbols]
        if sum((x * x.adjoint() for x in S), CKElement.zero(s)) != one:
            return False, f"sum S_j S_j^* != 1 for {s}"
        for i, x in zip(s.symbols, S):
            rhs = sum((CKElement.projection(s, (j,)) for j in s.successors(i)), CKElement.zero(s))
            if x.adjoint() * x != rhs:
                return False, f"S_{i}^* S_{i} relation fails for {s}"
    return True, f"{len(shifts)} shifts, all relations exact"


def c02_group_axioms(bounds, depth, count: int = 200) -> Result:
    rng = random.Random(SEED + 2)
    checked = 0
    for s in (full_shift(2), golden_mean()):
        pts = sweep(s, *bounds)
        ident = PrefixExchangeTable.identity(s)
        for _ in range(count):
            a, b, c = (random_table(s, rng) for _ in range(3))
            ab_c, a_bc = compose(compose(a, b), c), compose(a, compose(b, c))
            inv = invert(a)
            if ab_c != a_bc:
                return False, f"associativity (tables) fails: {a}, {b}, {c}"
            if compose(a, ident) != a or compose(ident, a) != a:
                return False, f"identity law fails for {a}"
            if compose(a, inv) != ident or compose(inv, a) != ident:
                return False, f"inverse law fails for {a}"
            for x in pts:
                bx = apply(b, apply(c, x))
                ax = apply(a, x)
                if apply(ab_c, x) != apply(a, bx) or apply(a_bc, x) != apply(a, bx):
                    return False, f"associativity fails at {x}"
                if apply(inv, ax) != x:
                    return False, f"inverse fails at {x}"
            checked += 1
    return True, f"{checked} random triples, tables and pointwise"


def c03_cocycle_identity(bounds, depth) -> Result:
    rng = random.Random(SEED + 3)
    n = 0
    for s in (full_shift(2), golden_mean()):
        pts = sweep(s, *bounds)
        tables = [lemma32_generator(s, mu) for mu in s.words(2)]
        movers = 0
        while movers < 20:
            x = rng.choice(pts)
            j = rng.choice([j for j in s.symbols if s.allowed(j, x.first)])
            tables.append(lemma33_mover(s, x, j))
            movers += 1
        for p in (1, 2):
            perms = {}
            for i in s.symbols:
                wp = [w for w in s.words(p) if s.allowed(w[-1], i)]
                img = wp[:]
                rng.shuffle(img)
                perms[i] = dict(zip(wp, img))
            tau = permutation_element(s, p, perms)
            const = lambda x, p=p: p
            if not _cocycle_ok(tau, const, const, pts):
                return False, f"constant cocycle {p} fails for {tau}"
            tables.append(tau)
        tables += [random_table(s, rng) for _ in range(100)]
        if s == golden_mean():
            ex = example_i_table()
            if not _cocycle_ok(ex, lambda x: 1, lambda x: 1, pts):
                return False, "k = l = 1 fails for the involution of X_F"
            tables.append(ex)
        for tau in tables:
            cp = cocycles(tau)
            if not _cocycle_ok(tau, cp.k, cp.l, pts):
                return False, f"cocycle identity fails for {tau}"
            n += 1
    return True, f"{n} tables satisfy the cocycle identity on the sweep"


def c04_cylinder_shift(bounds, depth) -> Result:
    n = 0
    for s in (full_shift(2), golden_mean()):
        pts = sweep(s, *bounds)
        for mu in s.words(2):
            tau = lemma32_generator(s, mu)
            k, l = handwritten_shift_cocycles(s, mu)
            for y in pts:
                if y.starts_with(mu):
                    if apply(tau, y) != y.shift() or k(y) != 0 or l(y) != 1:
                        return False, f"generator for {mu} is not the shift at {y}"
                    n += 1
            if not _cocycle_ok(tau, k, l, pts):
                return False, f"hand-written cocycles for {mu} fail"
    return True, f"{n} points of U_mu checked, hand-written cocycles verified"


def _homomorphism_samples(rng, s, count):
    return [random_table(s, rng) for _ in range(count)]


def c05_split_exact(bounds, depth, count: int = 100) -> Result:
    rng = random.Random(SEED + 5)
    n = 0
    for s in (full_shift(2), golden_mean()):
        phases = [random_phase(s, rng) for _ in range(20)]
        taus = _homomorphism_samples(rng, s, count)
        one = PhaseFunction.constant(s)
        ident = PrefixExchangeTable.identity(s)
        for i, tau in enumerate(taus):
            u = ck.unitary_from_table(tau)
            if not ck.is_normalizer(u):
                return False, f"u_tau is not a normalizer for {tau}"
            d0, t0 = ck.normalizer_decompose(u)
            if d0 != one or t0 != tau:
                return False, f"section fails for {tau}"
            d = phases[i % len(phases)]
            d1, t1 = ck.normalizer_decompose(d.to_element() * u)
            if d1 != d or t1 != tau:
                return False, f"decomposition of d·u_tau fails for {tau}"
            other = taus[(i + 1) % len(taus)]
            if ck.unitary_from_table(compose(tau, other)) != u * ck.unitary_from_table(other):
                return False, f"u is not multiplicative on {tau}, {other}"
            n += 1
        for d in phases:
            d2, t2 = ck.normalizer_decompose(d.to_element())
            if d2 != d or t2 != ident:
                return False, f"kernel element {d} decomposes wrongly"
    return True, f"{n} tables; section, kernel and homomorphism exact"


def c06_gauge(bounds, depth, count: int = 50) -> Result:
    rng = random.Random(SEED + 6)
    n = 0
    for s in (full_shift(2), golden_mean()):
        for _ in range(count // 2):
            v = ck.unitary_from_table(random_table(s, rng))
            total = sum((ck.gauge_component(v, m) for m in v.degrees()), CKElement.zero(s))
            if total != v:
                return False, "gauge components do not sum to v"
            for m in v.degrees():
                if m > 0:
                    parts = ck.strip_prefix(v, m)
                    rec = sum((CKElement.term(s, mu) * vm for mu, vm in parts.items()), CKElement.zero(s))
                    if rec != ck.gauge_component(v, m):
                        return False, f"prefix reconstruction fails in degree {m}"
                elif m < 0:
                    parts = ck.strip_suffix(v, -m)
                    rec = sum((vm * CKElement.term(s, (), mu) for mu, vm in parts.items()), CKElement.zero(s))
                    if rec != ck.gauge_component(v, m):
                        return False, f"suffix reconstruction fails in degree {m}"
            n += 1
    return True, f"{n} unitaries decomposed and reconstructed"


def c07_af_normalizers(bounds, depth, count: int = 60) -> Result:
    rng = random.Random(SEED + 7)
    degree0 = 0
    for s in (full_shift(2), golden_mean()):
        for i in range(count):
            tau = random_af_table(s, rng) if i % 2 == 0 else random_table(s, rng)
            v = random_phase(s, rng).to_element() * ck.unitary_from_table(tau)
            if is_af(tau) and not ck.is_in_F(v):
                return False, f"AF table {tau} gives a normalizer outside degree 0"
            if ck.is_in_F(v):
                degree0 += 1
                if not is_af(ck.normalizer_decompose(v)[1]):
                    return False, f"degree-0 normalizer decomposes to a non-AF table"
    return True, f"{degree0} degree-0 normalizers, all with AF tables"


def c08_golden_mean(bounds, depth) -> Result:
    h, data = golden_mean_example()
    rt = round_trip_failures(h, bounds)
    if rt:
        return False, f"round trip fails at {rt[0]}"
    report = verify_orbit_cocycles(h, data, bounds, powers=3)
    if report:
        return False, f"counterexample {report[0]}"
    return True, "cocycle identities and 3-step sums hold in both directions"


def c09_conjugation(bounds, depth) -> Result:
    h, _ = golden_mean_example()
    F, A2 = golden_mean(), full_shift(2)
    n = 0
    for tau in [lemma32_generator(F, mu) for mu in F.words(2)] + [example_i_table()]:
        conjugate_table(h, tau, depth, bounds)
        n += 1
    for tau in [lemma32_generator(A2, mu) for mu in A2.words(2)]:
        conjugate_table(h.inverse(), tau, depth, bounds)
        n += 1
    return True, f"{n} conjugated tables inferred and certified"


def c10_af_group(bounds, depth, pairs: int = 500) -> Result:
    rng = random.Random(SEED + 10)
    for i in range(pairs):
        s = full_shift(2) if i % 2 == 0 else golden_mean()
        a, b = random_af_table(s, rng), random_af_table(s, rng)
        if not (is_af(a) and is_af(compose(a, b)) and is_af(invert(a))):
            return False, f"AF closure fails for {a}, {b}"
    for s in (full_shift(2), golden_mean()):
        for _ in range(5):
            tau = random_af_table(s, rng)
            k = tau.depth
            if is_uniform_orbit_equivalence(TailMap.from_table(tau), k, k, bounds):
                return False, f"uniform check fails for {tau}"
    swap = {(1,): (2,), (2,): (1,)}
    for p in (1, 2):
        perm = {i: dict(zip(full_shift(2).words(p), reversed(full_shift(2).words(p)))) for i in (1, 2)}
        tau = permutation_element(full_shift(2), p, perm if p > 1 else {1: swap, 2: swap})
        if is_uniform_orbit_equivalence(TailMap.from_table(tau), p + 1, p + 1, bounds):
            return False, f"uniform check fails for the length-{p} permutation element"
    h, _ = golden_mean_example()
    for k1, k2 in itertools.product(range(5), repeat=2):
        if not is_uniform_orbit_equivalence(h, k1, k2, bounds):
            return False, f"golden-mean map passes the uniform check with {k1}, {k2}"
    return True, f"{pairs} AF pairs closed; uniform check separates the examples"


def brute_force_coboundary(u1: PhaseFunction, depth: int) -> bool:
    """Search every phase v at the given depth for u1 = v·phi_A(v^*) in the algebra."""
    s, m = u1.shift, u1.m
    target = u1.to_element()
    words = s.words(depth)
    for exps in itertools.product(range(m), repeat=len(words)):
        v = PhaseFunction.from_exponents(s, depth, dict(zip(words, exps)), m).to_element()
        if v * ck.phi_A(v.adjoint()) == target:
            return True
    return False


def c11_coboundary(bounds, depth) -> Result:
    n = 0
    for s in (full_shift(2), golden_mean()):
        words = s.words(2)
        for exps in itertools.product(range(2), repeat=len(words)):
            u1 = PhaseFunction.from_exponents(s, 2, dict(zip(words, exps)), 2)
            for d in range(3):
                sol = ck.solve_coboundary(u1, d)
                truth = brute_force_coboundary(u1, d)
                if (sol is not None) != truth:
                    return False, f"solver disagrees with brute force on {u1} at depth {d}"
                if sol is not None and sol.to_element() * ck.phi_A(sol.to_element().adjoint()) != u1.to_element():
                    return False, f"solver returned a wrong witness for {u1}"
                n += 1
        minus = PhaseFunction.constant(s, -1, 0, 2)
        if any(ck.solve_coboundary(minus, d) is not None for d in range(3)):
            return False, "constant -1 reported as a coboundary"
    return True, f"{n} (cocycle, depth) instances agree with brute force"


def random_product(shift: MarkovShift, rng: random.Random, length: int) -> list[CKElement]:
    out = []
    for _ in range(length):
        kind = rng.randrange(3)
        if kind == 0:
            out.append(ck.generator(shift, rng.choice(shift.symbols)))
        elif kind == 1:
            out.append(ck.generator(shift, rng.choice(shift.symbols)).adjoint())
        else:
            out.append(CKElement.projection(shift, rng.choice(shift.words(rng.randint(1, 2)))))
    return out


def _product(shift, factors):
    out = CKElement.one(shift)
    for f in factors:
        out = out * f
    return out


def _resolve(shift, factors, rng):
    """An equal product: insert a resolution of the identity or split a projection."""
    factors = list(factors)
    i = rng.randrange(len(factors) + 1)
    unit = [ck.generator(shift, j) * ck.generator(shift, j).adjoint() for j in shift.symbols]
    factors.insert(i, sum(unit, CKElement.zero(shift)))
    return factors


def c12_oracle(bounds, depth, count: int = 500) -> Result:
    rng = random.Random(SEED + 12)
    agree_eq = agree_ne = 0
    for i in range(count):
        s = full_shift(2) if i % 2 == 0 else golden_mean()
        pts = sweep(s, *bounds)
        fa = random_product(s, rng, rng.randint(1, 6))
        roll = rng.random()
        if roll < 0.45:
            fb = _resolve(s, fa, rng)
        elif roll < 0.7:
            fb = list(fa)
            fb[rng.randrange(len(fb))] = random_product(s, rng, 1)[0]
        else:
            fb = random_product(s, rng, rng.randint(1, 6))
        a, b = _product(s, fa), _product(s, fb)
        decided = a == b
        oracle = all(ck.act_on_point(a, p) == ck.act_on_point(b, p) for p in pts)
        if decided != oracle:
            return False, f"normal form says {decided}, oracle says {oracle} for {a} vs {b}"
        if decided:
            agree_eq += 1
        else:
            agree_ne += 1
    return True, f"{agree_eq} equal and {agree_ne} unequal pairs agree with the oracle"


def c13_combinatorics(bounds, depth) -> Result:
    F = golden_mean()
    counts = [len(F.words(k)) for k in range(1, 7)]
    if counts != [2, 3, 5, 8, 13, 21]:
        return False, f"|B_k(X_F)| = {counts}"
    verdicts = (
        full_shift(2).condition_I,
        F.condition_I,
        F.transpose().condition_I,
        MarkovShift([[0, 1], [1, 0]]).condition_I,
    )
    if verdicts != (True, True, True, False):
        return False, f"condition (I) verdicts {verdicts}"
    return True, "word counts 2,3,5,8,13,21; condition (I) verdicts as expected"


CRITERIA: list[tuple[int, str, Callable[..., Result]]] = [
    (1, "CK relations in normal form", c01_ck_relations),
    (2, "full-group axioms", c02_group_axioms),
    (3, "orbit cocycle identity", c03_cocycle_identity),
    (4, "two-letter generators act as the shift", c04_cylinder_shift),
    (5, "normalizer sequence is split exact", c05_split_exact),
    (6, "gauge decomposition", c06_gauge),
    (7, "degree-0 normalizers have AF tables", c07_af_normalizers),
    (8, "golden-mean orbit equivalence", c08_golden_mean),
    (9, "conjugated full-group elements", c09_conjugation),
    (10, "AF-full group and uniform orbits", c10_af_group),
    (11, "coboundary solver vs brute force", c11_coboundary),
    (12, "normal form vs point oracle", c12_oracle),
    (13, "combinatorial regression", c13_combinatorics),
]


def run_criterion(number: int, bounds=(6, 4), depth: int = 8) -> Result:
    for n, _, fn in CRITERIA:
        if n == number:
            try:
                return fn(bounds, depth)
            except Exception as exc:  # a raised error is a failed criterion
                return False, f"{type(exc).__name__}: {exc}"
    raise KeyError(number)


def run_all(bounds=(6, 4), depth: int = 8, echo=print) -> list[dict]:
    results = []
    for n, title, _ in CRITERIA:
        t0 = time.perf_counter()
        ok, detail = run_criterion(n, bounds, depth)
        dt = time.perf_counter() - t0
        echo(f"[{'PASS' if ok else 'FAIL'}] {n:2d} {title}: {detail} ({dt:.1f}s)")
        results.append({"criterion": n, "title": title, "passed": ok, "detail": detail, "seconds": round(dt, 3)})
    return results
