"""Property-based checks of the algebraic laws."""
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from mfg import ck
from mfg.ck import CKElement, PhaseFunction
from mfg.full_group import PrefixExchangeTable, apply, compose, invert, random_table
from mfg.points import EPPoint, sweep
from mfg.scalar import Scalar
from mfg.shift import MarkovShift, full_shift, golden_mean

SHIFTS = [full_shift(2), golden_mean(), MarkovShift([[1, 1, 0], [0, 1, 1], [1, 0, 1]])]
shifts = st.sampled_from(SHIFTS)
settings.register_profile("mfg", max_examples=60, deadline=None)
settings.load_profile("mfg")


@st.composite
def tables(draw, shift=None):
    s = shift or draw(shifts)
    return random_table(s, draw(st.randoms(use_true_random=False)))


@st.composite
def table_triples(draw):
    s = draw(shifts)
    return tuple(draw(tables(s)) for _ in range(3))


@st.composite
def elements(draw, shift):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        a = tuple(draw(st.lists(st.sampled_from(shift.symbols), max_size=3)))
        b = tuple(draw(st.lists(st.sampled_from(shift.symbols), max_size=3)))
        if shift.is_admissible(a) and shift.is_admissible(b):
            terms[(a, b)] = Scalar.root(4, draw(st.integers(0, 3))) * draw(st.integers(-2, 2))
    return CKElement(shift, terms)


@st.composite
def element_triples(draw):
    s = draw(shifts)
    return tuple(draw(elements(s)) for _ in range(3))


@given(table_triples())
def test_group_axioms(t):
    a, b, c = t
    ident = PrefixExchangeTable.identity(a.shift)
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert compose(a, invert(a)) == ident == compose(invert(a), a)
    assert compose(a, ident) == a
    assert invert(invert(a)) == a


@given(tables(), st.integers(0, 3))
def test_canonical_form_ignores_refinement(tau, extra):
    fine = PrefixExchangeTable(tau.shift, tau.refined(tau.depth + extra).items())
    assert fine == tau and hash(fine) == hash(tau)


@given(tables(), tables())
def test_compose_matches_pointwise(a, b):
    if a.shift != b.shift:
        return
    ab = compose(a, b)
    for p in sweep(a.shift, 3, 3):
        assert apply(ab, p) == apply(a, apply(b, p))


@given(element_triples())
def test_star_algebra_laws(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert (a + b) * c == a * c + b * c
    assert (a * b).adjoint() == b.adjoint() * a.adjoint()
    assert a.adjoint().adjoint() == a
    assert a - a == 0


@given(element_triples())
def test_products_agree_with_point_action(t):
    a, b, _ = t
    ab = a * b
    for p in sweep(a.shift, 3, 2):
        composed = {}
        for q, c in ck.act_on_point(b, p).items():
            for r, d in ck.act_on_point(a, q).items():
                composed[r] = composed.get(r, Scalar.of(4, 0)) + c * d
        assert ck.act_on_point(ab, p) == {r: c for r, c in composed.items() if c}


@given(tables(), st.randoms(use_true_random=False))
def test_decompose_inverts_construction(tau, rng):
    s = tau.shift
    d = PhaseFunction.from_exponents(s, 1, {w: rng.randrange(4) for w in s.words(1)})
    phase, table = ck.normalizer_decompose(d.to_element() * ck.unitary_from_table(tau))
    assert table == tau and phase == d


@given(shifts, st.integers(0, 2), st.randoms(use_true_random=False))
def test_coboundaries_are_solved(s, depth, rng):
    v = PhaseFunction.from_exponents(s, depth, {w: rng.randrange(4) for w in s.words(depth)})
    u1 = ck.coboundary_of(v)
    w = ck.solve_coboundary(u1, depth)
    assert w is not None and ck.coboundary_of(w) == u1


@given(shifts, st.lists(st.integers(1, 3), max_size=4), st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_point_shift_and_prepend(s, pre, per):
    p = EPPoint(tuple(x for x in pre if x <= s.n), tuple(x for x in per if x <= s.n) or (1,))
    assert EPPoint.parse(str(p)) == p
    assert p.prepend((p.first,)).drop(1) == p
    assert p.drop(2) == p.shift().shift()


@given(st.lists(st.fractions(max_denominator=5), min_size=2, max_size=2), st.lists(st.fractions(max_denominator=5), min_size=2, max_size=2))
def test_scalar_field_laws(x, y):
    a, b = Scalar(4, x), Scalar(4, y)
    assert a * b == b * a
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()
    assert a * (b + 1) == a * b + a
    assert (a * a.conj()).c[1] == Fraction(0)
