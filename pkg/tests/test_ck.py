import random
from fractions import Fraction

import pytest

from mfg import ck
from mfg.ck import CKElement, PhaseFunction
from mfg.errors import NonScalarObstruction, NotANormalizer, NotDiagonal, NotUnimodular, ValueOutsidePhaseGroup
from mfg.full_group import PrefixExchangeTable, apply, compose, lemma32_generator, parse_entries, random_table
from mfg.points import EPPoint, sweep
from mfg.scalar import Scalar


def S(shift, i):
    return ck.generator(shift, i)


def chi(shift, w):
    return CKElement.projection(shift, w)


def P(s):
    return EPPoint.parse(s)


@pytest.fixture
def involution(F):
    return PrefixExchangeTable(
        F, parse_entries([("111", "211"), ("211", "111"), ("112", "112"), ("121", "121"), ("212", "212")])
    )


def test_relations(A2, F):
    assert S(A2, 1).adjoint() * S(A2, 1) == 1
    assert S(F, 2).adjoint() * S(F, 2) == chi(F, (1,))
    for s in (A2, F):
        assert sum((S(s, j) * S(s, j).adjoint() for j in s.symbols), CKElement.zero(s)) == 1
        assert CKElement.one(s) - sum((S(s, j) * S(s, j).adjoint() for j in s.symbols), CKElement.zero(s)) == 0


def test_incompatible_terms_vanish(F):
    # S_2 S_2 = 0 in the golden-mean algebra, and S_1 S_2^* survives through j = 1
    assert (S(F, 2) * S(F, 2)).is_zero()
    t = S(F, 1) * S(F, 2).adjoint()
    assert not t.is_zero()
    assert set(t.terms) == {((1,), (2,))}


def test_normal_form_examples(F):
    e = chi(F, (1, 1)) + chi(F, (1, 2)) + chi(F, (2, 1))
    assert ck.equals(e, CKElement.one(F))
    assert ck.normal_form(ck.normal_form(e)) == ck.normal_form(e)


def test_act_on_point_examples(F):
    assert ck.act_on_point(S(F, 2), P("|1")) == {P("2|1"): Scalar.of(4, 1)}
    assert ck.act_on_point(S(F, 2), P("2|1")) == {}
    assert ck.act_on_point(S(F, 1) * S(F, 2).adjoint(), P("2|1")) == {P("|1"): Scalar.of(4, 1)}


def test_gauge_examples(A2, F):
    s1 = S(A2, 1)
    assert ck.gauge_component(s1, 1) == s1
    assert ck.gauge_component(s1, 0) == 0 and ck.gauge_component(s1, -1) == 0
    e = S(A2, 1) * S(A2, 2).adjoint() + S(A2, 1) * S(A2, 1).adjoint()
    assert ck.conditional_expectation(e) == e
    mixed = S(A2, 1) + chi(A2, (2,))
    assert ck.conditional_expectation(mixed) == chi(A2, (2,))
    v = ck.unitary_from_table(lemma32_generator(F, (1, 1)))
    assert len(v.degrees()) >= 2
    assert sum((ck.gauge_component(v, m) for m in v.degrees()), CKElement.zero(F)) == v


def test_strip_prefix_examples(F):
    v = CKElement.term(F, (1, 2), (1,))
    parts = ck.strip_prefix(v, 1)
    assert parts[(1,)] == CKElement.term(F, (2,), (1,))
    assert parts[(2,)] == 0
    assert all(e == 0 for e in ck.strip_prefix(CKElement.one(F), 1).values())


def test_strip_prefix_reconstruction_random(A2):
    rng = random.Random(3)
    for _ in range(50):
        terms = {}
        for _ in range(3):
            b = tuple(rng.choice((1, 2)) for _ in range(rng.randint(0, 2)))
            a = tuple(rng.choice((1, 2)) for _ in range(len(b) + 2))
            terms[(a, b)] = rng.randint(-3, 3)
        v = CKElement(A2, terms)
        parts = ck.strip_prefix(v, 2)
        rec = sum((CKElement.term(A2, mu) * vm for mu, vm in parts.items()), CKElement.zero(A2))
        assert rec == ck.gauge_component(v, 2)


def test_unitary_from_table(F, involution):
    assert ck.unitary_from_table(PrefixExchangeTable.identity(F)) == 1
    u = ck.unitary_from_table(involution)
    expected = sum(
        (CKElement.term(F, a, b) for a, b in [("211", "111"), ("111", "211"), ("112", "112"), ("121", "121"), ("212", "212")]
         for a, b in [(tuple(map(int, a)), tuple(map(int, b)))]),
        CKElement.zero(F),
    )
    assert u == expected
    assert ck.is_unitary(u)
    for p in sweep(F, 6, 4):
        assert ck.act_on_point(u, p) == {apply(involution, p): Scalar.of(4, 1)}


def test_predicates(A2, F, involution):
    assert ck.is_diagonal(chi(F, (1, 1)) + chi(F, (1, 2)) + chi(F, (2, 1)))
    assert not ck.is_unitary(S(A2, 1))
    assert ck.is_normalizer(ck.unitary_from_table(involution))
    assert ck.is_in_F(ck.unitary_from_table(involution))
    assert not ck.is_normalizer(S(A2, 1) + S(A2, 2).adjoint())


def test_decompose_examples(A2, F, involution):
    one = PhaseFunction.constant(F)
    d, tau = ck.normalizer_decompose(ck.unitary_from_table(involution))
    assert d == one and tau == involution

    v = -chi(A2, (1,)) + chi(A2, (2,))
    d, tau = ck.normalizer_decompose(v)
    assert tau == PrefixExchangeTable.identity(A2)
    assert d == PhaseFunction.from_exponents(A2, 1, {(1,): 2, (2,): 0})

    z = Scalar.root(4, 1)
    v = ck.unitary_from_table(involution) + CKElement.term(F, (2, 1, 1), (1, 1, 1), z - 1)
    d, tau = ck.normalizer_decompose(v)
    assert tau == involution
    assert d == PhaseFunction.from_pieces(F, {(2, 1, 1): z}, default=Scalar.of(4, 1))


def test_decompose_rejects_non_normalizers(A2):
    with pytest.raises(NotANormalizer):
        ck.normalizer_decompose(S(A2, 1))
    swap = CKElement(A2, {((1,), (2,)): 1, ((2,), (1,)): 1})
    assert ck.normalizer_decompose(swap)[1] == PrefixExchangeTable(A2, [((1,), (2,)), ((2,), (1,))])


def test_non_scalar_obstruction_detected(A2):
    # Hadamard unitary over Q(zeta_8): unitary, but it sends a point to a superposition
    c = (Scalar.root(8, 1) + Scalar.root(8, 7)) * Fraction(1, 2)  # 1/sqrt(2)
    terms = {((1,), (1,)): c, ((1,), (2,)): c, ((2,), (1,)): c, ((2,), (2,)): -c}
    v = CKElement(A2, terms, 8)
    assert ck.is_unitary(v)
    assert not ck.is_normalizer(v)
    with pytest.raises(NonScalarObstruction):
        ck.normalizer_decompose(v)


def test_phi_examples(A2, F):
    assert ck.phi_A(CKElement.one(A2)) == 1
    assert ck.phi_A(chi(A2, (1,))) == chi(A2, (1, 1)) + chi(A2, (2, 1))
    rng = random.Random(4)
    for _ in range(20):
        f = PhaseFunction.from_exponents(F, 2, {w: rng.randrange(4) for w in F.words(2)}).to_element()
        g = PhaseFunction.from_exponents(F, 1, {w: rng.randrange(4) for w in F.words(1)}).to_element()
        assert ck.phi_A(f * g) == ck.phi_A(f) * ck.phi_A(g)
    with pytest.raises(NotDiagonal):
        ck.phi_A(S(A2, 1))


def test_cocycle_automorphism_examples(A2):
    one = PhaseFunction.constant(A2)
    e = S(A2, 1) * S(A2, 2).adjoint() + S(A2, 1)
    assert ck.cocycle_automorphism(one, e) == e
    minus = PhaseFunction.constant(A2, -1)
    assert ck.cocycle_automorphism(minus, S(A2, 1)) == -S(A2, 1)
    t = CKElement.term(A2, (1, 2), (1,))
    assert ck.cocycle_automorphism(minus, t) == -t
    for k in range(4):
        for w in A2.words(k):
            assert ck.cocycle_automorphism(minus, chi(A2, w)) == chi(A2, w)


def test_solve_coboundary_examples(A2):
    one = PhaseFunction.constant(A2, 1, 0, 2)
    assert ck.solve_coboundary(one, 0) == one
    minus = PhaseFunction.constant(A2, -1, 0, 2)
    assert all(ck.solve_coboundary(minus, d) is None for d in range(4))
    v0 = PhaseFunction.from_exponents(A2, 1, {(1,): 1, (2,): 0}, 2)
    u1 = ck.coboundary_of(v0)
    assert u1.refine_to_depth(2).exponents() == {(1, 1): 0, (1, 2): 1, (2, 1): 1, (2, 2): 0}
    v = ck.solve_coboundary(u1, 1)
    assert v is not None
    assert v.to_element() * ck.phi_A(v.to_element().adjoint()) == u1.to_element()


def test_phase_function_checks(A2):
    with pytest.raises(NotUnimodular):
        PhaseFunction(A2, 0, {(): Scalar.of(4, 2)})
    sqrt_half = PhaseFunction(A2, 0, {(): Scalar.root(8, 1)}, 8)
    assert sqrt_half.exponents() == {(): 1}
    assert PhaseFunction.from_json(A2, sqrt_half.to_json()) == sqrt_half


def test_value_outside_phase_group(A2):
    # (3 + 4i)/5 is unimodular but not a root of unity
    v = Scalar(4, [Fraction(3, 5), Fraction(4, 5)])
    f = PhaseFunction(A2, 0, {(): v})
    with pytest.raises(ValueOutsidePhaseGroup):
        f.exponents()
    assert PhaseFunction.from_json(A2, f.to_json()) == f
    with pytest.raises(ValueOutsidePhaseGroup):
        ck.solve_coboundary(f, 1)


def test_homomorphism_on_random_tables(F):
    rng = random.Random(9)
    for _ in range(15):
        a, b = random_table(F, rng), random_table(F, rng)
        assert ck.unitary_from_table(compose(a, b)) == ck.unitary_from_table(a) * ck.unitary_from_table(b)


def test_json_round_trip(F):
    e = CKElement(F, {((1, 2), (1,)): Scalar.root(4, 1), ((), ()): 3})
    assert CKElement.from_json(F, e.to_json()) == e
