import random

import pytest

from mfg.errors import (
    ConditionIFailure,
    DomainNotPartition,
    EmptyWordEntry,
    NotAPermutation,
    RangeNotPartition,
    SuffixMapNotIntoShift,
    WordNotAdmissible,
)
from mfg.full_group import (
    PrefixExchangeTable,
    apply,
    cocycle_counterexamples,
    cocycles,
    compose,
    invert,
    is_af,
    lemma32_generator,
    lemma33_mover,
    orbit_within,
    parse_entries,
    permutation_element,
    random_table,
)
from mfg.points import EPPoint, sweep
from mfg.shift import MarkovShift


def T(shift, pairs):
    return PrefixExchangeTable(shift, parse_entries(pairs))


def P(s):
    return EPPoint.parse(s)


@pytest.fixture
def involution(F):
    return T(F, [("111", "211"), ("211", "111"), ("112", "112"), ("121", "121"), ("212", "212")])


@pytest.fixture
def tau11(F):
    return T(F, [("11", "1"), ("12", "212"), ("21", "211")])


def test_valid_tables(involution, tau11):
    assert len(involution.entries) == 5
    assert tau11.entries == ((( 1, 1), (1,)), ((1, 2), (2, 1, 2)), ((2, 1), (2, 1, 1)))


@pytest.mark.parametrize(
    "pairs, err",
    [
        ([("11", "1"), ("12", "212")], DomainNotPartition),
        ([("1", "1"), ("1", "21"), ("2", "2")], DomainNotPartition),
        ([("1", "1"), ("2", "1")], RangeNotPartition),
        ([("1", "2"), ("2", "1")], SuffixMapNotIntoShift),
        ([("22", "1"), ("1", "2")], WordNotAdmissible),
        ([("", "1")], EmptyWordEntry),
        ([], EmptyWordEntry),
    ],
)
def test_invalid_tables(F, pairs, err):
    with pytest.raises(err):
        T(F, pairs)


def test_canonical_form_is_unique(F):
    a = T(F, [("1", "1"), ("2", "2")])
    b = T(F, [("11", "11"), ("12", "12"), ("21", "21")])
    assert a == b == PrefixExchangeTable.identity(F)
    assert hash(a) == hash(b)


def test_apply_examples(F, involution, tau11):
    assert apply(involution, P("|1")) == P("2|1")
    assert apply(tau11, P("|1")) == P("|1")
    ident = PrefixExchangeTable.identity(F)
    assert all(apply(ident, p) == p for p in sweep(F, 4, 3))


def test_compose_examples(F, involution, tau11):
    ident = PrefixExchangeTable.identity(F)
    assert compose(involution, involution) == ident
    assert compose(tau11, ident) == tau11
    assert compose(tau11, invert(tau11)) == ident
    for p in sweep(F, 4, 4):
        assert apply(compose(tau11, invert(tau11)), p) == p
        assert apply(compose(tau11, involution), p) == apply(tau11, apply(involution, p))


def test_invert_examples(F, tau11):
    assert invert(tau11) == T(F, [("1", "11"), ("212", "12"), ("211", "21")])
    assert invert(PrefixExchangeTable.identity(F)) == PrefixExchangeTable.identity(F)
    assert invert(invert(tau11)) == tau11


def test_cocycles_from_entry_lengths(F, tau11, involution):
    pair = cocycles(tau11)
    assert pair.k.table == {(1, 1): 1, (1, 2): 3, (2, 1): 3}
    assert pair.l.values() == {2}
    # the canonical involution keeps 12 as a single entry, so k = l = 2 there and 3 elsewhere
    ci = cocycles(involution)
    assert ci.k == ci.l
    pts = sweep(F, 6, 4)
    assert not cocycle_counterexamples(involution, lambda x: 1, lambda x: 1, pts)
    ident = cocycles(PrefixExchangeTable.identity(F))
    assert ident.k.values() == ident.l.values() == {1}


def test_is_af(F, involution, tau11):
    assert is_af(involution)
    assert not is_af(tau11)


def test_lemma32_examples(F):
    assert lemma32_generator(F, (1, 1)) == T(F, [("11", "1"), ("12", "212"), ("21", "211")])
    assert lemma32_generator(F, (1, 2)) == T(F, [("12", "2"), ("21", "121"), ("11", "11")])
    assert apply(lemma32_generator(F, (1, 1)), P("11|21")) == P("1|21")


@pytest.mark.parametrize("rows", [[[1, 1], [1, 1]], [[1, 1], [1, 0]], [[1, 1, 0], [0, 1, 1], [1, 0, 1]]])
def test_lemma32_acts_as_shift(rows):
    s = MarkovShift(rows)
    pts = sweep(s, 4, 3)
    for mu in s.words(2):
        tau = lemma32_generator(s, mu)
        for y in pts:
            if y.starts_with(mu):
                assert apply(tau, y) == y.shift()


def test_lemma32_needs_condition_I():
    s = MarkovShift([[1, 1], [0, 1]])
    with pytest.raises(ConditionIFailure):
        lemma32_generator(s, (2, 2))


def test_lemma33_examples(F, A2):
    tau = lemma33_mover(F, P("|1"), 2)
    assert tau == T(F, [("1", "21"), ("21", "1")])
    assert apply(tau, P("|1")) == P("2|1")
    assert lemma33_mover(F, P("|1"), 1) == PrefixExchangeTable.identity(F)
    assert apply(lemma33_mover(A2, P("2|1"), 1), P("2|1")) == P("12|1")


def test_permutation_examples(F, A2):
    swap = {(1,): (2,), (2,): (1,)}
    assert permutation_element(F, 1, {1: swap, 2: {}}) == T(F, [("11", "21"), ("21", "11"), ("12", "12")])
    assert permutation_element(F, 2, {}) == PrefixExchangeTable.identity(F)
    assert permutation_element(A2, 1, {1: swap, 2: swap}) == T(
        A2, [("11", "21"), ("21", "11"), ("12", "22"), ("22", "12")]
    )
    with pytest.raises(NotAPermutation):
        permutation_element(F, 1, {2: {(1,): (2,)}})


def test_orbit_within_examples(F, A2):
    y, tau = orbit_within(F, P("|1"), 1, 0, (2,))
    assert y == P("2|1") and apply(tau, P("|1")) == y
    y, _ = orbit_within(F, P("|1"), 0, 1, ())
    assert y == P("|1")
    y, tau = orbit_within(A2, P("|1"), 2, 1, (2, 2))
    assert y == P("22|1") and apply(tau, P("|1")) == y


def test_random_tables_are_valid_bijections(F, A2):
    rng = random.Random(5)
    for s in (F, A2):
        pts = sweep(s, 4, 3)
        for _ in range(20):
            tau = random_table(s, rng)
            images = [apply(tau, p) for p in pts]
            assert all(q.is_admissible(s) for q in images)
            assert [apply(invert(tau), q) for q in images] == list(pts)


def test_json_shape(tau11):
    assert tau11.to_json()["entries"] == [["11", "1"], ["12", "212"], ["21", "211"]]
