import pytest

from mfg.errors import Inadmissible, ParseError
from mfg.points import EPPoint, points_in_cylinder, shift_point, sweep


def P(s):
    return EPPoint.parse(s)


def test_canonical_form():
    assert P("11|1") == P("|1")
    assert P("2|11") == P("2|1")
    assert P("1|21") == P("|12")
    assert str(P("121|21")) == "|12"
    assert hash(P("11|1")) == hash(P("|1"))


def test_shift_examples():
    assert shift_point(P("21|1")) == P("1|1") == P("|1")
    assert shift_point(P("|12")) == P("|21")
    assert shift_point(P("|1")) == P("|1")


def test_symbols_and_prefixes():
    p = P("2|12")
    assert [p.symbol(i) for i in range(6)] == [2, 1, 2, 1, 2, 1]
    assert p.prefix(4) == (2, 1, 2, 1)
    assert p.starts_with((2, 1))
    assert p.drop(3) == P("|12")
    assert p.prepend((1, 1)) == P("11|21")


def test_admissibility(F):
    assert P("21|1").is_admissible(F)
    assert not P("|2").is_admissible(F)
    assert not P("1|122").is_admissible(F)
    with pytest.raises(Inadmissible):
        P("22|1").check(F)


def test_parse_errors():
    for bad in ("12", "1|", "a|1"):
        with pytest.raises(ParseError):
            P(bad)


def test_sweep_is_exhaustive_and_canonical(F, A2):
    pts = sweep(F, 6, 4)
    assert len(set(pts)) == len(pts)
    assert all(p.is_admissible(F) for p in pts)
    # brute force: every admissible pre|per with the bounds, canonicalized
    import itertools

    brute = set()
    for q in range(1, 5):
        for per in itertools.product((1, 2), repeat=q):
            for n in range(7):
                for pre in itertools.product((1, 2), repeat=n):
                    p = EPPoint(pre, per)
                    if p.is_admissible(F) and len(p.pre) <= 6 and len(p.per) <= 4:
                        brute.add(p)
    assert brute == set(pts)
    assert len(sweep(F, 6, 4)) == 186
    assert len(sweep(A2, 6, 4)) == 1408


def test_points_in_cylinder(F):
    pts = sweep(F, 3, 2)
    assert all(p.starts_with((2,)) for p in points_in_cylinder(pts, (2,)))
