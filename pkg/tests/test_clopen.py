from mfg.clopen import ClopenSet, LCFunction, characteristic, eval_function, point_in
from mfg.points import EPPoint


def test_cylinder_membership(F):
    assert point_in(EPPoint.parse("|1"), ClopenSet.cylinder(F, (1, 1)))
    assert not point_in(EPPoint.parse("2|1"), ClopenSet.cylinder(F, (1, 1)))


def test_boolean_identities(F):
    u2 = ClopenSet.cylinder(F, (2,))
    assert (u2.complement() | u2).is_whole()
    assert (u2.complement() & u2).is_empty()
    assert u2.same_set(ClopenSet.cylinder(F, (2, 1)))


def test_characteristic_evaluation(F):
    chi = characteristic(F, ClopenSet.cylinder(F, (2, 1)))
    assert eval_function(chi, EPPoint.parse("21|1")) == 1
    assert eval_function(chi, EPPoint.parse("|1")) == 0


def test_canonical_merges_equal_siblings(F):
    f = LCFunction(F, 2, {(1, 1): 5, (1, 2): 5, (2, 1): 7})
    g = f.canonical()
    assert g.depth == 1 and g.table == {(1,): 5, (2,): 7}
    assert g == f


def test_compose_shift(A2):
    f = LCFunction(A2, 1, {(1,): "a", (2,): "b"})
    g = f.compose_shift()
    assert g(EPPoint.parse("21|2")) == "a"
    assert g(EPPoint.parse("12|2")) == "b"


def test_json_round_trip(F):
    f = LCFunction(F, 2, {(1, 1): 0, (1, 2): 1, (2, 1): 3})
    assert LCFunction.from_json(F, f.to_json(), int) == f
