import json
from fractions import Fraction

from stabkit import (CategoryPresentation, ChernCharacter, Edge, MukaiVector,
                     SliceParams, wall_locus)
from stabkit import serialize as ser
from stabkit.gaussian import gaussian


def test_rational_strings_roundtrip():
    for x in (Fraction(3, 2), Fraction(-7), Fraction(0), Fraction(22, 7)):
        assert ser.unrat(ser.rat(x)) == x


def test_lattice_roundtrip(k3d2):
    doc = ser.lattice_to_json(k3d2)
    assert doc == {"rank": 1, "gram": [["2"]], "ample": ["1"], "k3": True}
    assert ser.lattice_from_json(json.loads(json.dumps(doc))) == k3d2


def test_mukai_and_chern_roundtrip():
    v = MukaiVector(2, (1, -3), 5)
    assert ser.mukai_from_json(ser.mukai_to_json(v)) == v
    ch = ChernCharacter(Fraction(1, 2), (Fraction(-3, 4),), Fraction(5))
    assert ser.chern_from_json(ser.chern_to_json(ch)) == ch


def test_gauss_and_charge_row_roundtrip():
    z = gaussian("3/2", "-1/3")
    assert ser.gauss_from_json(ser.gauss_to_json(z)) == z
    row = [gaussian(4, 0), gaussian(0, 4), gaussian(-1, 0)]
    assert ser.charge_row_from_json(ser.charge_row_to_json(row)) == row


def test_category_roundtrip():
    cat = CategoryPresentation(
        objects={"0": (0, 0), "S1": (0, 1), "S2": (1, 0), "A": (1, 1)},
        edges=(Edge("S2", "A", "S1"),), zero="0")
    doc = ser.category_to_json(cat)
    cat2 = ser.category_from_json(json.loads(json.dumps(doc)))
    assert cat2 == cat


def test_wall_roundtrip(k3d2):
    sl = SliceParams(k3d2, (Fraction(0),))
    loc = wall_locus(MukaiVector(1, (0,), -1), MukaiVector(-8, (1,), 0), sl)
    doc = ser.wall_to_json(loc, "W0")
    loc2 = ser.wall_from_json(json.loads(json.dumps(doc)))
    assert loc2 == loc


def test_dumps_canonical():
    a = ser.dumps({"b": 1, "a": [2, 3]})
    b = ser.dumps({"a": [2, 3], "b": 1})
    assert a == b
    assert a.endswith("\n")


def test_charge_params_roundtrip(k3d2):
    from fractions import Fraction as F
    from stabkit import ChargeParams
    params = ChargeParams(k3d2, (F(1, 2),), (F(2),))
    doc = ser.charge_params_to_json(params)
    assert doc["beta"] == ["1/2"] and doc["omega"] == ["2"]
    back = ser.charge_params_from_json(json.loads(json.dumps(doc)))
    assert back == params
    # external lattice reference form
    doc2 = ser.charge_params_to_json(params, inline_lattice=False)
    assert "lattice" not in doc2
    back2 = ser.charge_params_from_json(doc2, lattice=k3d2)
    assert back2 == params
