"""Test cusp tori, ladders and tube systems"""
import warnings
from math import gcd

import pytest

from veerweave import carry
from veerweave import cusp as vc
from veerweave.triangulation import relabel, validate

from helper_methods import load_f8


def _torus_tips(directions):
    """Two triangles glued to a one-vertex torus"""
    return [{"direction": directions[0], "corners": [0, 0, 0],
             "sides": [0, 1, 2], "outward": [True, True, True]},
            {"direction": directions[1], "corners": [0, 0, 0],
             "sides": [0, 1, 2], "outward": [False, False, False]}]


def test_f8_cusp_counts():
    tri = load_f8()
    cusps = vc.build_cusps(tri)
    assert len(cusps) == 1
    cusp = cusps[0]
    assert len(cusp.tips) == 8
    assert cusp.euler_characteristic == 0
    assert len(cusp.ladders) == 4
    assert len(cusp.up_ladders) == 2
    assert [lad.direction for lad in cusp.ladders] == [vc.UP, vc.DOWN,
                                                       vc.UP, vc.DOWN]
    assert len(cusp.poles) == 4


def test_f8_ladderpoles():
    cusp = vc.build_cusps(load_f8())[0]
    for k, pole in enumerate(cusp.poles):
        assert pole.sign in (1, -1)
        assert pole.sign == -cusp.poles[k - 1].sign
        lad = cusp.ladders[pole.up_ladder]
        assert lad.direction == vc.UP
        assert cusp.ladders[pole.down_ladder].direction == vc.DOWN
        assert cusp.primal_coordinates(
            {s: 1 for s in pole.sides}) == (pole.sign, 0)
    # every ladder is bounded by two poles
    for k, lad in enumerate(cusp.ladders):
        assert lad.poles == ((k - 1) % 4, k)


def test_f8_basis():
    cusp = vc.build_cusps(load_f8())[0]
    assert cusp.lam.is_closed()
    assert cusp.rho.is_closed()
    assert cusp.primal_coordinates(cusp.lam_primal) == (1, 0)
    assert cusp.intersection(cusp.lam_primal, cusp.rho) == 1
    assert cusp.intersection(cusp.lam_primal, cusp.lam) == 0
    tips = cusp.lambda_tips()
    assert set(tips) == set(cusp.ladders[0].tips)


def test_f8_links():
    cusp = vc.build_cusps(load_f8())[0]
    links = cusp.links()
    assert sorted(links) == list(range(cusp.nvertices))
    assert sum(len(c) for c in links.values()) == 3 * len(cusp.tips)


def test_relabel_invariance():
    tri = load_f8()
    other = relabel(tri, [1, 0])
    validate(other)
    a = vc.build_cusps(tri)[0]
    b = vc.build_cusps(other)[0]
    assert len(a.tips) == len(b.tips)
    assert [lad.direction for lad in a.ladders] == \
        [lad.direction for lad in b.ladders]
    assert sorted(len(p.sides) for p in a.poles) == \
        sorted(len(p.sides) for p in b.poles)


def test_synthetic_torus_not_veering():
    cusp = vc.CuspComplex.from_tips(0, _torus_tips([vc.UP, vc.UP]))
    assert cusp.euler_characteristic == 0
    with pytest.raises(vc.LadderError):
        vc.build_ladders(cusp)
    cusp = vc.CuspComplex.from_tips(0, _torus_tips([vc.UP, vc.DOWN]))
    with pytest.raises(vc.LadderError):
        vc.build_ladders(cusp)


def test_from_tips_errors():
    specs = _torus_tips([vc.UP, vc.DOWN])
    specs[1]["outward"] = [True, False, False]
    with pytest.raises(vc.CuspStructureError):
        vc.CuspComplex.from_tips(0, specs)


def test_tube_report_strict():
    tri = load_f8()
    tubes = vc.tubes_from_dict(
        {"cusps": [{"id": 0, "kind": "solid", "meridian": [1, 2]}]}, 1)
    report = vc.tube_report(tri, tubes)
    entry = report[0]
    assert entry["up_ladders"] == 2
    assert entry["meridian"] == [-1, -2]
    assert entry["intersection"] == 2
    assert entry["prongs"] == 4
    assert entry["index"] == -2
    assert entry["ladderpole_intersection"] == 8
    assert report.strict
    assert report.as_dict()["gamma_coefficients"] == [0]


def test_tube_report_not_strict():
    tri = load_f8()
    tubes = vc.tubes_from_dict(
        {"cusps": [{"id": 0, "kind": "solid", "meridian": [3, 1]}]}, 1)
    with pytest.warns(vc.NotStrictWarning):
        report = vc.tube_report(tri, tubes)
    assert not report.strict
    assert report[0]["index"] == 0


def test_strictness_grid():
    tri = load_f8()
    cusps = vc.build_cusps(tri)
    for p in range(-4, 5):
        for q in range(-4, 5):
            if q == 0 or gcd(p, q) != 1:
                continue
            tubes = vc.TubeSystem([vc.Tube(0, "solid", (p, q))], 1)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", vc.NotStrictWarning)
                report = vc.tube_report(tri, tubes, cusps)
            entry = report[0]
            assert report.strict == (2 * abs(q) >= 3)
            assert report.strict == (entry["ladderpole_intersection"] >= 6)


def test_hollow_tubes():
    tri = load_f8()
    tubes = vc.tubes_from_dict({"cusps": [{"id": 0, "kind": "hollow"}]}, 1)
    report = vc.tube_report(tri, tubes)
    assert report.strict
    assert report[0]["kind"] == "hollow"
    assert tubes.as_dict() == {"cusps": [{"id": 0, "kind": "hollow"}]}


def test_meridian_orientation():
    # both orientations of a meridian describe the same filling
    for mer in ([1, -1], [-1, 1]):
        tubes = vc.tubes_from_dict(
            {"cusps": [{"id": 0, "kind": "solid", "meridian": mer}]}, 1)
        assert tubes[0].meridian == (1, -1)
        assert tubes[0].lambda_intersection() == 1
    assert vc.Tube(0, "solid", (3, 2)).meridian == (-3, -2)
    assert vc.Tube(0, "hollow").meridian is None


def test_unknown_cusp_ids():
    tubes = vc.TubeSystem([vc.Tube(2, "hollow")])
    assert tubes.check_cusps(3) is tubes
    with pytest.raises(vc.TubeSystemError):
        tubes.check_cusps(1)
    with pytest.raises(vc.TubeSystemError):
        vc.TubeSystem([vc.Tube(-1, "hollow")])
    with pytest.raises(vc.TubeSystemError):
        vc.TubeSystem([], 1)[1]
    with pytest.raises(vc.TubeSystemError):
        vc.TubeSystem([], 2).check_cusps(1)
    tri = load_f8()
    with pytest.raises(vc.TubeSystemError):
        carry.carried_surface(tri, [0, 1, 0, 1], tubes=tubes)


@pytest.mark.parametrize("doc", [
    {"cusps": [{"id": 0, "kind": "solid", "meridian": [2, 4]}]},
    {"cusps": [{"id": 0, "kind": "solid", "meridian": [1, 0]}]},
    {"cusps": [{"id": 0, "kind": "solid"}]},
    {"cusps": [{"id": 0, "kind": "filled"}]},
    {"cusps": [{"id": 3, "kind": "hollow"}]},
    {"cusps": [{"id": 0, "kind": "hollow"}, {"id": 0, "kind": "hollow"}]},
    {"cusps": [{"id": 0, "kind": "solid", "meridian": [True, -1]}]},
    {"cusps": [{"id": True, "kind": "hollow"}]},
    {"cusps": [{"id": -1, "kind": "hollow"}]},
    {"cusps": [{"id": "0", "kind": "hollow"}]},
    {"tubes": []},
])
def test_tube_file_errors(doc):
    with pytest.raises(vc.TubeSystemError):
        vc.tubes_from_dict(doc, 1)


if __name__ == "__main__":
    # Run all tests
    _loc = locals()
    for _key in sorted(list(_loc.keys())):
        if _key.startswith("test_") and hasattr(_loc[_key], "__call__"):
            _loc[_key]()
