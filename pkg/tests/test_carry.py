"""Test carried surfaces, the norm formula and upward flips"""
from fractions import Fraction

import numpy as np
import pytest

from veerweave import carry, homology, transverse
from veerweave.cusp import TubeSystem, build_cusps

from helper_methods import enumerate_cocycles, load_f8


def test_f8_carried_surface():
    tri = load_f8()
    surface = carry.carried_surface(tri, [0, 1, 0, 1])
    assert surface.euler_char == -1
    assert surface.total_weight == 2
    assert sum(surface.fan_sums) == 3
    assert not surface.empty
    assert surface.gamma_pairing == 0
    boundary = surface.boundaries[0]
    assert boundary.kind == "hollow"
    cusp = build_cusps(tri)[0]
    assert boundary.restriction == homology.restrict_to_cusp([0, 1, 0, 1],
                                                             cusp)
    doc = surface.as_dict()
    assert doc["euler_char"] == -1
    assert len(doc["cusps"]) == 1


def test_boundary_multicurve():
    tri = load_f8()
    cusp = build_cusps(tri)[0]
    w = [0, 1, 0, 1]
    boundary = carry.boundary_multicurve(tri, TubeSystem([], 1), w, cusp)
    assert boundary.kind == "hollow"
    assert boundary.core_pairing == 0
    assert boundary.prongs is None
    assert boundary.restriction == homology.restrict_to_cusp(w, cusp)
    assert sorted(boundary.boundary_curves + [
        boundary.ladder_curves[k] for p in boundary.pairs for k in p]) == \
        list(range(len(boundary.components)))


def test_empty_surface():
    tri = load_f8()
    surface = carry.carried_surface(tri, [0, 0, 0, 0])
    assert surface.empty
    assert surface.euler_char == 0


def test_negative_weights():
    tri = load_f8()
    with pytest.raises(carry.CarryError):
        carry.carried_surface(tri, [0, -1, 0, -1])
    with pytest.raises(homology.CocycleError):
        carry.carried_surface(tri, [1, 0, 0, 0])


def test_euler_identity():
    # faces - edges agrees with the Euler class for every carried cocycle
    tri = load_f8()
    found = enumerate_cocycles(tri, 6)
    assert found
    for w in found:
        chi = carry.euler_characteristic(tri, w, 0)
        assert Fraction(chi) == carry.euler_class_value(w, 0)


def test_euler_identity_random():
    tri = load_f8()
    gens = [w for w in enumerate_cocycles(tri, 2) if any(w)]
    state = np.random.RandomState(3)
    for _ in range(10000):
        coeffs = [int(c) for c in state.randint(0, 50, size=len(gens))]
        w = [sum(c * g[f] for c, g in zip(coeffs, gens))
             for f in range(len(tri.faces))]
        cores = int(state.randint(0, 5))
        chi = carry.euler_characteristic(tri, w, cores)
        assert Fraction(chi) == carry.euler_class_value(w, cores)


def test_minimal_weight():
    tri = load_f8()
    summary = homology.homology_summary(tri)
    weights = [sum(w) for w in enumerate_cocycles(tri, 6)
               if homology.class_coordinates(tri, summary, w) == [1]]
    assert min(weights) == 2


def test_thurston_norm():
    tri = load_f8()
    result = carry.thurston_norm(tri, [0, 1, 0, 1])
    assert result.member
    assert result.value == Fraction(1)
    assert result.gamma_total == 2
    assert result.gamma_pairing == 0
    doc = result.as_dict()
    assert doc["verdict"] == "member"
    assert doc["note"] == "e_phi = e_tau"
    assert doc["certificate"]["euler_char"] == -1
    # norm scales linearly along the cone
    assert carry.thurston_norm(tri, [0, 3, 0, 3]).value == 3
    half = carry.thurston_norm(tri, [0, Fraction(1, 2), 0, Fraction(1, 2)])
    assert half.value == Fraction(1, 2)


def test_thurston_norm_off_cone():
    tri = load_f8()
    result = carry.thurston_norm(tri, [0, -1, 0, -1])
    assert not result.member
    assert result.value is None
    assert result.as_dict()["cone"]["verdict"] == "non-member"


def test_euler_class():
    tri = load_f8()
    directions, values = carry.euler_class(tri)
    assert directions == [[1]]
    assert values == [Fraction(-1)]


def test_flip_up():
    tri = load_f8()
    assert carry.flip_up(tri, [0, 1, 0, 1], 1) == [1, 0, 1, 0]
    assert carry.flip_up(tri, [1, 0, 1, 0], 0) == [0, 1, 0, 1]
    with pytest.raises(carry.FlipUnavailableError):
        carry.flip_up(tri, [0, 1, 0, 1], 0)


def test_flip_walk():
    tri = load_f8()
    positions, repeated = carry.flip_walk(tri, [0, 1, 0, 1])
    assert repeated
    assert positions == [[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1]]
    positions, repeated = carry.flip_walk(tri, [0, 0, 0, 0])
    assert not repeated
    assert positions == [[0, 0, 0, 0]]


def test_innermost_pairs():
    assert carry.innermost_pairs([1, -1, 1, -1]) == ([(0, 1), (2, 3)], [])
    assert carry.innermost_pairs([1, -1, 1, -1], seed=1) == \
        ([(0, 3), (1, 2)], [])
    assert carry.innermost_pairs([1, 1]) == ([], [0, 1])
    assert carry.innermost_pairs([]) == ([], [])


def test_check_completion():
    signs = [1, -1, 1, -1]
    assert carry.check_completion(signs, [(3, 0), (1, 2)]) == [(0, 3),
                                                               (1, 2)]
    with pytest.raises(carry.CarryError):
        carry.check_completion(signs, [(0, 2)])
    with pytest.raises(carry.CarryError):
        carry.check_completion(signs, [(0, 1), (0, 3)])
    with pytest.raises(carry.CarryError):
        carry.check_completion(signs, [(0, 5)])
    with pytest.raises(carry.CarryError):
        carry.check_completion([1, 1, -1, -1], [(0, 2), (1, 3)])


def _hollow_boundary(pairs, boundary_curves=()):
    # four ladderpole curves: +λ twice on pole 0, -λ on poles 1 and 2
    cusp = build_cusps(load_f8())[0]
    comps = [carry.BoundaryComponent([], {}, (1, 0), pole=0, position=0),
             carry.BoundaryComponent([], {}, (-1, 0), pole=1, position=0),
             carry.BoundaryComponent([], {}, (1, 0), pole=0, position=1),
             carry.BoundaryComponent([], {}, (-1, 0), pole=2, position=0)]
    return carry.CuspBoundary(cusp, TubeSystem([], 1)[0], comps,
                              [0, 2, 1, 3], pairs, boundary_curves)


def test_annulus_move_drops_curves():
    boundary = _hollow_boundary([(0, 3), (1, 2)]).check()
    surface = carry.CarriedSurface([0, 1, 0, 1], [boundary], -1, [1, 2])
    efficient = transverse.efficient_position(surface)
    after = efficient.boundaries[0]
    # the annulus between poles 0 and 1 leaves the tube
    assert after.absorbed == [1, 2]
    assert after.ladder_curves == [0, 3]
    assert after.pairs == [(0, 1)]
    assert after.restriction == boundary.restriction == (0, 0)
    assert after.as_dict()["absorbed"] == [1, 2]
    assert efficient.euler_char == -1
    assert not transverse.removable_pairs(after.tube_boundary())
    # the input surface is left alone
    assert boundary.pairs == [(0, 3), (1, 2)]
    assert boundary.absorbed == []
    with pytest.raises(carry.CarryError):
        boundary.without_annuli([(0, 1)])


def test_completion_must_match_curves():
    with pytest.raises(carry.CarryError):
        _hollow_boundary([(1, 2)]).check()
    assert _hollow_boundary([(1, 2)], [0, 3]).check().pairs == [(1, 2)]
    with pytest.raises(carry.CarryError):
        carry.check_completion([1, -1, 1, -1], [(0, 1)], complete=True)
    assert carry.check_completion([1, -1, 1, -1], [(0, 1), (2, 3)],
                                  complete=True) == [(0, 1), (2, 3)]


def test_tube_boundary():
    tb = carry.TubeBoundary(0, 2, [(0, 1), (1, -1)], [(0, 1)], prongs=4)
    assert tb.npoles == 4
    assert tb.as_dict() == {"cusp": 0, "up_ladders": 2,
                            "curves": [[0, 1], [1, -1]],
                            "pairs": [[0, 1]]}


if __name__ == "__main__":
    # Run all tests
    _loc = locals()
    for _key in sorted(list(_loc.keys())):
        if _key.startswith("test_") and hasattr(_loc[_key], "__call__"):
            _loc[_key]()
