"""Test the dual graph, cone membership certificates and cone faces"""
from fractions import Fraction

import numpy as np
import pytest

from veerweave import flowgraph as fg
from veerweave import homology
from veerweave.cusp import Tube, TubeSystem, build_cusps

from helper_methods import (all_cycles_verdict, all_simple_cycles, load_f8,
                            random_class)


def test_dual_graph():
    tri = load_f8()
    G = fg.dual_graph(tri)
    assert G.nvertices == 2
    assert G.edges == [(1, 0), (0, 1), (1, 0), (0, 1)]
    assert G.degrees() == [(2, 2), (2, 2)]
    assert G.is_strongly_connected()
    assert G.is_closed_walk([0, 1])
    assert not G.is_closed_walk([0, 2])
    assert not G.is_closed_walk([])
    dot = G.to_dot()
    assert dot.startswith("digraph Gamma {")
    assert dot.count("->") == 4


def test_dual_graph_degree_error():
    G = fg.DualGraph(2, [(0, 1), (1, 0), (0, 1)])
    assert G.degrees() == [(1, 2), (2, 1)]
    assert not fg.DualGraph(2, [(0, 1)]).is_strongly_connected()


def test_simple_cycles():
    tri = load_f8()
    cycles, truncated = fg.simple_cycles(fg.dual_graph(tri))
    assert not truncated
    assert cycles == [[0, 1], [0, 3], [1, 2], [2, 3]]
    assert sorted(fg.canonical_cycle(z) for z in all_simple_cycles(tri)) \
        == cycles


def test_simple_cycles_truncated():
    tri = load_f8()
    with pytest.warns(fg.DeskScaleWarning):
        cycles, truncated = fg.simple_cycles(fg.dual_graph(tri), cap=2)
    assert truncated
    assert len(cycles) == 2
    with pytest.raises(ValueError):
        fg.simple_cycles(fg.dual_graph(tri), cap=0)


def test_member():
    tri = load_f8()
    cert = fg.cone_membership(tri, [0, 1, 0, 1])
    assert cert.member
    assert cert.witness == [0, 1, 0, 1]
    assert cert.interior is True
    assert cert.pairing is None
    assert fg.verify_certificate(tri, [0, 1, 0, 1], cert) == (True, "")
    doc = cert.as_dict()
    assert doc["verdict"] == "member"
    assert doc["witness"] == [0, 1, 0, 1]


def test_member_seed():
    tri = load_f8()
    cert = fg.cone_membership(tri, [0, 1, 0, 1], seed=1)
    assert cert.member
    assert cert.witness == [1, 0, 1, 0]
    assert fg.verify_certificate(tri, [0, 1, 0, 1], cert)[0]


def test_non_member():
    tri = load_f8()
    u = [0, -1, 0, -1]
    cert = fg.cone_membership(tri, u)
    assert not cert.member
    assert cert.interior is False
    assert tri.above(cert.witness[-1]) == tri.below(cert.witness[0])
    assert cert.pairing == -1
    assert fg.verify_certificate(tri, u, cert) == (True, "")
    doc = cert.as_dict()
    assert doc["verdict"] == "non-member"
    assert doc["witness"]["pairing"] == -1


def test_zero_class():
    tri = load_f8()
    cert = fg.cone_membership(tri, [0, 0, 0, 0])
    assert cert.member
    # a zero pairing with every cycle is not interior
    assert cert.interior is False


def test_rational_class():
    tri = load_f8()
    u = [0, Fraction(1, 2), 0, Fraction(1, 2)]
    cert = fg.cone_membership(tri, u)
    assert cert.member
    assert cert.scale == 2
    assert cert.as_dict()["witness"] == [0, Fraction(1, 2), 0,
                                         Fraction(1, 2)]
    assert fg.verify_certificate(tri, u, cert)[0]
    assert fg.clear_denominators([Fraction(1, 3), Fraction(1, 2)]) == \
        ([2, 3], 6)


def test_tampered_certificates():
    tri = load_f8()
    u = [0, 1, 0, 1]
    cert = fg.cone_membership(tri, u)
    cert.witness = [0, 2, 0, 2]
    assert fg.verify_certificate(tri, u, cert) == \
        (False, "witness is not in the class")
    cert.witness = [1, 0, 0, 0]
    assert not fg.verify_certificate(tri, u, cert)[0]
    cert.witness = [-1, 2, -1, 2]
    assert fg.verify_certificate(tri, u, cert) == \
        (False, "witness has a negative weight")
    neg = fg.cone_membership(tri, [0, -1, 0, -1])
    neg.witness = [0, 2]
    assert not fg.verify_certificate(tri, [0, -1, 0, -1], neg)[0]
    # a correct cycle for a class that pairs positively
    neg.witness = [0, 1]
    assert fg.verify_certificate(tri, u, neg) == \
        (False, "cycle pairing is not negative")


def test_cocycle_error():
    tri = load_f8()
    with pytest.raises(homology.CocycleError):
        fg.cone_membership(tri, [1, 0, 0, 0])


def test_brute_force_agreement():
    tri = load_f8()
    summary = homology.homology_summary(tri)
    state = np.random.RandomState(12)
    for k in range(200):
        u, _ = random_class(tri, summary, state)
        cert = fg.cone_membership(tri, u, seed=k % 5)
        assert cert.member == all_cycles_verdict(tri, u)
        ok, reason = fg.verify_certificate(tri, u, cert)
        assert ok, reason


def test_filled_ambient_needs_tubes():
    tri = load_f8()
    with pytest.raises(ValueError):
        fg.cone_membership(tri, [0, 1, 0, 1], ambient="filled")
    with pytest.raises(ValueError):
        fg.cone_membership(tri, [0, 1, 0, 1], ambient="closed")


def test_filled_ambient_rejects_non_extending_class():
    tri = load_f8()
    cusps = build_cusps(tri)
    u = [0, 1, 0, 1]
    c = homology.restrict_to_cusp(u, cusps[0])
    if c == (0, 0):
        pytest.skip("u restricts trivially to the cusp")
    meridian = [m for m in [(0, 1), (1, 1), (-1, 1)]
                if homology.meridian_pairing(c, m) != 0][0]
    tubes = TubeSystem([Tube(0, "solid", meridian)], 1)
    with pytest.raises(homology.FilledSubspaceError):
        fg.cone_membership(tri, u, tubes=tubes, ambient="filled",
                           cusps=cusps)


def test_in_cone():
    assert fg.in_cone([1, 1], [(1, 0), (0, 1)])
    assert not fg.in_cone([-1, 0], [(1, 0), (0, 1)])
    assert fg.in_cone([0, 0], [])
    assert not fg.in_cone([1], [])
    assert fg.primitive([4, -6]) == (2, -3)
    assert fg.primitive([0, 0]) == (0, 0)


def test_cone_summary():
    pointed = fg.cone_summary([[1, 0], [0, 2], [1, 1]])
    assert pointed.lineality_dim == 0
    assert pointed.extreme_rays == [[0, 1], [1, 0]]
    line = fg.cone_summary([[1, 0], [-1, 0], [0, 1]])
    assert line.lineality_dim == 1
    assert line.extreme_rays is None


def test_cone_face():
    tri = load_f8()
    face = fg.cone_face(tri)
    assert face.lineality_dim == 0
    assert face.extreme_rays == [[1]]
    assert face.dimension == 1
    assert face.ngenerators == 1
    assert face.as_dict()["ambient"] == "cusped"


def test_cone_face_cap():
    tri = load_f8()
    with pytest.warns(fg.DeskScaleWarning):
        with pytest.raises(fg.DeskScaleError):
            fg.cone_face(tri, cap=3)


if __name__ == "__main__":
    # Run all tests
    _loc = locals()
    for _key in sorted(list(_loc.keys())):
        if _key.startswith("test_") and hasattr(_loc[_key], "__call__"):
            _loc[_key]()
