"""Integer (co)homology of the cusped manifold via the dual spine

The dual 2-complex has a vertex per tetrahedron, an edge per face
(directed along the coorientation) and a 2-cell per edge class whose
boundary is the fan relation. Cocycles are integer weights on faces.
"""
import logging
from fractions import Fraction

import numpy as np
from networkx.utils import UnionFind

from . import snf
from .cusp import CuspChain, build_cusps
from .triangulation import require_valid


logger = logging.getLogger(__name__)


class CocycleError(ValueError):
    """Fan equation violated"""
    pass


class CycleError(ValueError):
    """Curve not closed"""
    pass


class FilledSubspaceError(ValueError):
    """Class does not extend over the solid tubes"""
    pass


def fan_matrix(tri):
    """δ1: rows = edges, +1 on fan_A faces and -1 on fan_B faces"""
    require_valid(tri)
    M = np.zeros((len(tri.edges), len(tri.faces)), dtype=object)
    for edge in tri.edges:
        fan_a, fan_b = edge.fans
        for f in fan_a:
            M[edge.id, f] += 1
        for f in fan_b:
            M[edge.id, f] -= 1
    return M


def coboundary_matrix(tri):
    """δ0: δc(f) = c(above f) - c(below f)"""
    M = np.zeros((len(tri.faces), len(tri.tets)), dtype=object)
    for face in tri.faces:
        M[face.id, tri.above(face.id)] += 1
        M[face.id, tri.below(face.id)] -= 1
    return M


def as_weights(tri, w):
    out = []
    for x in w:
        x = Fraction(x)
        if x.denominator != 1:
            raise CocycleError("Face weights must be integers, got {}!".format(
                x))
        out.append(int(x))
    if len(out) != len(tri.faces):
        raise CocycleError("Expected {} face weights, got {}!".format(
            len(tri.faces), len(out)))
    return out


def fan_sums(tri, w):
    """Common fan sum W(e) of every edge (fan_A side)"""
    return [sum(w[f] for f in edge.fans[0]) for edge in tri.edges]


def check_cocycle(tri, w):
    """Return `w` as a list of ints or raise CocycleError"""
    require_valid(tri)
    w = as_weights(tri, w)
    for edge in tri.edges:
        fan_a, fan_b = edge.fans
        sa = sum(w[f] for f in fan_a)
        sb = sum(w[f] for f in fan_b)
        if sa != sb:
            raise CocycleError(
                "Fan equation violated at edge {}: {} != {}!".format(
                    edge.id, sa, sb))
    return w


def is_cocycle(tri, w):
    try:
        check_cocycle(tri, w)
    except CocycleError:
        return False
    return True


def coboundary(tri, c):
    """Face weights δc of a potential on tetrahedra"""
    return [c[tri.above(f.id)] - c[tri.below(f.id)] for f in tri.faces]


def spanning_tree_faces(tri):
    """Faces of a spanning tree of Γ picked by ascending face id"""
    uf = UnionFind(range(len(tri.tets)))
    tree = []
    for face in tri.faces:
        x, y = tri.below(face.id), tri.above(face.id)
        if uf[x] != uf[y]:
            uf.union(x, y)
            tree.append(face.id)
    return tree


def tree_potential(tri, w, tree=None):
    """Potential c with (w + δc)(f) = 0 on the spanning tree, c(0) = 0"""
    if tree is None:
        tree = spanning_tree_faces(tri)
    c = {0: 0}
    pending = list(tree)
    while pending:
        rest = []
        for f in pending:
            b, a = tri.below(f), tri.above(f)
            if b in c and a not in c:
                c[a] = c[b] - w[f]
            elif a in c and b not in c:
                c[b] = c[a] + w[f]
            elif a not in c:
                rest.append(f)
        if len(rest) == len(pending):
            raise RuntimeError("Spanning tree is not connected!")
        pending = rest
    return [c[t] for t in range(len(tri.tets))]


def normalize(tri, w, tree=None):
    """The representative of [w] vanishing on the spanning tree"""
    c = tree_potential(tri, w, tree)
    return [x + d for x, d in zip(w, coboundary(tri, c))]


class HomologySummary(object):
    def __init__(self, betti_1, torsion, basis, tree, filled_conditions=None):
        self.betti_1 = betti_1
        #: invariant factors > 1 of H_1(N; Z)
        self.torsion = list(torsion)
        #: basis cocycles of H^1(N; Z), one list of face weights each
        self.basis = [list(u) for u in basis]
        self.tree = list(tree)
        #: per solid tube: coefficients of u -> <u, m> on the basis
        self.filled_conditions = filled_conditions or []

    def __repr__(self):
        return "<HomologySummary b1={} torsion={}>".format(
            self.betti_1, self.torsion)

    def as_dict(self):
        return {"betti_1": self.betti_1,
                "torsion": self.torsion,
                "basis": self.basis,
                "spanning_tree": self.tree,
                "filled_conditions": self.filled_conditions,
                }


def homology_summary(tri, tubes=None, cusps=None):
    """H^1 of the cusped manifold with a canonical cocycle basis

    The basis is the Hermite normal form of the integer cocycles
    vanishing on the spanning tree of Γ; it is reproducible from
    the face numbering alone.
    """
    require_valid(tri)
    d1 = fan_matrix(tri)
    tree = spanning_tree_faces(tri)
    free = [f.id for f in tri.faces if f.id not in tree]
    kernel = snf.integer_kernel(d1[:, free]) if free else []
    basis = []
    for row in kernel:
        u = [0] * len(tri.faces)
        for k, f in enumerate(free):
            u[f] = int(row[k])
        basis.append(u)
    d1snf = snf.smith_normal_form(d1)
    betti = len(tri.faces) - d1snf.rank - (len(tri.tets) - 1)
    if betti != len(basis):
        raise RuntimeError("Basis size {} differs from b1 = {}!".format(
            len(basis), betti))
    torsion = [d for d in d1snf.diagonal if d > 1]
    summary = HomologySummary(betti, torsion, basis, tree)
    if tubes is not None and tubes.solid:
        if cusps is None:
            cusps = build_cusps(tri)
        summary.filled_conditions = filled_conditions(
            tri, summary, tubes, cusps)
    logger.debug("Homology: %r", summary)
    return summary


def class_coordinates(tri, summary, w):
    """Basis coordinates of the class of a cocycle"""
    w = check_cocycle(tri, w)
    wn = normalize(tri, w, summary.tree)
    if not summary.basis:
        if any(wn):
            raise RuntimeError("Nonzero class in a trivial H^1!")
        return []
    A = np.array(summary.basis, dtype=object).T
    x = snf.solve_integer(A, wn)
    if x is None:
        raise RuntimeError("Cocycle {} is not in the span of the "
                           "basis!".format(w))
    return [int(v) for v in x]


def resolve_class(tri, summary, weights=None, coords=None):
    """Cocycle from either raw weights or basis coordinates"""
    if (weights is None) == (coords is None):
        raise ValueError("Give exactly one of weights and coordinates!")
    if weights is not None:
        return check_cocycle(tri, weights)
    if len(coords) != len(summary.basis):
        raise CocycleError("Expected {} class coordinates, got {}!".format(
            len(summary.basis), len(coords)))
    w = [0] * len(tri.faces)
    for k, u in zip(coords, summary.basis):
        k = Fraction(k)
        k = int(k) if k.denominator == 1 else k
        w = [x + k * y for x, y in zip(w, u)]
    return w


def total_pairing(w):
    """<Γ, w>: pairing with the full dual-graph 1-cycle"""
    return sum(w)


def pair_with_cycle(tri, w, z):
    """Pair a cocycle with a dual-graph cycle or a cusp curve

    Parameters
    ----------
    tri: VeeringTriangulation
    w: list of int
        face weights
    z: list of int or CuspChain
        either a closed walk in Γ given by its face ids in traversal
        order, or a dual cycle on a cusp torus

    Raises
    ------
    CycleError
        if `z` is not closed
    """
    if isinstance(z, CuspChain):
        if not z.is_closed():
            raise CycleError("Cusp curve is not closed!")
        return sum(c * w[z.cusp.sides[s].face] for s, c in z)
    z = [int(f) for f in z]
    for k, f in enumerate(z):
        nxt = z[(k + 1) % len(z)]
        if tri.above(f) != tri.below(nxt):
            raise CycleError(
                "Walk is not closed: face {} ends at tet {} but face {} "
                "starts at tet {}!".format(f, tri.above(f), nxt,
                                           tri.below(nxt)))
    return sum(w[f] for f in z)


def boundary_chain(cusp, w):
    """Primal boundary chain sum_s w(face(s)) s"""
    return {s.id: w[s.face] for s in cusp.sides if w[s.face]}


def restrict_to_cusp(w, cusp):
    """Class (a, b) = a·λ + b·ρ of the boundary multicurve of [w]

    Determined by î(c, x) = pair_with_cycle(w, x) for x in {λ, ρ}.
    """
    a = sum(c * w[cusp.sides[s].face] for s, c in cusp.rho)
    b = -sum(c * w[cusp.sides[s].face] for s, c in cusp.lam)
    return a, b


def meridian_pairing(restriction, meridian):
    """î(c, m) for c = (a, b) and m = (p, q)"""
    a, b = restriction
    p, q = meridian
    return a * q - b * p


def filled_conditions(tri, summary, tubes, cusps):
    """Per solid tube the functional u -> î(restrict(u), m) on the basis"""
    tubes.check_cusps(len(cusps))
    conditions = []
    for tube in tubes.solid:
        cusp = cusps[tube.cusp]
        conditions.append(
            {"cusp": tube.cusp,
             "coefficients": [meridian_pairing(restrict_to_cusp(u, cusp),
                                               tube.meridian)
                              for u in summary.basis],
             })
    return conditions


def filled_subspace_check(tri, w, tubes, cusps=None):
    """Whether `w` extends over the solid tubes, with core pairings

    Returns
    -------
    extends: bool
    cores: dict
        solid cusp id -> a_i = î(restrict(w), λ_i) / î(m_i, λ_i)
        (only when `extends` is True)
    """
    if cusps is None:
        cusps = build_cusps(tri)
    tubes.check_cusps(len(cusps))
    cores = {}
    for tube in tubes.solid:
        c = restrict_to_cusp(w, cusps[tube.cusp])
        if meridian_pairing(c, tube.meridian) != 0:
            return False, {}
        a_i = Fraction(-c[1], tube.lambda_intersection())
        if a_i.denominator != 1:
            raise RuntimeError(
                "Non-integral core pairing {} at cusp {}!".format(
                    a_i, tube.cusp))
        cores[tube.cusp] = int(a_i)
    return True, cores


def filled_basis(tri, summary, tubes, cusps=None):
    """Basis coordinates spanning the classes that extend over solid tubes"""
    if not tubes.solid:
        return [[int(i == k) for i in range(summary.betti_1)]
                for k in range(summary.betti_1)]
    if cusps is None:
        cusps = build_cusps(tri)
    conds = filled_conditions(tri, summary, tubes, cusps)
    M = np.array([c["coefficients"] for c in conds], dtype=object)
    if summary.betti_1 == 0:
        return []
    return [[int(x) for x in row] for row in snf.integer_kernel(M)]


def require_filled(tri, w, tubes, cusps=None):
    """Core pairings of `w`, or FilledSubspaceError if it does not extend"""
    extends, cores = filled_subspace_check(tri, w, tubes, cusps)
    if not extends:
        raise FilledSubspaceError(
            "Class {} pairs nonzero with a solid tube meridian!".format(w))
    return cores
