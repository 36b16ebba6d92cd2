"""The directed dual graph Γ and its cone of directed cycles"""
import itertools
import logging
import warnings
from fractions import Fraction
from math import gcd

import networkx as nx
from sympy import Matrix
from sympy.solvers.simplex import InfeasibleLPError, linprog

from . import homology
from . import snf
from .triangulation import require_valid


logger = logging.getLogger(__name__)

#: default limit for simple-cycle enumeration
CYCLE_CAP = 10000


class DualGraphError(RuntimeError):
    pass


class DeskScaleError(ValueError):
    """Cycle enumeration exceeds the cap"""
    pass


class DeskScaleWarning(UserWarning):
    pass


class DualGraph(object):
    def __init__(self, nvertices, edges):
        """Directed multigraph with integer edge keys

        Parameters
        ----------
        nvertices: int
            vertices are 0..nvertices-1
        edges: list of (int, int)
            edge k runs from ``edges[k][0]`` to ``edges[k][1]``
        """
        self.nvertices = nvertices
        self.edges = [tuple(e) for e in edges]
        self.graph = nx.MultiDiGraph()
        self.graph.add_nodes_from(range(nvertices))
        for k, (x, y) in enumerate(self.edges):
            self.graph.add_edge(x, y, key=k)

    def __repr__(self):
        return "<DualGraph vertices={} edges={}>".format(
            self.nvertices, len(self.edges))

    def is_strongly_connected(self):
        return self.nvertices > 0 and nx.is_strongly_connected(self.graph)

    def degrees(self):
        """(in-degree, out-degree) per vertex"""
        return [(self.graph.in_degree(v), self.graph.out_degree(v))
                for v in range(self.nvertices)]

    def subdivided(self):
        """Simple digraph with a midpoint node ("e", k) on every edge"""
        G = nx.DiGraph()
        G.add_nodes_from(range(self.nvertices))
        for k, (x, y) in enumerate(self.edges):
            G.add_edge(x, ("e", k))
            G.add_edge(("e", k), y)
        return G

    def is_closed_walk(self, walk):
        for k, e in enumerate(walk):
            nxt = walk[(k + 1) % len(walk)]
            if self.edges[e][1] != self.edges[nxt][0]:
                return False
        return bool(walk)

    def to_dot(self, name="Gamma", labels=None):
        """Graphviz DOT text of the graph"""
        lines = ["digraph {} {{".format(name)]
        for v in self.graph.nodes:
            lines.append('  {} [label="T{}"];'.format(v, v))
        for x, y, k in sorted(self.graph.edges(keys=True),
                              key=lambda e: e[2]):
            label = k if labels is None else labels[k]
            lines.append('  {} -> {} [label="{}"];'.format(x, y, label))
        lines.append("}")
        return "\n".join(lines) + "\n"


def dual_graph(tri):
    """Γ: one vertex per tetrahedron, face f runs from below(f) to above(f)

    Raises
    ------
    DualGraphError
        if a vertex does not have two incoming and two outgoing
        edges or Γ is not strongly connected
    """
    require_valid(tri)
    G = DualGraph(len(tri.tets),
                  [(tri.below(f.id), tri.above(f.id)) for f in tri.faces])
    for v, (din, dout) in enumerate(G.degrees()):
        if (din, dout) != (2, 2):
            raise DualGraphError(
                "Tetrahedron {} has in/out degree {}/{} in the dual "
                "graph!".format(v, din, dout))
    if not G.is_strongly_connected():
        raise DualGraphError("The dual graph is not strongly connected!")
    return G


def canonical_cycle(walk):
    """Rotate a closed walk to start at its smallest edge"""
    k = walk.index(min(walk))
    return list(walk[k:]) + list(walk[:k])


def simple_cycles(G, cap=CYCLE_CAP):
    """All simple directed cycles of `G`, deterministically ordered

    Parameters
    ----------
    G: DualGraph
    cap: int
        enumeration limit (>= 1)

    Returns
    -------
    cycles: list of list of int
        edge ids in traversal order, starting at the smallest id
    truncated: bool
        whether more than `cap` cycles exist
    """
    if cap < 1:
        raise ValueError("The cycle cap must be at least 1!")
    gen = nx.simple_cycles(G.subdivided())
    found = list(itertools.islice(gen, cap + 1))
    truncated = len(found) > cap
    cycles = []
    for nodes in found[:cap]:
        walk = [n[1] for n in nodes if isinstance(n, tuple)]
        cycles.append(canonical_cycle(walk))
    cycles.sort()
    if truncated:
        warnings.warn("Cycle enumeration truncated at {} cycles.".format(cap),
                      DeskScaleWarning)
    logger.debug("Enumerated %d simple cycles (truncated=%s)",
                 len(cycles), truncated)
    return cycles, truncated


def _initialize(nvertices):
    # super-source: every vertex starts at distance 0
    d = [0] * nvertices
    p = [None] * nvertices
    return d, p


def _relax(edge, weight, d, p):
    u, v, f = edge
    if d[v] > d[u] + weight:
        d[v] = d[u] + weight
        p[v] = (u, f)
        return True
    return False


def shortest_potentials(tri, w0, seed=0):
    """Bellman-Ford on the difference constraints c(below) - c(above) <= w0

    Returns
    -------
    d: list of int or None
        potential on tetrahedra, None if a negative cycle exists
    cycle: list of int or None
        faces of a negative cycle in Γ traversal order
    """
    n = len(tri.tets)
    order = [f.id for f in tri.faces]
    if order:
        shift = seed % len(order)
        order = order[shift:] + order[:shift]
    # constraint edges run above -> below
    edges = [(tri.above(f), tri.below(f), f) for f in order]
    d, p = _initialize(n)
    changed = None
    for _ in range(n):
        changed = None
        for e in edges:
            if _relax(e, w0[e[2]], d, p):
                changed = e[1]
        if changed is None:
            return d, None
    # walk back n steps to land on the cycle
    x = changed
    for _ in range(n):
        x = p[x][0]
    cycle = []
    cur = x
    while True:
        u, f = p[cur]
        cycle.append(f)
        cur = u
        if cur == x:
            break
    return None, canonical_cycle(cycle)


class ConeCertificate(object):
    def __init__(self, verdict, weights, witness, potential=None,
                 interior=None, scale=1):
        #: "member" or "non-member"
        self.verdict = verdict
        #: the queried representative w0
        self.weights = list(weights)
        #: member: nonnegative cocycle; non-member: faces of a cycle
        self.witness = list(witness)
        self.potential = potential
        #: strict interiority (None if unknown)
        self.interior = interior
        #: common denominator cleared from rational input
        self.scale = scale

    def __repr__(self):
        return "<ConeCertificate {} witness={}>".format(
            self.verdict, self.witness)

    @property
    def member(self):
        return self.verdict == "member"

    @property
    def pairing(self):
        """<z, u> of the non-member cycle"""
        if self.member:
            return None
        return Fraction(sum(self.weights[f] for f in self.witness),
                        self.scale)

    def as_dict(self):
        doc = {"verdict": self.verdict,
               "interior": self.interior,
               }
        if self.member:
            doc["witness"] = [Fraction(x, self.scale) for x in self.witness]
        else:
            doc["witness"] = {"cycle": self.witness,
                              "pairing": self.pairing}
        return doc


def clear_denominators(weights):
    """Integer weights and the common denominator of rational input"""
    fr = [Fraction(x) for x in weights]
    scale = 1
    for x in fr:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    return [int(x * scale) for x in fr], scale


def cone_membership(tri, u, seed=0, tubes=None, ambient="cusped",
                    cusps=None, cap=CYCLE_CAP):
    """Decide u in cone_1^∨(Γ) with a verifiable certificate

    Parameters
    ----------
    tri: VeeringTriangulation
    u: list of int or Fraction
        face weights of a cocycle representing the class
    seed: int
        rotates the relaxation order; positive seeds also start from
        a shifted representative
    tubes: TubeSystem
        required for ``ambient="filled"``
    ambient: str
        "cusped" or "filled"
    cap: int
        cycle cap for the strict interiority check

    Returns
    -------
    cert: ConeCertificate

    Raises
    ------
    CocycleError
        if `u` violates a fan equation
    FilledSubspaceError
        if ``ambient="filled"`` and `u` does not extend
    """
    w0, scale = clear_denominators(u)
    w0 = homology.check_cocycle(tri, w0)
    if ambient == "filled":
        if tubes is None:
            raise ValueError("The filled ambient needs a tube system!")
        homology.require_filled(tri, w0, tubes, cusps)
    elif ambient != "cusped":
        raise ValueError("Unknown ambient '{}'!".format(ambient))
    base = list(w0)
    if seed > 0 and tri.tets:
        unit = [0] * len(tri.tets)
        unit[(seed - 1) % len(tri.tets)] = 1
        base = [x + y for x, y in zip(base, homology.coboundary(tri, unit))]
    d, cycle = shortest_potentials(tri, base, seed)
    if cycle is not None:
        logger.info("Non-member: cycle %s pairs to %d", cycle,
                    sum(w0[f] for f in cycle))
        return ConeCertificate("non-member", w0, cycle, interior=False,
                               scale=scale)
    witness = [x + y for x, y in zip(base, homology.coboundary(tri, d))]
    cert = ConeCertificate("member", w0, witness, potential=d, scale=scale)
    cycles, truncated = simple_cycles(dual_graph(tri), cap)
    if not truncated:
        cert.interior = all(sum(w0[f] for f in z) > 0 for z in cycles)
    return cert


def verify_certificate(tri, u, cert):
    """Re-check a certificate without the shortest-path solver

    Returns
    -------
    ok: bool
    reason: str
        empty when `ok`
    """
    u, scale = clear_denominators(u)
    if scale != cert.scale:
        return False, "scale mismatch"
    faces = tri.faces
    if cert.member:
        w = [int(x) for x in cert.witness]
        if len(w) != len(faces):
            return False, "witness has the wrong length"
        if any(x < 0 for x in w):
            return False, "witness has a negative weight"
        for edge in tri.edges:
            lhs = sum(w[f] for f in edge.fans[0])
            rhs = sum(w[f] for f in edge.fans[1])
            if lhs != rhs:
                return False, "fan equation fails at edge {}".format(edge.id)
        diff = [x - y for x, y in zip(w, u)]
        if snf.solve_integer(homology.coboundary_matrix(tri), diff) is None:
            return False, "witness is not in the class"
        return True, ""
    walk = [int(f) for f in cert.witness]
    if not walk:
        return False, "empty cycle"
    if any(not 0 <= f < len(faces) for f in walk):
        return False, "unknown face in cycle"
    for k, f in enumerate(walk):
        nxt = walk[(k + 1) % len(walk)]
        if tri.above(f) != tri.below(nxt):
            return False, "cycle is not closed at face {}".format(f)
    if sum(u[f] for f in walk) >= 0:
        return False, "cycle pairing is not negative"
    return True, ""


def cycle_classes(tri, cycles, basis):
    """Coordinates <z, u_k> of every cycle against the basis cocycles"""
    return [[sum(u[f] for f in z) for u in basis] for z in cycles]


def project_classes(classes, directions):
    """Pair class coordinates with integer `directions` (filled ambient)"""
    return [[sum(a * b for a, b in zip(g, row)) for row in directions]
            for g in classes]


def primitive(v):
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return tuple(int(x) // g for x in v) if g else tuple(v)


def in_cone(target, generators):
    """Whether `target` is a nonnegative combination of `generators`"""
    if not any(target):
        return True
    if not generators:
        return False
    G = Matrix([list(g) for g in generators]).T
    A = G.col_join(-G)
    b = Matrix(list(target) + [-x for x in target])
    try:
        linprog([0] * len(generators), A, b)
    except InfeasibleLPError:
        return False
    return True


class ConeFaceSummary(object):
    def __init__(self, lineality_dim, extreme_rays, ambient, ngenerators,
                 dimension):
        self.lineality_dim = lineality_dim
        self.face_codim = lineality_dim
        #: primitive ray generators, None unless the cone is pointed
        self.extreme_rays = extreme_rays
        self.ambient = ambient
        self.ngenerators = ngenerators
        self.dimension = dimension

    def __repr__(self):
        return "<ConeFaceSummary lineality={} rays={}>".format(
            self.lineality_dim, self.extreme_rays)

    def as_dict(self):
        return {"lineality_dim": self.lineality_dim,
                "face_codim": self.face_codim,
                "extreme_rays": self.extreme_rays,
                "ambient": self.ambient,
                "generators": self.ngenerators,
                "dimension": self.dimension,
                }


def cone_summary(generators, ambient="cusped", dimension=None):
    """Lineality and extreme rays of the cone spanned by integer vectors"""
    gens = sorted({primitive(g) for g in generators if any(g)})
    if dimension is None:
        dimension = len(gens[0]) if gens else 0
    lineal = [g for g in gens if in_cone([-x for x in g], gens)]
    lineality = snf.rank([list(g) for g in lineal]) if lineal else 0
    rays = None
    if lineality == 0:
        rays = [list(g) for g in gens
                if not in_cone(g, [h for h in gens if h != g])]
    return ConeFaceSummary(lineality, rays, ambient, len(gens), dimension)


def cone_face(tri, tubes=None, ambient="cusped", cap=CYCLE_CAP, cusps=None,
              summary=None):
    """Face of the Thurston norm ball dual to the cycle cone

    Raises
    ------
    DeskScaleError
        if Γ has more than `cap` simple cycles
    """
    if summary is None:
        summary = homology.homology_summary(tri)
    cycles, truncated = simple_cycles(dual_graph(tri), cap)
    if truncated:
        raise DeskScaleError(
            "Exceeds desk scale: more than {} simple cycles in the dual "
            "graph!".format(cap))
    classes = cycle_classes(tri, cycles, summary.basis)
    if ambient == "filled":
        if tubes is None:
            raise ValueError("The filled ambient needs a tube system!")
        directions = homology.filled_basis(tri, summary, tubes, cusps)
        classes = project_classes(classes, directions)
        dimension = len(directions)
    elif ambient == "cusped":
        dimension = summary.betti_1
    else:
        raise ValueError("Unknown ambient '{}'!".format(ambient))
    result = cone_summary(classes, ambient, dimension)
    logger.debug("Cone face: %r", result)
    return result
