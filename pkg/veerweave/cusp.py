"""Cusp tori of a veering triangulation

Every tetrahedron is truncated at its four ideal vertices. The
truncation triangles ("tips") tessellate the cusp tori.

Conventions
-----------
- Tip ``(t, v)`` has its corners at the labels ``k != v`` (corner
  ``k`` lies on the edge ``{v, k}``) and its sides in the faces
  ``j != v``. Corners are listed counter-clockwise, i.e. such that
  ``(v, a, b, c)`` is an even permutation; side slot ``i`` runs from
  corner slot ``i`` to corner slot ``i + 1``.
- Every side separates the tip it is cooriented out of ("A", in the
  tetrahedron below the face) from the tip it is cooriented into
  ("B"). Dual curves cross sides with sign +1 from A to B.
- The canonical direction of a side is the counter-clockwise boundary
  direction of its B tip; primal chains are written in it.
- Intersections of a primal chain P with a dual chain x are
  ``sum_s P(s) * x(s)``.
"""
import logging
import warnings
from math import gcd

import networkx as nx

from . import snf
from .triangulation import is_int, perm_parity, require_valid


logger = logging.getLogger(__name__)

UP = "up"
DOWN = "down"


class CuspStructureError(RuntimeError):
    pass


class LadderError(RuntimeError):
    """Not a veering boundary pattern"""
    pass


class TubeSystemError(ValueError):
    pass


class NotStrictWarning(UserWarning):
    pass


def tip_frame(v):
    """Counter-clockwise corner labels of the tip at vertex `v`"""
    rest = tuple(k for k in range(4) if k != v)
    if perm_parity((v,) + rest):
        rest = (rest[0], rest[2], rest[1])
    return rest


class Tip(object):
    def __init__(self, tid, direction, corners, sides, outward,
                 owner=None, labels=None, pi_slot=None):
        self.id = tid
        #: (tet, vertex) of a truncated tetrahedron, None if synthetic
        self.owner = owner
        self.direction = direction
        #: cusp vertex ids, counter-clockwise
        self.corners = tuple(corners)
        #: side ids; slot i runs from corner i to corner i+1
        self.sides = tuple(sides)
        #: whether the side at slot i is cooriented out of this tip
        self.outward = tuple(bool(o) for o in outward)
        #: vertex labels of the corners (triangulation tips only)
        self.labels = labels
        #: slot of the corner with angle pi
        self.pi_slot = pi_slot

    def __repr__(self):
        return "<Tip {} {} {}>".format(self.id, self.owner, self.direction)

    @property
    def side_signs(self):
        """(side, +1 if cooriented outward else -1) per slot"""
        return tuple((s, 1 if o else -1)
                     for s, o in zip(self.sides, self.outward))


class Side(object):
    def __init__(self, sid, a, b, tail, head, face=None):
        self.id = sid
        #: (tip id, slot) of the instance cooriented outward
        self.a = tuple(a)
        #: (tip id, slot) of the instance cooriented inward
        self.b = tuple(b)
        self.tail = tail
        self.head = head
        self.face = face

    def __repr__(self):
        return "<Side {} {}->{} face={}>".format(
            self.id, self.a[0], self.b[0], self.face)


class Ladder(object):
    def __init__(self, lid, direction, tips, rungs):
        self.id = lid
        self.direction = direction
        self.tips = tuple(tips)
        #: sides with both tips in this ladder
        self.rungs = tuple(rungs)
        self.poles = ()

    def __repr__(self):
        return "<Ladder {} {} tips={}>".format(
            self.id, self.direction, list(self.tips))


class Pole(object):
    def __init__(self, pid, sides, up_ladder, down_ladder):
        self.id = pid
        #: side ids in canonical traversal order
        self.sides = tuple(sides)
        self.up_ladder = up_ladder
        self.down_ladder = down_ladder
        #: +1 or -1: class of the canonically oriented pole in units of λ
        self.sign = None

    def __repr__(self):
        return "<Pole {} sides={} sign={}>".format(
            self.id, list(self.sides), self.sign)


class CuspChain(object):
    """Integer chain on the sides of a cusp (dict side -> coefficient)"""

    def __init__(self, cusp, coefficients):
        self.cusp = cusp
        self.coefficients = {int(s): int(c)
                             for s, c in dict(coefficients).items() if c}

    def __getitem__(self, side):
        return self.coefficients.get(side, 0)

    def __iter__(self):
        return iter(sorted(self.coefficients.items()))

    def __repr__(self):
        return "<CuspChain {}>".format(dict(self))

    def is_closed(self):
        """Whether the chain is a dual cycle (flow in = flow out)"""
        balance = [0] * len(self.cusp.tips)
        for s, c in self.coefficients.items():
            side = self.cusp.sides[s]
            balance[side.a[0]] -= c
            balance[side.b[0]] += c
        return not any(balance)


class CuspCurve(CuspChain):
    """Dual curve given as steps (tip, in-side, out-side)"""

    def __init__(self, cusp, steps):
        self.steps = [tuple(int(x) for x in st) for st in steps]
        coefficients = {}
        for tip, _, out in self.steps:
            side = cusp.sides[out]
            sign = 1 if side.a[0] == tip else -1
            coefficients[out] = coefficients.get(out, 0) + sign
        super(CuspCurve, self).__init__(cusp, coefficients)

    def is_closed(self):
        if not self.steps:
            return True
        n = len(self.steps)
        for k, (tip, sin, sout) in enumerate(self.steps):
            nxt, nin, _ = self.steps[(k + 1) % n]
            sides = self.cusp.tips[tip].sides
            if sin not in sides or sout not in sides or nin != sout:
                return False
            side = self.cusp.sides[sout]
            if {side.a[0], side.b[0]} != {tip, nxt}:
                return False
        return True

    @classmethod
    def from_tips(cls, cusp, tips, sides):
        """Closed curve through `tips`, leaving tip k through `sides[k]`"""
        n = len(tips)
        return cls(cusp, [(tips[k], sides[k - 1], sides[k])
                          for k in range(n)])


class CuspComplex(object):
    def __init__(self, cid, tips, sides, nvertices, vertex_edges=None):
        self.id = cid
        self.tips = list(tips)
        self.sides = list(sides)
        self.nvertices = nvertices
        #: cusp vertex -> edge class id it is an end of
        self.vertex_edges = vertex_edges
        self.ladders = None
        self.poles = None
        #: dual cycle: core of the lowest upward ladder
        self.lam = None
        #: primal chain homologous to λ
        self.lam_primal = None
        #: dual cycle with î(λ, ρ) = +1
        self.rho = None
        self._links = None

    def __repr__(self):
        return "<CuspComplex {} tips={} ladders={}>".format(
            self.id, len(self.tips),
            None if self.ladders is None else len(self.ladders))

    @classmethod
    def from_tips(cls, cid, specs):
        """Build a cusp complex from raw tip data

        Parameters
        ----------
        cid: int
            cusp id
        specs: list of dict
            one per tip: ``{"direction": "up"|"down",
            "corners": [v0, v1, v2], "sides": [s0, s1, s2],
            "outward": [bool, bool, bool]}``; each side id must
            occur once outward and once inward.
        """
        tips = []
        inst = {}
        for tid, spec in enumerate(specs):
            tips.append(Tip(tid, spec["direction"], spec["corners"],
                            spec["sides"], spec["outward"]))
            for slot, (s, out) in enumerate(zip(spec["sides"],
                                                spec["outward"])):
                key = (s, "a" if out else "b")
                if key in inst:
                    raise CuspStructureError(
                        "Side {} has two {} instances!".format(s, key[1]))
                inst[key] = (tid, slot)
        sids = sorted({s for s, _ in inst})
        if sids != list(range(len(sids))):
            raise CuspStructureError("Side ids must be 0..N-1!")
        sides = []
        for s in sids:
            if (s, "a") not in inst or (s, "b") not in inst:
                raise CuspStructureError(
                    "Side {} is not glued on both sides!".format(s))
            b = inst[(s, "b")]
            btip = tips[b[0]]
            sides.append(Side(s, inst[(s, "a")], b,
                              btip.corners[b[1]],
                              btip.corners[(b[1] + 1) % 3]))
        nvertices = 1 + max(v for tip in tips for v in tip.corners)
        return cls(cid, tips, sides, nvertices)

    @property
    def euler_characteristic(self):
        return self.nvertices - len(self.sides) + len(self.tips)

    @property
    def up_ladders(self):
        return [lad for lad in self.ladders if lad.direction == UP]

    def other_instance(self, side, tip, slot):
        side = self.sides[side]
        return side.b if side.a == (tip, slot) else side.a

    def links(self):
        """Counter-clockwise corner cycles around every cusp vertex

        Returns
        -------
        links: dict
            vertex -> list of (tip, slot, side, a_to_b) where `side`
            is crossed when rotating on to the next corner and
            `a_to_b` tells whether that crossing runs from A to B
        """
        if self._links is not None:
            return self._links
        links = {}
        seen = set()
        for tip in self.tips:
            for slot in range(3):
                state = (tip.id, slot)
                if state in seen:
                    continue
                cycle = []
                while state not in seen:
                    seen.add(state)
                    x, i = state
                    X = self.tips[x]
                    k = (i - 1) % 3
                    sid = X.sides[k]
                    cycle.append((x, i, sid, X.outward[k]))
                    state = self.other_instance(sid, x, k)
                vertex = tip.corners[slot]
                if (vertex in links
                        or any(self.tips[x].corners[i] != vertex
                               for x, i, _, _ in cycle)):
                    raise CuspStructureError(
                        "Cusp {}: the link of vertex {} is not a single "
                        "circle!".format(self.id, vertex))
                links[vertex] = cycle
        self._links = links
        return links

    def primal_coordinates(self, chain):
        """(a, b) with chain ~ a·λ + b·ρ for a primal cycle"""
        chain = dict(chain)
        a = sum(c * self.rho[s] for s, c in chain.items())
        b = -sum(c * self.lam[s] for s, c in chain.items())
        return a, b

    def intersection(self, primal, dual):
        """î(primal, dual) = sum_s P(s) x(s)"""
        return sum(c * dual[s] for s, c in dict(primal).items())

    def lambda_tips(self):
        """Tips of λ in traversal order"""
        start = min(self.ladders[0].tips)
        rungs = set(self.ladders[0].rungs)
        seq = [start]
        while True:
            tip = self.tips[seq[-1]]
            out = [s for k, s in enumerate(tip.sides)
                   if tip.outward[k] and s in rungs]
            nxt = self.sides[out[0]].b[0]
            if nxt == start:
                return seq
            seq.append(nxt)


def _build_tips(tri):
    """All tips and side gluings of a triangulation

    Returns global tip records, the side instances and the corner
    classes (cusp vertices) as a union-find.
    """
    corners = nx.utils.UnionFind()
    side_of = {}
    instances = []
    for t, tet in enumerate(tri.tets):
        for v in range(4):
            for j in range(4):
                if j == v or (t, v, j) in side_of:
                    continue
                t2, f, p = tet.gluings[j]
                other = (t2, p[v], f)
                side_of[(t, v, j)] = len(instances)
                side_of[other] = len(instances)
                instances.append(((t, v, j), other))
                for k in range(4):
                    if k not in (v, j):
                        corners.union((t, v, k), (t2, p[v], p[k]))
    return side_of, instances, corners


def build_cusps(tri):
    """Tip complexes of all cusps with ladders and (λ, ρ) bases

    Parameters
    ----------
    tri: VeeringTriangulation
        validated triangulation

    Returns
    -------
    cusps: list of CuspComplex
        ordered by their lowest tip (4 * tet + vertex)
    """
    require_valid(tri)
    side_of, instances, corners = _build_tips(tri)
    ntips = 4 * len(tri.tets)
    tipgraph = nx.Graph()
    tipgraph.add_nodes_from(range(ntips))
    for (t, v, _), (t2, v2, _) in instances:
        tipgraph.add_edge(4 * t + v, 4 * t2 + v2)
    components = sorted(sorted(c) for c in nx.connected_components(tipgraph))

    cusps = []
    for cid, gtips in enumerate(components):
        local_tip = {g: k for k, g in enumerate(gtips)}
        gsides = sorted({side_of[(g // 4, g % 4, j)]
                         for g in gtips for j in range(4) if j != g % 4})
        local_side = {g: k for k, g in enumerate(gsides)}
        vertex_ids = {}
        vertex_edges = []
        tips = []
        for g in gtips:
            t, v = divmod(g, 4)
            tet = tri.tets[t]
            labels = tip_frame(v)
            cs = []
            for k in labels:
                root = corners[(t, v, k)]
                if root not in vertex_ids:
                    vertex_ids[root] = len(vertex_ids)
                    vertex_edges.append(tri.edge_id(t, (v, k)))
                cs.append(vertex_ids[root])
            sides = []
            outward = []
            for i in range(3):
                x, y = labels[i], labels[(i + 1) % 3]
                j = ({0, 1, 2, 3} - {v, x, y}).pop()
                sides.append(local_side[side_of[(t, v, j)]])
                outward.append(j in tet.top_faces)
            pi_slot = [i for i, k in enumerate(labels)
                       if tet.angle((v, k)) == 1][0]
            tips.append(Tip(local_tip[g], UP if v in tet.top_edge else DOWN,
                            cs, sides, outward, owner=(t, v),
                            labels=labels, pi_slot=pi_slot))
        sides = []
        for g in gsides:
            inst = []
            for t, v, j in instances[g]:
                tip = tips[local_tip[4 * t + v]]
                slot = [i for i in range(3)
                        if tip.sides[i] == local_side[g]
                        and ({0, 1, 2, 3} - {v, tip.labels[i],
                                             tip.labels[(i + 1) % 3]})
                        == {j}][0]
                inst.append((tip.id, slot))
            roles = [tips[x].outward[i] for x, i in inst]
            if sorted(roles) != [False, True]:
                raise CuspStructureError(
                    "Side {} is not cooriented out of exactly one "
                    "tip!".format(g))
            a, b = (inst[0], inst[1]) if roles[0] else (inst[1], inst[0])
            btip = tips[b[0]]
            atip = tips[a[0]]
            tail = btip.corners[b[1]]
            head = btip.corners[(b[1] + 1) % 3]
            if (atip.corners[(a[1] + 1) % 3], atip.corners[a[1]]) \
                    != (tail, head):
                raise CuspStructureError(
                    "Tips across side {} are not coherently "
                    "oriented!".format(g))
            t, v, j = instances[g][0]
            sides.append(Side(local_side[g], a, b, tail, head,
                              face=tri.face_id(t, j)))
        cusp = CuspComplex(cid, tips, sides, len(vertex_ids), vertex_edges)
        if cusp.euler_characteristic != 0:
            raise CuspStructureError(
                "Cusp {} is not a torus (Euler characteristic {})!".format(
                    cid, cusp.euler_characteristic))
        build_ladders(cusp)
        logger.debug("Built %r", cusp)
        cusps.append(cusp)
    return cusps


def _ladder_regions(cusp):
    uf = nx.utils.UnionFind(range(len(cusp.tips)))
    for side in cusp.sides:
        x, y = side.a[0], side.b[0]
        if cusp.tips[x].direction == cusp.tips[y].direction:
            uf.union(x, y)
    return sorted(sorted(r) for r in uf.to_sets())


def _check_annulus(cusp, tips, rungs):
    """Euler characteristic of the region cut open along its poles"""
    tips = set(tips)
    uf = nx.utils.UnionFind([(t, i) for t in tips for i in range(3)])
    nboundary = 0
    for t in tips:
        for i, s in enumerate(cusp.tips[t].sides):
            if s not in rungs:
                nboundary += 1
    for s in rungs:
        side = cusp.sides[s]
        (x, i), (y, j) = side.a, side.b
        uf.union((x, i), (y, (j + 1) % 3))
        uf.union((x, (i + 1) % 3), (y, j))
    nvert = len(list(uf.to_sets()))
    chi = nvert - len(rungs) - nboundary + len(tips)
    return chi == 0 and nboundary > 0


def build_ladders(cusp):
    """Ladders, ladderpoles and the canonical (λ, ρ) basis of a cusp

    Ladders are numbered around the torus starting with the upward
    ladder holding the lowest upward tip; pole ``j`` separates ladder
    ``j`` from ladder ``j + 1``, so even ladders point upward.

    Raises
    ------
    LadderError
        if a constant-direction region is not an annulus or the
        ladders do not alternate
    """
    regions = _ladder_regions(cusp)
    rung_sets = []
    for tips in regions:
        tset = set(tips)
        rungs = sorted(s.id for s in cusp.sides
                       if s.a[0] in tset and s.b[0] in tset)
        if not _check_annulus(cusp, tips, set(rungs)):
            raise LadderError(
                "Not a veering boundary pattern: the {} region of tips {} "
                "is not an annulus!".format(
                    cusp.tips[tips[0]].direction, tips))
        rung_sets.append(rungs)
    region_of = {}
    for r, tips in enumerate(regions):
        for t in tips:
            region_of[t] = r

    pole_sides = [s for s in cusp.sides
                  if region_of[s.a[0]] != region_of[s.b[0]]]
    for s in pole_sides:
        if (cusp.tips[s.a[0]].direction, cusp.tips[s.b[0]].direction) \
                != (UP, DOWN):
            raise LadderError(
                "Not a veering boundary pattern: side {} between ladders "
                "is not cooriented from up to down!".format(s.id))
    by_tail = {}
    for s in pole_sides:
        if s.tail in by_tail:
            raise LadderError(
                "Not a veering boundary pattern: ladderpoles meet at "
                "vertex {}!".format(s.tail))
        by_tail[s.tail] = s
    raw_poles = []
    seen = set()
    for s in pole_sides:
        if s.id in seen:
            continue
        cycle = []
        cur = s
        while cur.id not in seen:
            seen.add(cur.id)
            cycle.append(cur)
            if cur.head not in by_tail:
                raise LadderError(
                    "Not a veering boundary pattern: ladderpole through "
                    "side {} is not closed!".format(cur.id))
            cur = by_tail[cur.head]
        ups = {region_of[c.a[0]] for c in cycle}
        downs = {region_of[c.b[0]] for c in cycle}
        if len(ups) != 1 or len(downs) != 1:
            raise LadderError(
                "Not a veering boundary pattern: ladderpole through side "
                "{} borders several ladders!".format(s.id))
        raw_poles.append(([c.id for c in cycle], ups.pop(), downs.pop()))

    poles_of = {r: [] for r in range(len(regions))}
    for k, (sides, up, down) in enumerate(raw_poles):
        poles_of[up].append(k)
        poles_of[down].append(k)
    if any(len(p) != 2 for p in poles_of.values()):
        raise LadderError("Not a veering boundary pattern: a ladder does "
                          "not have exactly two ladderpoles!")

    # walk around the torus
    start = region_of[min(t.id for t in cusp.tips if t.direction == UP)]
    first = min(poles_of[start], key=lambda k: min(raw_poles[k][0]))
    order_regions = [start]
    order_poles = [first]
    while True:
        sides, up, down = raw_poles[order_poles[-1]]
        nxt = down if order_regions[-1] == up else up
        if nxt == start:
            break
        order_regions.append(nxt)
        p = [k for k in poles_of[nxt] if k != order_poles[-1]]
        order_poles.append(p[0] if p else order_poles[-1])
    if len(order_regions) != len(regions) or len(order_regions) % 2:
        raise LadderError("Not a veering boundary pattern: ladders do not "
                          "alternate around the torus!")

    new_region = {r: k for k, r in enumerate(order_regions)}
    ladders = []
    for r in order_regions:
        ladders.append(Ladder(new_region[r],
                              cusp.tips[regions[r][0]].direction,
                              regions[r], rung_sets[r]))
    poles = []
    for k, raw in enumerate(order_poles):
        sides, up, down = raw_poles[raw]
        poles.append(Pole(k, sides, new_region[up], new_region[down]))
    for k, lad in enumerate(ladders):
        lad.poles = ((k - 1) % len(poles), k)
    cusp.ladders = ladders
    cusp.poles = poles
    _set_basis(cusp)
    return ladders, poles


def _pole_pushoff_sign(cusp, pole):
    """+1 if the pole pushed into its upward ladder runs along the core"""
    side = cusp.sides[pole.sides[0]]
    tip, i = side.a
    tip = cusp.tips[tip]
    inward = [k for k in range(3) if not tip.outward[k]]
    return 1 if inward == [(i + 1) % 3] else -1


def _set_basis(cusp):
    lad0 = cusp.ladders[0]
    cusp.lam = CuspChain(cusp, {s: 1 for s in lad0.rungs})
    if not cusp.lam.is_closed():
        raise LadderError("Not a veering boundary pattern: the core of "
                          "ladder 0 is not a cycle!")
    pole0 = cusp.poles[0]
    sign0 = _pole_pushoff_sign(cusp, pole0)
    cusp.lam_primal = {s: sign0 for s in pole0.sides}

    boundary = snf.as_integer_matrix(
        [[0] * len(cusp.sides) for _ in cusp.tips])
    for side in cusp.sides:
        boundary[side.a[0], side.id] -= 1
        boundary[side.b[0], side.id] += 1
    cycles = snf.integer_kernel(boundary)
    values = [cusp.intersection(cusp.lam_primal,
                                {s: z[s] for s in range(len(z))})
              for z in cycles]
    g, coeffs = 0, []
    for val in values:
        g, s, t = snf.xgcd(g, val)
        coeffs = [s * c for c in coeffs] + [t]
    if g != 1:
        raise LadderError("Ladderpole class is not primitive (gcd {})!"
                          .format(g))
    rho0 = [sum(c * z[s] for c, z in zip(coeffs, cycles))
            for s in range(len(cusp.sides))]
    lam = [cusp.lam[s] for s in range(len(cusp.sides))]
    bound = max([abs(x) for x in rho0] + [0]) + 1

    def weight(k):
        return sum(abs(r + k * l) for r, l in zip(rho0, lam))

    k = min(range(-bound, bound + 1),
            key=lambda k: (weight(k), abs(k), k < 0))
    cusp.rho = CuspChain(cusp, {s: rho0[s] + k * lam[s]
                                for s in range(len(cusp.sides))})
    for pole in cusp.poles:
        a, b = cusp.primal_coordinates({s: 1 for s in pole.sides})
        if b != 0 or abs(a) != 1:
            raise LadderError(
                "Ladderpole {} has class ({}, {}) instead of ±λ!".format(
                    pole.id, a, b))
        pole.sign = a
    if cusp.poles[0].sign != sign0:
        raise LadderError("Inconsistent orientation of ladderpole 0!")


class Tube(object):
    def __init__(self, cusp, kind, meridian=None):
        self.cusp = cusp
        self.kind = kind
        if meridian is not None:
            p, q = meridian
            # (p, q) and (-p, -q) fill the same way; keep î(m, λ) > 0
            meridian = (-p, -q) if q > 0 else (p, q)
        self.meridian = meridian

    def __repr__(self):
        return "<Tube cusp={} {} {}>".format(
            self.cusp, self.kind, self.meridian)

    @property
    def solid(self):
        return self.kind == "solid"

    def lambda_intersection(self):
        """î(m, λ) = -q for the meridian m = (p, q), positive"""
        return -self.meridian[1]


class TubeSystem(object):
    def __init__(self, tubes, ncusps=None):
        self.tubes = {t.cusp: t for t in tubes}
        self.ncusps = ncusps
        negative = [c for c in self.tubes if c < 0]
        if negative:
            raise TubeSystemError("Negative cusp id(s) {}!".format(negative))
        if ncusps is not None:
            self.check_cusps(ncusps)
            for c in range(ncusps):
                self.tubes.setdefault(c, Tube(c, "hollow"))

    def __getitem__(self, cusp):
        if self.ncusps is not None and not 0 <= cusp < self.ncusps:
            raise TubeSystemError("No cusp {} (tube system has {} "
                                  "cusps)!".format(cusp, self.ncusps))
        return self.tubes.get(cusp, Tube(cusp, "hollow"))

    def __iter__(self):
        return iter(self.tubes[c] for c in sorted(self.tubes))

    @property
    def solid(self):
        return [t for t in self if t.solid]

    def check_cusps(self, ncusps):
        """Raise TubeSystemError if a tube names a cusp outside 0..ncusps-1

        Returns the tube system for chaining.
        """
        unknown = [c for c in sorted(self.tubes) if not 0 <= c < ncusps]
        if unknown:
            raise TubeSystemError(
                "Unknown cusp id(s) {} (triangulation has {} "
                "cusps)!".format(unknown, ncusps))
        if self.ncusps is not None and self.ncusps != ncusps:
            raise TubeSystemError(
                "Tube system is for {} cusps, triangulation has "
                "{}!".format(self.ncusps, ncusps))
        return self

    def as_dict(self):
        cusps = []
        for t in self:
            entry = {"id": t.cusp, "kind": t.kind}
            if t.solid:
                entry["meridian"] = list(t.meridian)
            cusps.append(entry)
        return {"cusps": cusps}


def tubes_from_dict(doc, ncusps=None):
    """Parse ``{"cusps": [{"id": k, "kind": ..., "meridian": [p, q]}]}``"""
    if not isinstance(doc, dict) or not isinstance(doc.get("cusps"), list):
        raise TubeSystemError("Tube file must be {\"cusps\": [...]}!")
    tubes = []
    seen = set()
    for entry in doc["cusps"]:
        try:
            cid = entry["id"]
            kind = entry["kind"]
        except (KeyError, TypeError):
            raise TubeSystemError("Invalid tube entry {}!".format(entry))
        if not is_int(cid) or cid < 0:
            raise TubeSystemError("Invalid cusp id {!r}!".format(cid))
        if cid in seen:
            raise TubeSystemError("Cusp {} listed twice!".format(cid))
        seen.add(cid)
        if kind == "hollow":
            tubes.append(Tube(cid, kind))
        elif kind == "solid":
            mer = entry.get("meridian")
            if (not isinstance(mer, list) or len(mer) != 2
                    or not all(is_int(x) for x in mer)):
                raise TubeSystemError(
                    "Solid tube {} needs an integer meridian [p, q]!".format(
                        cid))
            p, q = mer
            if gcd(p, q) != 1:
                raise TubeSystemError(
                    "Meridian {} of cusp {} is not primitive!".format(
                        mer, cid))
            if q == 0:
                raise TubeSystemError(
                    "Meridian of cusp {} equals the ladderpole slope "
                    "(î(m, λ) = 0)!".format(cid))
            tubes.append(Tube(cid, kind, (p, q)))
        else:
            raise TubeSystemError("Unknown tube kind '{}'!".format(kind))
    return TubeSystem(tubes, ncusps)


def tube_entry(tube, up_ladders):
    """Prong data of one tube with `up_ladders` upward ladders"""
    entry = {"cusp": tube.cusp,
             "kind": tube.kind,
             "up_ladders": up_ladders,
             }
    if tube.solid:
        inter = tube.lambda_intersection()
        prongs = up_ladders * abs(inter)
        entry.update({"meridian": list(tube.meridian),
                      "intersection": inter,
                      "prongs": prongs,
                      "index": 2 - prongs,
                      "ladderpole_intersection": 2 * up_ladders * abs(inter),
                      })
    else:
        entry["boundary"] = "boundary component"
    return entry


class TubeReport(object):
    def __init__(self, entries):
        self.entries = list(entries)
        solid = [e for e in self.entries if e["kind"] == "solid"]
        self.strict = all(e["index"] < 0 for e in solid)
        self.gamma = [e["cusp"] for e in solid]

    def __getitem__(self, cusp):
        return [e for e in self.entries if e["cusp"] == cusp][0]

    def as_dict(self):
        return {"cusps": self.entries,
                "strict": self.strict,
                "gamma_coefficients": self.gamma,
                }


def report_from_entries(entries):
    report = TubeReport(entries)
    if not report.strict:
        bad = [e["cusp"] for e in report.entries
               if e["kind"] == "solid" and e["index"] >= 0]
        warnings.warn("Solid tube(s) at cusp(s) {} have index >= 0; the "
                      "tube system is not strict.".format(bad),
                      NotStrictWarning)
    return report


def tube_report(tri, tubes, cusps=None):
    """Prongs, index and strictness of a tube system"""
    if cusps is None:
        cusps = build_cusps(tri)
    if not isinstance(tubes, TubeSystem):
        tubes = tubes_from_dict(tubes, len(cusps))
    entries = [tube_entry(tubes[c.id], len(c.up_ladders)) for c in cusps]
    return report_from_entries(entries)
