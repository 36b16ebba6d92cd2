"""Relatively carried surfaces of nonnegative cocycles

A nonnegative cocycle w describes a surface carried by the branched
surface of the triangulation: w(f) parallel triangles in every face.
The surface meets each cusp torus in a multicurve made of strands
running along the tip sides, side s carrying w(face(s)) strands.
"""
import copy
import logging
import warnings
from fractions import Fraction

from . import homology
from .cusp import DOWN, UP, TubeSystem, build_cusps
from .flowgraph import clear_denominators, cone_membership


logger = logging.getLogger(__name__)


class CarryError(ValueError):
    pass


class NegativeCorePairingError(CarryError):
    """Class pairs negatively with a tube core"""

    def __init__(self, msg, cusp=None, core=None):
        super(NegativeCorePairingError, self).__init__(msg)
        self.cusp = cusp
        self.core = core


class FlipUnavailableError(ValueError):
    pass


class ResolutionError(RuntimeError):
    """Boundary weights are not realizable as an embedded multicurve"""
    pass


class NegativeCoreWarning(UserWarning):
    pass


class BoundaryCrossingWarning(UserWarning):
    pass


def _vertex_walks(cusp, vertex, cycle):
    """Sides leaving and entering `vertex`, ordered away from the lower tip

    The link of a cusp vertex is split by its two pi-corners; going
    counter-clockwise from the upward pi-corner crosses the sides
    leaving the vertex, going clockwise the sides entering it, both
    times along the coorientation.
    """
    start = [k for k, (x, i, _, _) in enumerate(cycle)
             if cusp.tips[x].direction == UP and cusp.tips[x].pi_slot == i]
    stop = [k for k, (x, i, _, _) in enumerate(cycle)
            if cusp.tips[x].direction == DOWN and cusp.tips[x].pi_slot == i]
    if len(start) != 1 or len(stop) != 1:
        raise ResolutionError(
            "Cusp {}: vertex {} does not have one upward and one downward "
            "pi-corner!".format(cusp.id, vertex))
    n = len(cycle)
    k1, k2 = start[0], stop[0]
    ccw = [cycle[k % n] for k in range(k1, k1 + (k2 - k1) % n)]
    cw = [cycle[k % n] for k in range(k1 - 1, k1 - 1 - (k1 - k2) % n, -1)]
    leaving = []
    for _, _, s, a_to_b in ccw:
        if not a_to_b or cusp.sides[s].tail != vertex:
            raise ResolutionError(
                "Cusp {}: side {} is not a leaving fan side of vertex "
                "{}!".format(cusp.id, s, vertex))
        leaving.append(s)
    entering = []
    for _, _, s, a_to_b in cw:
        if a_to_b or cusp.sides[s].head != vertex:
            raise ResolutionError(
                "Cusp {}: side {} is not an entering fan side of vertex "
                "{}!".format(cusp.id, s, vertex))
        entering.append(s)
    return leaving, entering


def resolve_track(cusp, weights):
    """Split the weighted boundary track into closed components

    Parameters
    ----------
    cusp: CuspComplex
    weights: dict or list
        side id -> number of strands

    Returns
    -------
    components: list of list of (side, position)
        strands of each component in traversal order, starting with
        its smallest strand; components are sorted by that strand
    """
    successor = {}
    for vertex, cycle in sorted(cusp.links().items()):
        leaving, entering = _vertex_walks(cusp, vertex, cycle)
        outgoing = [(s, p) for s in leaving for p in range(weights[s])]
        incoming = [(s, p) for s in entering for p in range(weights[s])]
        if len(outgoing) != len(incoming):
            raise ResolutionError(
                "Cusp {}: {} strands enter vertex {} but {} leave "
                "it!".format(cusp.id, len(incoming), vertex, len(outgoing)))
        for x, y in zip(incoming, outgoing):
            successor[x] = y
    components = []
    seen = set()
    for strand in sorted(successor):
        if strand in seen:
            continue
        comp = []
        cur = strand
        while cur not in seen:
            seen.add(cur)
            comp.append(cur)
            cur = successor[cur]
        if cur != strand:
            raise ResolutionError("Strand {} does not close up!".format(
                strand))
        components.append(comp)
    return components


class BoundaryComponent(object):
    def __init__(self, strands, chain, restriction, pole=None,
                 position=None):
        #: (side, position) pairs in traversal order
        self.strands = list(strands)
        #: side -> multiplicity
        self.chain = dict(chain)
        #: (a, b) in the (λ, ρ) basis
        self.restriction = tuple(restriction)
        #: ladderpole the component runs along, if any
        self.pole = pole
        self.position = position

    def __repr__(self):
        return "<BoundaryComponent {} pole={}>".format(
            self.restriction, self.pole)

    @property
    def sign(self):
        """+1 or -1 for ladderpole-slope components, else 0"""
        a, b = self.restriction
        return a if b == 0 and abs(a) == 1 else 0

    def as_dict(self):
        return {"restriction": list(self.restriction),
                "sides": sorted(self.chain),
                "pole": self.pole,
                "length": len(self.strands),
                }


def boundary_components(cusp, w):
    """Resolve the boundary track of `w` on one cusp

    Raises
    ------
    ResolutionError
        if a component is inessential or the classes do not add up
        to the restriction of `w`
    """
    weights = [w[s.face] for s in cusp.sides]
    comps = []
    for strands in resolve_track(cusp, weights):
        chain = {}
        for s, _ in strands:
            chain[s] = chain.get(s, 0) + 1
        restriction = cusp.primal_coordinates(chain)
        if restriction == (0, 0):
            raise ResolutionError(
                "Cusp {}: inessential boundary component through sides "
                "{}!".format(cusp.id, sorted(chain)))
        comp = BoundaryComponent(strands, chain, restriction)
        if comp.sign:
            for pole in cusp.poles:
                if set(chain) <= set(pole.sides):
                    low = min(pole.sides)
                    pos = [p for s, p in strands if s == low][0]
                    comp.pole = pole.id
                    # odd poles are read from their downward ladder
                    comp.position = pos if pole.id % 2 == 0 else -pos
        comps.append(comp)
    total = (sum(c.restriction[0] for c in comps),
             sum(c.restriction[1] for c in comps))
    if total != homology.restrict_to_cusp(w, cusp):
        raise ResolutionError(
            "Cusp {}: boundary components add up to {} instead of "
            "{}!".format(cusp.id, total, homology.restrict_to_cusp(w, cusp)))
    return comps


def innermost_pairs(signs, seed=0):
    """Pair antiparallel entries of a cyclic sign sequence without crossings

    Parameters
    ----------
    signs: list of +1/-1
        in cyclic order
    seed: int
        rotation of the starting point

    Returns
    -------
    pairs: list of (int, int)
        index pairs (i < j)
    unpaired: list of int
    """
    n = len(signs)
    stack = []
    pairs = []
    for k in range(n):
        i = (k + seed) % n if n else 0
        if stack and signs[stack[-1]] == -signs[i]:
            j = stack.pop()
            pairs.append((min(i, j), max(i, j)))
        else:
            stack.append(i)
    return sorted(pairs), sorted(stack)


def check_completion(signs, pairs, complete=False):
    """Validate an explicit tube completion

    Raises
    ------
    CarryError
        if a pair is not antiparallel, an entry is used twice, two
        pairs cross or, with `complete`, an entry is left unpaired
    """
    used = set()
    norm = []
    for i, j in pairs:
        i, j = sorted((int(i), int(j)))
        if not (0 <= i < len(signs) and 0 <= j < len(signs)):
            raise CarryError("Completion pair {} is out of range!".format(
                (i, j)))
        if i in used or j in used or i == j:
            raise CarryError("Component used twice in the completion!")
        used.update((i, j))
        if signs[i] != -signs[j] or signs[i] == 0:
            raise CarryError("Completion pair {} is not "
                             "antiparallel!".format((i, j)))
        norm.append((i, j))
    for i, j in norm:
        for k, l in norm:
            if i < k < j < l:
                raise CarryError("Completion pairs {} and {} "
                                 "cross!".format((i, j), (k, l)))
    if complete and len(used) != len(signs):
        raise CarryError("Completion leaves ladderpole curves {} "
                         "unpaired!".format(
                             sorted(set(range(len(signs))) - used)))
    return sorted(norm)


class TubeBoundary(object):
    """Ladderpole curves of one tube in cyclic order with their pairing"""

    def __init__(self, cusp, up_ladders, curves, pairs, prongs=None):
        self.cusp = cusp
        #: number k of upward ladders; there are 2k ladderpoles
        self.up_ladders = up_ladders
        #: (pole, sign) per ladderpole curve, in cyclic order
        self.curves = [tuple(c) for c in curves]
        #: index pairs into `curves`, the completion annuli
        self.pairs = [tuple(p) for p in pairs]
        #: prongs of the tube, None for hollow tubes
        self.prongs = prongs

    def __repr__(self):
        return "<TubeBoundary cusp={} pairs={}>".format(
            self.cusp, self.pairs)

    @property
    def npoles(self):
        return 2 * self.up_ladders

    def as_dict(self):
        return {"cusp": self.cusp,
                "up_ladders": self.up_ladders,
                "curves": [list(c) for c in self.curves],
                "pairs": [list(p) for p in self.pairs],
                }


class CuspBoundary(object):
    def __init__(self, cusp, tube, components, ladder_curves, pairs,
                 boundary_curves, core_pairing=0, boundary_crossing=False,
                 absorbed=()):
        self.cusp = cusp.id
        self.kind = tube.kind
        self.meridian = tube.meridian
        self.up_ladders = len(cusp.up_ladders)
        self.components = list(components)
        #: component indices on ladderpoles, in cyclic order
        self.ladder_curves = list(ladder_curves)
        #: completion annuli as index pairs into `ladder_curves`
        self.pairs = [tuple(p) for p in pairs]
        #: component indices left on the boundary of the manifold
        self.boundary_curves = list(boundary_curves)
        #: a_i, number of meridian disks (solid tubes)
        self.core_pairing = core_pairing
        self.boundary_crossing = boundary_crossing
        #: component indices taken off the tube by annulus moves
        self.absorbed = sorted(absorbed)

    def __repr__(self):
        return "<CuspBoundary {} {} a={} n={}>".format(
            self.cusp, self.kind, self.core_pairing, self.ladderpole_pairs)

    @property
    def restriction(self):
        return (sum(c.restriction[0] for c in self.components),
                sum(c.restriction[1] for c in self.components))

    @property
    def ladderpole_pairs(self):
        return len(self.pairs)

    @property
    def prongs(self):
        if self.meridian is None:
            return None
        return self.up_ladders * abs(self.meridian[1])

    def tube_boundary(self):
        curves = [(self.components[k].pole, self.components[k].sign)
                  for k in self.ladder_curves]
        return TubeBoundary(self.cusp, self.up_ladders, curves, self.pairs,
                            self.prongs)

    def check(self):
        """Raise CarryError unless the completion matches the curves

        Solid tubes pair every ladderpole curve; on hollow tubes the
        unpaired ones must be boundary curves.
        """
        signs = [self.components[k].sign for k in self.ladder_curves]
        check_completion(signs, self.pairs, complete=self.kind == "solid")
        paired = {k for p in self.pairs for k in p}
        free = {self.ladder_curves[k] for k in range(len(signs))
                if k not in paired}
        if not free <= set(self.boundary_curves):
            raise CarryError("Cusp {}: ladderpole curves {} are neither "
                             "paired nor boundary curves!".format(
                                 self.cusp, sorted(free
                                                   - set(self.boundary_curves))))
        if set(self.absorbed) & (set(self.ladder_curves)
                                 | set(self.boundary_curves)):
            raise CarryError("Cusp {}: absorbed curves are still on the "
                             "tube!".format(self.cusp))
        return self

    def without_annuli(self, removed):
        """Copy with the completion annuli `removed` moved off the tube

        The two ladderpole curves of each removed annulus stop being
        boundary curves; the remaining pairs are renumbered.
        """
        gone = {k for p in removed for k in p}
        keep = [k for k in range(len(self.ladder_curves)) if k not in gone]
        renum = {k: n for n, k in enumerate(keep)}
        pairs = [(renum[i], renum[j]) for i, j in self.pairs
                 if i not in gone and j not in gone]
        if len(pairs) + len(removed) != len(self.pairs):
            raise CarryError("Cusp {}: removed annuli {} are not completion "
                             "pairs!".format(self.cusp, removed))
        nb = copy.copy(self)
        nb.ladder_curves = [self.ladder_curves[k] for k in keep]
        nb.pairs = sorted(pairs)
        nb.absorbed = sorted(self.absorbed
                             + [self.ladder_curves[k] for k in gone])
        return nb.check()

    def as_dict(self):
        return {"cusp": self.cusp,
                "kind": self.kind,
                "restriction": list(self.restriction),
                "core_pairing": self.core_pairing,
                "ladderpole_pairs": self.ladderpole_pairs,
                "completion": [list(p) for p in self.pairs],
                "ladder_curves": self.ladder_curves,
                "boundary_curves": self.boundary_curves,
                "boundary_crossing": self.boundary_crossing,
                "absorbed": self.absorbed,
                "components": [c.as_dict() for c in self.components],
                }


def boundary_multicurve(tri, tubes, w, cusp, completion=None, seed=0):
    """Boundary data of the carried surface of `w` at one cusp

    Parameters
    ----------
    tri: VeeringTriangulation
    tubes: TubeSystem
    w: list of int
        nonnegative cocycle
    cusp: CuspComplex
    completion: list of (int, int)
        explicit pairing of the ladderpole curves (indices in cyclic
        order); innermost pairing if None
    seed: int
        starting point of the innermost pairing

    Returns
    -------
    boundary: CuspBoundary
    """
    tube = tubes[cusp.id]
    comps = boundary_components(cusp, w)
    ladder = sorted((k for k, c in enumerate(comps) if c.pole is not None),
                    key=lambda k: (comps[k].pole, comps[k].position))
    signs = [comps[k].sign for k in ladder]
    if tube.solid:
        m = tuple(tube.meridian)
        core = 0
        for k, c in enumerate(comps):
            if c.sign:
                if c.pole is None:
                    raise ResolutionError(
                        "Cusp {}: ladderpole-slope component {} does not "
                        "run along a ladderpole!".format(cusp.id, k))
            elif c.restriction == m:
                core += 1
            elif c.restriction == (-m[0], -m[1]):
                core -= 1
            else:
                raise CarryError(
                    "Cusp {}: boundary component of class {} is neither a "
                    "meridian nor a ladderpole curve!".format(
                        cusp.id, c.restriction))
        if sum(signs):
            raise CarryError("Cusp {}: ladderpole curves do not cancel; the "
                             "class does not extend over the solid "
                             "tube!".format(cusp.id))
        if core < 0:
            warnings.warn(
                "The class pairs negatively ({}) with the core of the solid "
                "tube at cusp {}; surfaces like this cannot be relatively "
                "carried and need not be transverse to the flow.".format(
                    core, cusp.id), NegativeCoreWarning)
            raise NegativeCorePairingError(
                "Class pairs negatively with a tube core (cusp {}, a = "
                "{})!".format(cusp.id, core), cusp=cusp.id, core=core)
        if completion is None:
            pairs, rest = innermost_pairs(signs, seed)
            if rest:
                raise CarryError("Cusp {}: ladderpole curves {} are left "
                                 "unpaired!".format(cusp.id, rest))
        else:
            pairs = check_completion(signs, completion, complete=True)
        return CuspBoundary(cusp, tube, comps, ladder, pairs, [],
                            core).check()
    if completion is None:
        pairs, rest = innermost_pairs(signs, seed)
    else:
        pairs = check_completion(signs, completion)
        rest = [k for k in range(len(signs))
                if not any(k in p for p in pairs)]
    on_boundary = sorted([ladder[k] for k in rest]
                         + [k for k, c in enumerate(comps)
                            if c.pole is None])
    crossing = bool(pairs) and any(not c.sign for c in comps)
    if crossing:
        warnings.warn(
            "Hollow tube at cusp {} carries ladderpole annuli together with "
            "boundary curves of another slope; those curves are reported "
            "as boundary-crossing and excluded from the pair "
            "count.".format(cusp.id), BoundaryCrossingWarning)
    return CuspBoundary(cusp, tube, comps, ladder, pairs, on_boundary,
                        boundary_crossing=crossing).check()


class CarriedSurface(object):
    def __init__(self, weights, boundaries, euler_char, fan_sums):
        self.weights = list(weights)
        #: CuspBoundary per cusp
        self.boundaries = list(boundaries)
        self.euler_char = euler_char
        #: common fan sum W(e) per edge
        self.fan_sums = list(fan_sums)

    def __repr__(self):
        return "<CarriedSurface chi={} weight={}>".format(
            self.euler_char, self.total_weight)

    @property
    def total_weight(self):
        return sum(self.weights)

    @property
    def core_pairings(self):
        return {b.cusp: b.core_pairing for b in self.boundaries
                if b.kind == "solid"}

    @property
    def gamma_pairing(self):
        """<γ, [w]>: sum of the core pairings of the solid tubes"""
        return sum(self.core_pairings.values())

    @property
    def ladderpole_pairs(self):
        return {b.cusp: b.ladderpole_pairs for b in self.boundaries}

    @property
    def empty(self):
        return not any(self.weights)

    def as_dict(self):
        return {"weights": self.weights,
                "total_weight": self.total_weight,
                "euler_char": self.euler_char,
                "fan_sums": self.fan_sums,
                "gamma_pairing": self.gamma_pairing,
                "cusps": [b.as_dict() for b in self.boundaries],
                }


def euler_characteristic(tri, w, core_total):
    """χ by cell count: faces - edges + meridian disks"""
    return sum(w) - sum(homology.fan_sums(tri, w)) + core_total


def euler_class_value(w, gamma_pairing):
    """e_τ([w]) = (2<γ, w> - <Γ, w>) / 2"""
    return Fraction(2 * gamma_pairing - homology.total_pairing(w), 2)


def carried_surface(tri, w, tubes=None, cusps=None, completions=None,
                    seed=0):
    """Surface relatively carried by the triangulation with weights `w`

    Parameters
    ----------
    tri: VeeringTriangulation
    w: list of int
        nonnegative cocycle
    tubes: TubeSystem
        all tubes hollow if None
    completions: dict
        cusp id -> explicit ladderpole pairing
    seed: int
        starting point of the innermost pairings

    Raises
    ------
    CarryError
        if a weight is negative or the boundary cannot be completed
    CocycleError
        if `w` violates a fan equation
    NegativeCorePairingError
        if the class pairs negatively with a solid tube core
    """
    w = homology.check_cocycle(tri, w)
    if any(x < 0 for x in w):
        raise CarryError("Carried weights must be nonnegative, got "
                         "{}!".format(w))
    if cusps is None:
        cusps = build_cusps(tri)
    if tubes is None:
        tubes = TubeSystem([], len(cusps))
    tubes.check_cusps(len(cusps))
    completions = completions or {}
    boundaries = [boundary_multicurve(tri, tubes, w, cusp,
                                      completions.get(cusp.id), seed)
                  for cusp in cusps]
    core_total = sum(b.core_pairing for b in boundaries)
    chi = euler_characteristic(tri, w, core_total)
    if Fraction(chi) != euler_class_value(w, core_total):
        raise RuntimeError(
            "Euler characteristic {} disagrees with the Euler class value "
            "{}!".format(chi, euler_class_value(w, core_total)))
    if chi > 0:
        raise CarryError("Carried surface has positive Euler characteristic "
                         "{}!".format(chi))
    surface = CarriedSurface(w, boundaries, chi, homology.fan_sums(tri, w))
    logger.debug("Carried %r", surface)
    return surface


class NormResult(object):
    #: the flow's Euler class agrees with e_τ
    NOTE = "e_phi = e_tau"

    def __init__(self, value, gamma_total, gamma_pairing, certificate, cone):
        #: Thurston norm (None off the cone)
        self.value = value
        #: <Γ, u>
        self.gamma_total = gamma_total
        #: <γ, u>
        self.gamma_pairing = gamma_pairing
        #: CarriedSurface realizing the value
        self.certificate = certificate
        #: ConeCertificate of the membership query
        self.cone = cone

    def __repr__(self):
        return "<NormResult {}>".format(self.value)

    @property
    def member(self):
        return self.cone.member

    def as_dict(self):
        doc = {"verdict": self.cone.verdict,
               "value": self.value,
               "gamma_total": self.gamma_total,
               "gamma_pairing": self.gamma_pairing,
               "note": self.NOTE,
               }
        if self.member:
            doc["certificate"] = self.certificate.as_dict()
        else:
            doc["cone"] = self.cone.as_dict()
        return doc


def thurston_norm(tri, u, tubes=None, seed=0, cusps=None):
    """x(u) = -e_τ(u) for classes in the cycle cone

    Returns a NormResult without value if `u` is not in the cone,
    the formula does not compute the norm there.
    """
    if cusps is None:
        cusps = build_cusps(tri)
    if tubes is None:
        tubes = TubeSystem([], len(cusps))
    tubes.check_cusps(len(cusps))
    ambient = "filled" if tubes.solid else "cusped"
    cert = cone_membership(tri, u, seed=seed, tubes=tubes, ambient=ambient,
                           cusps=cusps)
    wi, scale = clear_denominators(u)
    _, cores = homology.filled_subspace_check(tri, wi, tubes, cusps)
    gamma = Fraction(sum(cores.values()), scale)
    total = Fraction(sum(wi), scale)
    if not cert.member:
        return NormResult(None, total, gamma, None, cert)
    surface = carried_surface(tri, cert.witness, tubes, cusps, seed=seed)
    value = Fraction(-surface.euler_char, scale)
    if value != total / 2 - gamma:
        raise RuntimeError("Norm {} of the certificate disagrees with "
                           "-e_τ = {}!".format(value, total / 2 - gamma))
    return NormResult(value, total, gamma, surface, cert)


def flip_up(tri, w, t):
    """Move one unit of weight through tetrahedron `t` from bottom to top

    Raises
    ------
    FlipUnavailableError
        if a bottom face of `t` has weight < 1
    """
    w = homology.check_cocycle(tri, w)
    bottom = tri.bottom_face_ids(t)
    if any(w[f] < 1 for f in bottom):
        raise FlipUnavailableError(
            "Flip unavailable: tetrahedron {} has bottom weights "
            "{}!".format(t, [w[f] for f in bottom]))
    w = list(w)
    for f in bottom:
        w[f] -= 1
    for f in tri.top_face_ids(t):
        w[f] += 1
    return w


def flip_walk(tri, w, seed=0, limit=1000):
    """Flip upward until stuck or a position repeats

    Returns
    -------
    positions: list of list of int
        visited weight vectors, the repeated one listed twice
    repeated: bool
        whether a position repeated (signature of a fibered class)
    """
    w = homology.check_cocycle(tri, w)
    n = len(tri.tets)
    order = [(seed + k) % n for k in range(n)]
    positions = [w]
    seen = {tuple(w)}
    for _ in range(limit):
        avail = [t for t in order
                 if all(w[f] >= 1 for f in tri.bottom_face_ids(t))]
        if not avail:
            return positions, False
        w = flip_up(tri, w, avail[0])
        positions.append(w)
        if tuple(w) in seen:
            return positions, True
        seen.add(tuple(w))
    logger.info("Flip walk stopped after %d flips", limit)
    return positions, False


def euler_class(tri, tubes=None, summary=None, cusps=None):
    """e_τ on the classes extending over the solid tubes

    Returns
    -------
    directions: list of list of int
        basis coordinates of the classes evaluated
    values: list of Fraction
        e_τ of each (the flow Euler class e_φ takes the same values)
    """
    if cusps is None:
        cusps = build_cusps(tri)
    if tubes is None:
        tubes = TubeSystem([], len(cusps))
    tubes.check_cusps(len(cusps))
    if summary is None:
        summary = homology.homology_summary(tri)
    directions = homology.filled_basis(tri, summary, tubes, cusps)
    values = []
    for coords in directions:
        v = homology.resolve_class(tri, summary, coords=coords)
        cores = homology.require_filled(tri, v, tubes, cusps)
        values.append(euler_class_value(v, sum(cores.values())))
    return directions, values
