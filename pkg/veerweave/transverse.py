"""Honest versus almost transversality of carried surfaces

A carried surface is honestly transverse to the flow when no
ladderpole annuli survive efficient positioning. Otherwise every tube
with surviving annuli gets a blowup type from its arc system.
"""
import logging
from fractions import Fraction

from . import homology
from .arcs import Arc, ArcSystem, ArcSystemError, blowup_graph
from .carry import (CarriedSurface, CuspBoundary, NegativeCorePairingError,
                    TubeBoundary, carried_surface)
from .cusp import TubeSystem, build_cusps
from .flowgraph import clear_denominators, cone_membership


logger = logging.getLogger(__name__)

HONEST = "honest"
ALMOST = "almost"
NOT_TRANSVERSE = "not_transverse"


def _between(i, j, alive):
    """Alive indices strictly between i and j going forward"""
    if i < j:
        return [k for k in alive if i < k < j]
    return [k for k in alive if k > i or k < j]


def _span(tb, i, j):
    """Number of ladders crossed going forward from curve i to curve j"""
    pi, pj = tb.curves[i][0], tb.curves[j][0]
    return pj - pi if j > i else pj - pi + tb.npoles


def removable_pairs(tb):
    """Completion annuli of `tb` that cut off a single empty ladder"""
    alive = {k for p in tb.pairs for k in p}
    found = []
    for i, j in tb.pairs:
        for a, b in ((i, j), (j, i)):
            if _span(tb, a, b) == 1 and not _between(a, b, alive):
                found.append((i, j))
                break
    return found


def remove_annuli(tb):
    """Apply annulus moves to innermost removable annuli until none is left

    Only the completion of `tb` is computed here; `efficient_position`
    takes the curves of the removed annuli off the surface boundary.

    Returns
    -------
    tb: TubeBoundary
        with the remaining pairs
    removed: list of (int, int)
    """
    pairs = list(tb.pairs)
    removed = []
    while True:
        cur = TubeBoundary(tb.cusp, tb.up_ladders, tb.curves, pairs,
                           tb.prongs)
        found = removable_pairs(cur)
        if not found:
            return cur, removed
        # one move at a time, the pair count strictly decreases
        pairs.remove(found[0])
        removed.append(found[0])


def efficient_position(surface):
    """Copy of `surface` with all removable ladderpole annuli removed

    Each move pushes an annulus out of its tube: its two ladderpole
    curves leave the boundary and the Euler characteristic is kept,
    an annulus having none.
    """
    boundaries = []
    for b in surface.boundaries:
        _, removed = remove_annuli(b.tube_boundary())
        if removed:
            logger.debug("Cusp %d: annulus moves removed %s", b.cusp, removed)
            b = b.without_annuli(removed)
        boundaries.append(b)
    return CarriedSurface(surface.weights, boundaries, surface.euler_char,
                          surface.fan_sums)


def arc_system_from_tube(tb, model=None):
    """Arc system of the completion annuli of one tube

    Parameters
    ----------
    tb: TubeBoundary or CuspBoundary
        with ``prongs`` set for solid tubes
    model: str
        "disk" for solid tubes, "annulus" for hollow ones (default
        from ``tb.prongs``)

    Raises
    ------
    ArcSystemError
        if the tube carries no completion annuli
    """
    if isinstance(tb, CuspBoundary):
        tb = tb.tube_boundary()
    if not tb.pairs:
        raise ArcSystemError("Tube at cusp {} carries no completion "
                             "annuli!".format(tb.cusp))
    if model is None:
        model = "annulus" if tb.prongs is None else "disk"
    # two prongs per upward ladder and meridian crossing
    n = 2 * tb.prongs if tb.prongs is not None else tb.npoles
    twist = tb.npoles % n
    orbit = n // tb.npoles
    arcs = []
    for i, j in tb.pairs:
        a = tb.curves[i][0]
        d = _span(tb, i, j)
        ends = [(a, i), ((a + d) % n, j)]
        ends.sort(key=lambda e: e[0] % 2 == 0)
        if ends[0][0] % 2 != 1 or ends[1][0] % 2 != 0:
            raise RuntimeError(
                "Completion annulus {} of cusp {} joins quadrants of equal "
                "parity!".format((i, j), tb.cusp))
        for t in range(orbit):
            shift = t * tb.npoles
            arcs.append(Arc(((ends[0][0] + shift) % n, ends[0][1]),
                            ((ends[1][0] + shift) % n, ends[1][1]),
                            "left"))
    AS = ArcSystem(model, n, twist, arcs)
    return AS.validate()


class TransversalityReport(object):
    def __init__(self, verdict, tubes=None, blowups=None, obstruction=None,
                 conditions=None, surface=None, empty=False):
        self.verdict = verdict
        #: per cusp: ladderpole pairs before and after annulus moves
        self.tubes = list(tubes or [])
        #: cusp id -> BlowupGraph
        self.blowups = dict(blowups or {})
        self.obstruction = obstruction
        self.conditions = dict(conditions or {})
        self.surface = surface
        self.empty = empty

    def __repr__(self):
        return "<TransversalityReport {}>".format(self.verdict)

    def as_dict(self):
        doc = {"verdict": self.verdict,
               "empty_class": self.empty,
               "tubes": self.tubes,
               "blowups": {c: g.as_dict()
                           for c, g in sorted(self.blowups.items())},
               "conditions": self.conditions,
               }
        if self.obstruction is not None:
            doc["obstruction"] = self.obstruction
        return doc


def transversality_report(tri, u, tubes=None, seed=0, completions=None,
                          cusps=None):
    """Classify the carried representative of `u` as honest or almost
    transverse, or report why it is not transverse at all"""
    if cusps is None:
        cusps = build_cusps(tri)
    if tubes is None:
        tubes = TubeSystem([], len(cusps))
    tubes.check_cusps(len(cusps))
    # the verdict does not depend on positive scaling
    u = homology.check_cocycle(tri, clear_denominators(u)[0])
    if not any(u):
        return TransversalityReport(
            HONEST, tubes=[{"cusp": c.id, "pairs_before": 0,
                            "pairs_after": 0} for c in cusps],
            conditions={"taut": True, "nonnegative_on_cycles": True,
                        "intersection": "satisfied by construction"},
            surface=None, empty=True)
    ambient = "filled" if tubes.solid else "cusped"
    cert = cone_membership(tri, u, seed=seed, tubes=tubes, ambient=ambient,
                           cusps=cusps)
    if not cert.member:
        return TransversalityReport(
            NOT_TRANSVERSE, obstruction={"cone": cert.as_dict()},
            conditions={"nonnegative_on_cycles": False})
    try:
        surface = carried_surface(tri, cert.witness, tubes, cusps,
                                  completions, seed)
    except NegativeCorePairingError as e:
        return TransversalityReport(
            NOT_TRANSVERSE,
            obstruction={"negative_core": {"cusp": e.cusp, "core": e.core}},
            conditions={"nonnegative_on_cycles": True})
    return classify_surface(surface)


def classify_surface(surface):
    """Honest or almost transverse verdict of a carried surface

    Puts `surface` in efficient position and builds the blowup graph
    of every tube that keeps completion annuli.
    """
    efficient = efficient_position(surface)
    rows = []
    blowups = {}
    for before, after in zip(surface.boundaries, efficient.boundaries):
        rows.append({"cusp": before.cusp,
                     "kind": before.kind,
                     "pairs_before": before.ladderpole_pairs,
                     "pairs_after": after.ladderpole_pairs,
                     })
        if after.ladderpole_pairs:
            blowups[after.cusp] = blowup_graph(arc_system_from_tube(after))
    # <Γ, w> is the same for every cocycle of the class
    x = Fraction(surface.total_weight, 2) - surface.gamma_pairing
    conditions = {"taut": -surface.euler_char == x,
                  "nonnegative_on_cycles": True,
                  "intersection": "satisfied by construction",
                  }
    verdict = ALMOST if blowups else HONEST
    logger.info("Transversality verdict: %s", verdict)
    return TransversalityReport(verdict, rows, blowups, None, conditions,
                                efficient)
