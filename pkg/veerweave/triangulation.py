"""Veering triangulations: data model, .vtri format and validation

Conventions
-----------
- Face ``i`` of a tetrahedron is the face opposite vertex ``i``.
- A gluing entry ``(t, f, p)`` stored at face ``g`` of tetrahedron
  ``s`` glues face ``g`` of ``s`` to face ``f`` of ``t`` via the
  label map ``k -> p[k]``.
- Every tetrahedron carries the orientation of its label order
  (0, 1, 2, 3); a gluing is orientation-compatible iff ``p`` is odd.
- Angles are implicit: pi on the top and bottom edge, 0 on the four
  equatorial edges.
- The two faces containing the top edge are the top faces; they are
  cooriented out of the tetrahedron. The two bottom faces are
  cooriented into it.
"""
import itertools
import json
import logging
import numbers

from .integrity import Check, ValidationReport


logger = logging.getLogger(__name__)

#: Generation of the .vtri and JSON report schemas
FORMAT_VERSION = 1

#: Color of the even-ordered equatorial pair {{b0,t0},{b1,t1}}.
#: Chosen such that the figure-eight fixture colors its degree-six
#: edge through the even pairs red (see DESIGN.md).
VEER_CALIBRATION = "red"

COLORS = ("red", "blue")

VERTEX_PAIRS = tuple(itertools.combinations(range(4), 2))


class TriangulationSyntaxError(ValueError):
    def __init__(self, msg, line=None, column=None):
        if line is not None:
            msg = "{} (line {}, column {})".format(msg, line, column)
        super(TriangulationSyntaxError, self).__init__(msg)
        self.line = line
        self.column = column


class GluingError(ValueError):
    pass


class NotVeeringError(ValueError):
    pass


class UnvalidatedError(ValueError):
    pass


class FrozenTriangulationError(AttributeError):
    """Write to a validated triangulation"""
    pass


class _Freezable(object):
    _frozen = False

    def __setattr__(self, name, value):
        if self._frozen:
            raise FrozenTriangulationError(
                "Cannot set '{}': {!r} is read-only after "
                "validation!".format(name, self))
        super(_Freezable, self).__setattr__(name, value)

    def _freeze(self):
        object.__setattr__(self, "_frozen", True)


def pair(a, b):
    """Unordered vertex pair as a sorted tuple"""
    return (a, b) if a < b else (b, a)


def perm_parity(perm):
    """Return 0 for even and 1 for odd permutations"""
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2)
                     if perm[i] > perm[j])
    return inversions % 2


def perm_inverse(perm):
    inv = [0] * len(perm)
    for k, pk in enumerate(perm):
        inv[pk] = k
    return tuple(inv)


class Tetrahedron(object):
    def __init__(self, tid, top_edge, gluings):
        self.id = tid
        self.top_edge = pair(*top_edge)
        self.gluings = tuple((int(t), int(f), tuple(int(x) for x in p))
                             for t, f, p in gluings)

    def __repr__(self):
        return "<Tetrahedron {} top={}>".format(self.id, self.top_edge)

    @property
    def bottom_edge(self):
        return tuple(k for k in range(4) if k not in self.top_edge)

    @property
    def equatorial_edges(self):
        return tuple(vp for vp in VERTEX_PAIRS
                     if vp not in (self.top_edge, self.bottom_edge))

    @property
    def top_faces(self):
        # the faces opposite the bottom vertices contain the top edge
        return self.bottom_edge

    @property
    def bottom_faces(self):
        return self.top_edge

    def angle(self, vpair):
        """Dihedral angle at a vertex pair in units of pi"""
        return 1 if pair(*vpair) in (self.top_edge, self.bottom_edge) else 0

    def even_ordering(self):
        """Vertices (b0, b1, t0, t1) forming an even permutation"""
        b0, b1 = self.bottom_edge
        t0, t1 = self.top_edge
        order = (b0, b1, t0, t1)
        if perm_parity(order):
            order = (b0, b1, t1, t0)
        return order


class Face(object):
    def __init__(self, fid, sides):
        self.id = fid
        #: the two (tet, face index) instances identified by the gluing
        self.sides = tuple(sides)

    def __repr__(self):
        return "<Face {} {}>".format(self.id, self.sides)


class EdgeClass(_Freezable):
    def __init__(self, eid, incidences, faces, along, reversed_corner):
        self.id = eid
        #: cyclically ordered (tet, vertex pair, angle in units of pi)
        self.incidences = tuple(incidences)
        #: face crossed between incidence k and incidence k+1
        self.faces = tuple(faces)
        #: whether that crossing follows the face coorientation
        self.along = tuple(along)
        #: the walk around the edge met a corner twice
        self.reversed_corner = reversed_corner
        #: derived by `derive_veers` during validation
        self.veer = None
        #: (fan_A, fan_B), set during validation
        self.fans = None

    def __repr__(self):
        return "<EdgeClass {} degree={} veer={}>".format(
            self.id, self.degree, self.veer)

    @property
    def degree(self):
        return len(self.incidences)

    def pi_corners(self):
        return [k for k, inc in enumerate(self.incidences) if inc[2] == 1]


class VeeringTriangulation(_Freezable):
    def __init__(self, tets):
        self.tets = tuple(tets)
        self.faces, self._face_index = _enumerate_faces(self.tets)
        self.edges, self._edge_index = _enumerate_edges(self)
        #: ValidationReport, set by `validate`
        self.report = None

    def __eq__(self, other):
        return (isinstance(other, VeeringTriangulation)
                and triangulation_to_dict(self)
                == triangulation_to_dict(other))

    def __hash__(self):
        return hash(serialize_triangulation(self))

    def __len__(self):
        return len(self.tets)

    def __repr__(self):
        return "<VeeringTriangulation tets={} edges={} {}>".format(
            len(self.tets), len(self.edges),
            "unvalidated" if self.report is None else self.report.state)

    @property
    def valid(self):
        return self.report is not None and self.report.valid

    @property
    def veers(self):
        return tuple(edge.veer for edge in self.edges)

    def face_id(self, tet, face):
        return self._face_index[(tet, face)]

    def edge_id(self, tet, vpair):
        return self._edge_index[(tet, pair(*vpair))]

    def is_top_face(self, tet, face):
        return face in self.tets[tet].top_faces

    def below(self, fid):
        """Tetrahedron having face `fid` as a top face"""
        for tet, face in self.faces[fid].sides:
            if self.is_top_face(tet, face):
                return tet
        raise GluingError("Face {} is a top face of neither side!".format(fid))

    def above(self, fid):
        """Tetrahedron having face `fid` as a bottom face"""
        for tet, face in self.faces[fid].sides:
            if not self.is_top_face(tet, face):
                return tet
        raise GluingError("Face {} is a bottom face of neither side!".format(
            fid))

    def top_face_ids(self, tet):
        return tuple(self.face_id(tet, i) for i in self.tets[tet].top_faces)

    def bottom_face_ids(self, tet):
        return tuple(self.face_id(tet, i) for i in self.tets[tet].bottom_faces)


def _enumerate_faces(tets):
    faces = []
    index = {}
    for tet in tets:
        for g, (t, f, _) in enumerate(tet.gluings):
            if (tet.id, g) in index:
                continue
            fid = len(faces)
            faces.append(Face(fid, [(tet.id, g), (t, f)]))
            index[(tet.id, g)] = fid
            index[(t, f)] = fid
    return faces, index


def _walk_edge(tri, tet, vpair):
    """Walk once around the edge through the corner (tet, vpair)"""
    a, b = vpair
    c, d = [k for k in range(4) if k not in vpair]
    start = (tet, pair(a, b), c)
    state = (tet, a, b, c, d)
    steps = []
    while True:
        t, a, b, c, d = state
        steps.append(state)
        t2, _, p = tri.tets[t].gluings[c]
        # enter through face p[c], leave through the face opposite p[d]
        state = (t2, p[a], p[b], p[d], p[c])
        if (state[0], pair(state[1], state[2]), state[3]) == start:
            return steps


def _enumerate_edges(tri):
    edges = []
    index = {}
    for tet in tri.tets:
        for vpair in VERTEX_PAIRS:
            if (tet.id, vpair) in index:
                continue
            eid = len(edges)
            incidences = []
            faces = []
            along = []
            seen = set()
            reversed_corner = False
            for t, a, b, c, _ in _walk_edge(tri, tet.id, vpair):
                corner = (t, pair(a, b))
                if corner in seen:
                    reversed_corner = True
                seen.add(corner)
                index[corner] = eid
                incidences.append((t, corner[1], tri.tets[t].angle(corner[1])))
                faces.append(tri.face_id(t, c))
                along.append(c in tri.tets[t].top_faces)
            edges.append(EdgeClass(eid, incidences, faces, along,
                                   reversed_corner))
    return edges, index


def is_int(value):
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def parse_triangulation(text):
    """Parse a .vtri document into an unvalidated triangulation

    Parameters
    ----------
    text: str or bytes
        UTF-8 JSON document
        ``{"tets": N, "top_edges": [...], "gluings": [...]}``

    Returns
    -------
    tri: VeeringTriangulation
        Structural object with faces and edges computed; call
        `validate` before using it downstream.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if not text.strip():
        raise TriangulationSyntaxError("Empty document", 1, 1)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise TriangulationSyntaxError(e.msg, e.lineno, e.colno)
    return triangulation_from_dict(doc)


def triangulation_from_dict(doc):
    if not isinstance(doc, dict):
        raise TriangulationSyntaxError("Top level must be a JSON object!")
    missing = [key for key in ["tets", "top_edges", "gluings"]
               if key not in doc]
    if missing:
        raise TriangulationSyntaxError(
            "Missing key(s): {}".format(", ".join(missing)))
    ntet = doc["tets"]
    if not is_int(ntet) or ntet < 1:
        raise TriangulationSyntaxError("'tets' must be a positive integer!")
    top_edges = doc["top_edges"]
    gluings = doc["gluings"]
    for key, value in [("top_edges", top_edges), ("gluings", gluings)]:
        if not isinstance(value, list) or len(value) != ntet:
            raise TriangulationSyntaxError(
                "'{}' must be a list of {} entries!".format(key, ntet))

    tets = []
    for s in range(ntet):
        te = top_edges[s]
        if not (isinstance(te, list) and len(te) == 2
                and all(is_int(v) and 0 <= v <= 3 for v in te)
                and te[0] != te[1]):
            raise TriangulationSyntaxError(
                "Top edge of tet {} must be two distinct vertex labels "
                "from 0..3, got {}!".format(s, te))
        glu = gluings[s]
        if not (isinstance(glu, list) and len(glu) == 4):
            raise TriangulationSyntaxError(
                "Tet {} must have exactly 4 gluing entries!".format(s))
        entries = []
        for g, entry in enumerate(glu):
            if not (isinstance(entry, list) and len(entry) == 3):
                raise TriangulationSyntaxError(
                    "Gluing of tet {} face {} must be [t, f, perm]!".format(
                        s, g))
            t, f, p = entry
            if not (isinstance(p, list) and len(p) == 4
                    and all(is_int(x) for x in p)):
                raise TriangulationSyntaxError(
                    "Permutation of tet {} face {} must be 4 integers!".format(
                        s, g))
            if not is_int(t) or not 0 <= t < ntet:
                raise GluingError(
                    "Tet {} face {}: tet id {} out of range!".format(s, g, t))
            if not is_int(f) or not 0 <= f <= 3:
                raise GluingError(
                    "Tet {} face {}: face index {} out of range!".format(
                        s, g, f))
            if sorted(p) != [0, 1, 2, 3]:
                raise GluingError(
                    "Tet {} face {}: vertex map {} is not a bijection!".format(
                        s, g, p))
            if p[g] != f:
                raise GluingError(
                    "Tet {} face {}: vertex map {} does not carry face {} "
                    "onto face {}!".format(s, g, p, g, f))
            entries.append((t, f, p))
        tets.append(Tetrahedron(s, te, entries))
    _check_pairing(tets)
    return VeeringTriangulation(tets)


def _check_pairing(tets):
    sources = {}
    for tet in tets:
        for g, (t, f, _) in enumerate(tet.gluings):
            sources.setdefault((t, f), []).append((tet.id, g))
    for (t, f), src in sorted(sources.items()):
        if len(src) > 1:
            raise GluingError(
                "Face {} of tet {} is glued twice (from {})!".format(
                    f, t, ", ".join("tet {} face {}".format(*s) for s in src)))
    for tet in tets:
        for g, (t, f, p) in enumerate(tet.gluings):
            if (t, f) == (tet.id, g):
                raise GluingError(
                    "Face {} of tet {} is glued to itself!".format(g, t))
            back = tets[t].gluings[f]
            if back[:2] != (tet.id, g) or back[2] != perm_inverse(p):
                raise GluingError(
                    "Gluings of tet {} face {} and tet {} face {} are not "
                    "mutually inverse (face left unglued)!".format(
                        tet.id, g, t, f))


def triangulation_to_dict(tri):
    return {"tets": len(tri.tets),
            "top_edges": [list(tet.top_edge) for tet in tri.tets],
            "gluings": [[[t, f, list(p)] for t, f, p in tet.gluings]
                        for tet in tri.tets],
            }


def serialize_triangulation(tri):
    """Write the .vtri document of a triangulation (one tet per line)"""
    doc = triangulation_to_dict(tri)
    glu = ",\n  ".join(json.dumps(g) for g in doc["gluings"])
    return ('{{"tets": {},\n "top_edges": {},\n "gluings": [\n  {}\n ]\n}}\n'
            .format(doc["tets"], json.dumps(doc["top_edges"]), glu))


def from_isosig(signature):
    """Import from a census isomorphism signature (not implemented)

    Census entries look like ``cPcbbbiht_12``: an isomorphism
    signature followed by one taut-angle digit per tetrahedron.
    Transcribe them into the .vtri format instead; the packaged
    figure-eight fixture documents how that was done for
    ``cPcbbbiht_12``.
    """
    raise NotImplementedError(
        "Isomorphism signatures are not supported; convert '{}' to the "
        ".vtri format.".format(signature))


def relabel(tri, perm):
    """Copy of `tri` in which tetrahedron `i` becomes `perm[i]`"""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(len(tri.tets))):
        raise ValueError("Not a permutation of tet ids: {}".format(perm))
    new = [None] * len(tri.tets)
    for tet in tri.tets:
        glu = [(perm[t], f, p) for t, f, p in tet.gluings]
        new[perm[tet.id]] = Tetrahedron(perm[tet.id], tet.top_edge, glu)
    return VeeringTriangulation(new)


def reverse_coorientation(tri):
    """Copy of `tri` with top and bottom edges exchanged everywhere"""
    return VeeringTriangulation(
        [Tetrahedron(tet.id, tet.bottom_edge, tet.gluings)
         for tet in tri.tets])


def require_valid(tri):
    if tri.report is None:
        raise UnvalidatedError(
            "The triangulation has not been validated!")
    if not tri.report.valid:
        raise UnvalidatedError(
            "The triangulation failed validation: {}".format(
                ", ".join(tri.report.failed)))


def split_fans(tri, edge):
    """Split the faces around an edge at its two pi-corners

    Returns
    -------
    fans: tuple of two lists
        Face ids of both sides, each ordered along the coorientation
        (from the tetrahedron below the edge to the one above it).
    coherent: tuple of two bool
        Whether every face of the side is crossed along its
        coorientation in that order.
    """
    pis = edge.pi_corners()
    if len(pis) != 2:
        raise GluingError("Edge {} has {} pi-corners!".format(
            edge.id, len(pis)))
    tops = [k for k in pis
            if tri.tets[edge.incidences[k][0]].top_edge
            == edge.incidences[k][1]]
    if len(tops) != 1:
        raise GluingError("Edge {} is the top edge of {} corners!".format(
            edge.id, len(tops)))
    s = tops[0]
    r = pis[1] if pis[0] == s else pis[0]
    n = edge.degree
    up = [k % n for k in range(s, s + (r - s) % n)]
    down = [k % n for k in range(r, r + (s - r) % n)]
    fan_up = [edge.faces[k] for k in up]
    fan_down = [edge.faces[k] for k in reversed(down)]
    coherent = (all(edge.along[k] for k in up),
                all(not edge.along[k] for k in down))
    if tuple(fan_down) < tuple(fan_up):
        return (fan_down, fan_up), coherent[::-1]
    return (fan_up, fan_down), coherent


def edge_fans(tri, e):
    """The two fans of faces around an edge

    Parameters
    ----------
    tri: VeeringTriangulation
        validated triangulation
    e: int or EdgeClass
        the edge

    Returns
    -------
    fan_A, fan_B: lists of face ids
        Both ordered along the coorientation; fan_A is the
        lexicographically smaller one.
    """
    require_valid(tri)
    edge = tri.edges[e] if is_int(e) else e
    return edge.fans


def veer_constraints(tri):
    """Per tetrahedron: (even equatorial pair, odd equatorial pair)"""
    pairs = []
    for tet in tri.tets:
        b0, b1, t0, t1 = tet.even_ordering()
        even = [tri.edge_id(tet.id, (b0, t0)), tri.edge_id(tet.id, (b1, t1))]
        odd = [tri.edge_id(tet.id, (b0, t1)), tri.edge_id(tet.id, (b1, t0))]
        pairs.append((even, odd))
    return pairs


def solve_veer_constraints(nedges, tet_pairs, calibration=VEER_CALIBRATION):
    """Solve the veer 2-coloring system

    Parameters
    ----------
    nedges: int
        Number of edge classes
    tet_pairs: list of (even, odd)
        Edge ids of the even and odd equatorial pair of every
        tetrahedron; the two edges of a pair share their color and
        the two pairs receive opposite colors.
    calibration: str
        Color given to the even pair of the lowest tetrahedron
        touching each constraint component.

    Returns
    -------
    colors: tuple of str
        One of `COLORS` per edge

    Raises
    ------
    NotVeeringError
        if the system is unsatisfiable, if an edge is unconstrained
        or if the calibrated solution mixes both handednesses
    """
    # edge -> list of (other edge, differ)
    links = {e: [] for e in range(nedges)}
    for even, odd in tet_pairs:
        for x, y, differ in [(even[0], even[1], 0), (odd[0], odd[1], 0),
                             (even[0], odd[0], 1)]:
            links[x].append((y, differ))
            links[y].append((x, differ))

    parity = [None] * nedges
    for even, _ in tet_pairs:
        root = even[0]
        if parity[root] is not None:
            continue
        parity[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y, differ in links[x]:
                want = parity[x] ^ differ
                if parity[y] is None:
                    parity[y] = want
                    stack.append(y)
                elif parity[y] != want:
                    raise NotVeeringError(
                        "Taut but not veering: edge {} is forced to be "
                        "both colors!".format(y))
    unconstrained = [e for e in range(nedges) if parity[e] is None]
    if unconstrained:
        raise NotVeeringError(
            "Taut but not veering: edge(s) {} have no equatorial "
            "corner!".format(unconstrained))
    # parity 0 is the even pair of the lowest tet in each component
    other = COLORS[1 - COLORS.index(calibration)]
    colors = tuple(calibration if p == 0 else other for p in parity)
    mixed = [t for t, (even, _) in enumerate(tet_pairs)
             if colors[even[0]] != calibration]
    if mixed:
        raise NotVeeringError(
            "Taut but not veering: tetrahedra {} have the opposite "
            "handedness!".format(mixed))
    return colors


def derive_veers(tri):
    """Veer color of every edge class under `VEER_CALIBRATION`"""
    return solve_veer_constraints(len(tri.edges), veer_constraints(tri))


def _check_orientability(tri):
    details = []
    for tet in tri.tets:
        for g, (t, f, p) in enumerate(tet.gluings):
            if not perm_parity(p):
                details.append(
                    "tet {} face {} -> tet {} face {}: even vertex map "
                    "{}".format(tet.id, g, t, f, list(p)))
    for edge in tri.edges:
        if edge.reversed_corner:
            details.append("edge {} is identified with itself "
                           "reversed".format(edge.id))
    return Check("orientability", not details, details)


def _check_angle_sums(tri):
    details = ["edge {} has {} pi-corners (angle sum {}pi)".format(
               edge.id, len(edge.pi_corners()), len(edge.pi_corners()))
               for edge in tri.edges if len(edge.pi_corners()) != 2]
    return Check("angle sums", not details, details)


def _check_top_bottom(tri):
    details = []
    for edge in tri.edges:
        ntop = sum(1 for t, vp, _ in edge.incidences
                   if tri.tets[t].top_edge == vp)
        nbot = sum(1 for t, vp, _ in edge.incidences
                   if tri.tets[t].bottom_edge == vp)
        if (ntop, nbot) != (1, 1):
            details.append("edge {} is the top edge {} times and the bottom "
                           "edge {} times".format(edge.id, ntop, nbot))
    return Check("top/bottom uniqueness", not details, details)


def _check_coorientation(tri):
    details = []
    for face in tri.faces:
        ntop = sum(1 for t, i in face.sides if tri.is_top_face(t, i))
        if ntop != 1:
            details.append("face {} is a {} face on both sides".format(
                face.id, "top" if ntop == 2 else "bottom"))
    return Check("coorientation", not details, details)


def _check_euler(tri):
    details = []
    if len(tri.faces) != 2 * len(tri.tets):
        details.append("{} faces for {} tetrahedra".format(
            len(tri.faces), len(tri.tets)))
    if len(tri.edges) != len(tri.tets):
        details.append("{} edges for {} tetrahedra".format(
            len(tri.edges), len(tri.tets)))
    return Check("euler characteristic", not details, details)


def _check_fans(tri):
    details = []
    fans = {}
    for edge in tri.edges:
        try:
            (fan_a, fan_b), coherent = split_fans(tri, edge)
        except GluingError as e:
            details.append(str(e))
            continue
        if not fan_a or not fan_b:
            details.append("edge {} has an empty fan".format(edge.id))
        elif not all(coherent):
            details.append("edge {}: faces of a fan are not cooriented "
                           "coherently".format(edge.id))
        else:
            fans[edge.id] = (fan_a, fan_b)
    return Check("fan coherence", not details, details), fans


def _check_veers(tri):
    try:
        colors = derive_veers(tri)
    except NotVeeringError as e:
        return Check("veer colorability", False, [str(e)]), None
    return Check("veer colorability", True), colors


def validate(tri):
    """Run all validation checks and mark the triangulation

    A valid triangulation is frozen: its veers, fans and report can no
    longer be reassigned, and validating it again returns the stored
    report.

    Returns
    -------
    report: ValidationReport
        Independent checks "orientability", "angle sums",
        "top/bottom uniqueness", "coorientation",
        "euler characteristic", "fan coherence" and
        "veer colorability". The triangulation is valid only
        if all of them pass.
    """
    if tri.valid:
        return tri.report
    fan_check, fans = _check_fans(tri)
    veer_check, colors = _check_veers(tri)
    report = ValidationReport([
        _check_orientability(tri),
        _check_angle_sums(tri),
        _check_top_bottom(tri),
        _check_coorientation(tri),
        _check_euler(tri),
        fan_check,
        veer_check,
    ])
    tri.report = report
    if report.valid:
        for edge in tri.edges:
            edge.fans = fans[edge.id]
            edge.veer = colors[edge.id]
            edge._freeze()
        tri._freeze()
    else:
        logger.debug("Validation failed: %s", report.failed)
    return report
