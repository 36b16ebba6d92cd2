"""Cooriented arc systems in a prong disk or annulus and blowup graphs

The outer boundary carries ``n`` prongs, even prongs stable and odd
prongs unstable. Segment ``s`` runs from prong ``s`` to prong
``s + 1``. An arc endpoint on the outer boundary is
``(segment, position)``; in the annulus model an endpoint may also be
``("inner", k)`` with ``0 <= k < n``. The twist θ rotates segments,
prongs and inner positions by ``twist``.
"""
import logging

import networkx as nx


logger = logging.getLogger(__name__)

MODELS = ("disk", "annulus")
SIDES = ("left", "right")


class ArcSystemError(ValueError):
    pass


class NoBlowupError(ValueError):
    """Arc system admits no blowup"""
    pass


def _endpoint(value):
    if (isinstance(value, (list, tuple)) and len(value) == 2
            and value[0] == "inner"):
        return ("inner", int(value[1]))
    try:
        seg, pos = value
        return (int(seg), int(pos))
    except (TypeError, ValueError):
        raise ArcSystemError("Invalid arc endpoint {}!".format(value))


def is_inner(endpoint):
    return endpoint[0] == "inner"


class Arc(object):
    def __init__(self, start, end, side):
        self.start = _endpoint(start)
        self.end = _endpoint(end)
        if side not in SIDES:
            raise ArcSystemError("Arc side must be 'left' or 'right', got "
                                 "'{}'!".format(side))
        self.side = side

    def __repr__(self):
        return "<Arc {}->{} {}>".format(self.start, self.end, self.side)

    def __eq__(self, other):
        return isinstance(other, Arc) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def key(self):
        return (self.start, self.end, self.side)

    @property
    def inner(self):
        return is_inner(self.start) or is_inner(self.end)

    def rotated(self, shift, n):
        def rot(e):
            if is_inner(e):
                return ("inner", (e[1] + shift) % n)
            return ((e[0] + shift) % n, e[1])
        return Arc(rot(self.start), rot(self.end), self.side)

    def as_dict(self):
        return {"from": list(self.start), "to": list(self.end),
                "side": self.side}


class ArcSystem(object):
    def __init__(self, model, prongs, twist=0, arcs=()):
        self.model = model
        self.prongs = prongs
        self.twist = twist
        self.arcs = list(arcs)

    def __repr__(self):
        return "<ArcSystem {} n={} twist={} arcs={}>".format(
            self.model, self.prongs, self.twist, len(self.arcs))

    @classmethod
    def from_dict(cls, doc):
        try:
            arcs = [Arc(a["from"], a["to"], a.get("side", "left"))
                    for a in doc.get("arcs", [])]
            return cls(doc["model"], int(doc["prongs"]),
                       int(doc.get("twist", 0)), arcs)
        except (KeyError, TypeError, AttributeError):
            raise ArcSystemError("Arc system must be {\"model\", \"prongs\", "
                                 "\"twist\", \"arcs\"}!")

    def as_dict(self):
        return {"model": self.model,
                "prongs": self.prongs,
                "twist": self.twist,
                "arcs": [a.as_dict() for a in self.arcs],
                }

    def outer_endpoints(self):
        ends = set()
        for arc in self.arcs:
            for e in (arc.start, arc.end):
                if not is_inner(e):
                    ends.add(e)
        return ends

    def markers(self):
        """Cyclic boundary order: prong 0, endpoints on segment 0, prong 1..."""
        ends = self.outer_endpoints()
        markers = []
        for s in range(self.prongs):
            markers.append(("prong", s))
            markers.extend(sorted(e for e in ends if e[0] == s))
        return markers

    def marker_index(self):
        return {m: k for k, m in enumerate(self.markers())}

    def validate(self):
        """Raise ArcSystemError unless the system is valid"""
        validate_arc_system(self)
        return self


def segment_distance(arc, n):
    """|Δsegment| of an outer arc, folded to 0..n/2"""
    d = (arc.start[0] - arc.end[0]) % n
    return min(d, n - d)


def far_side(AS, arc, index=None):
    """Markers cut off by an outer arc, and whether that is the forward side

    Disk model: the side not containing prong 0. Annulus model: the
    counter-clockwise interval from the start to the end.
    """
    if index is None:
        index = AS.marker_index()
    x, y = index[arc.start], index[arc.end]
    total = len(index)
    if AS.model == "disk":
        lo, hi = min(x, y), max(x, y)
        return set(range(lo + 1, hi)), x < y
    k = (x + 1) % total
    far = set()
    while k != y:
        far.add(k)
        k = (k + 1) % total
    return far, True


def enters_far_side(AS, arc, index=None):
    """Whether the coorientation of an outer arc points into its far side"""
    _, forward = far_side(AS, arc, index)
    return (arc.side == "right") == forward


def validate_arc_system(AS, coherence=True):
    """Raise ArcSystemError unless `AS` is a valid arc system

    With `coherence=False` the coorientations are not compared with the
    segment orientations.
    """
    n = AS.prongs
    if AS.model not in MODELS:
        raise ArcSystemError("Unknown model '{}'!".format(AS.model))
    if n % 2 or n < (4 if AS.model == "disk" else 2):
        raise ArcSystemError("Invalid prong count {} for the {} "
                             "model!".format(n, AS.model))
    if AS.twist % 2 or not 0 <= AS.twist < n:
        raise ArcSystemError("Twist {} does not preserve the prong "
                             "alternation!".format(AS.twist))
    seen = set()
    for arc in AS.arcs:
        for e in (arc.start, arc.end):
            if is_inner(e):
                if AS.model != "annulus":
                    raise ArcSystemError("Inner endpoints need the annulus "
                                         "model!")
                if not 0 <= e[1] < n:
                    raise ArcSystemError("Inner position {} out of "
                                         "range!".format(e[1]))
            elif not 0 <= e[0] < n:
                raise ArcSystemError("Segment {} out of range!".format(e[0]))
            if e in seen:
                raise ArcSystemError("Endpoint {} used twice!".format(e))
            seen.add(e)
        if is_inner(arc.start) and is_inner(arc.end):
            raise ArcSystemError("Arc {} has no outer endpoint!".format(arc))
        if coherence:
            _check_coherence(arc)
    _check_planarity(AS)
    keys = {a.key for a in AS.arcs}
    for arc in AS.arcs:
        if arc.rotated(AS.twist, n).key not in keys:
            raise ArcSystemError("Arc system is not symmetric under the "
                                 "twist: {} has no image.".format(arc))


def _check_coherence(arc):
    # stable prong ends are sources, unstable ends sinks
    if arc.inner:
        return
    odd = (arc.start[0] % 2, arc.end[0] % 2)
    want = (1, 0) if arc.side == "left" else (0, 1)
    if odd != want:
        raise ArcSystemError("Arc {} is not coherently cooriented!".format(
            arc))


def _check_planarity(AS):
    index = AS.marker_index()
    outer = [a for a in AS.arcs if not a.inner]
    closed = []
    for arc in outer:
        far, _ = far_side(AS, arc, index)
        closed.append(far | {index[arc.start], index[arc.end]})
    for i in range(len(outer)):
        for j in range(i + 1, len(outer)):
            a, b = closed[i], closed[j]
            if a & b and not (a <= b or b <= a):
                raise ArcSystemError("Arcs {} and {} cross!".format(
                    outer[i], outer[j]))
    inner = []
    for arc in AS.arcs:
        if not arc.inner:
            continue
        out = arc.end if is_inner(arc.start) else arc.start
        inn = arc.start if is_inner(arc.start) else arc.end
        if any(index[out] in c for c in closed):
            raise ArcSystemError("Arc {} is cut off from the inner "
                                 "boundary!".format(arc))
        inner.append((index[out], inn[1]))
    inner.sort()
    ks = [k for _, k in inner]
    if ks:
        k0 = ks.index(min(ks))
        if ks[k0:] + ks[:k0] != sorted(ks):
            raise ArcSystemError("Arcs to the inner boundary cross!")


def parallel_classes(AS):
    """Outer arcs grouped into parallel classes (lists of arc indices)

    In the annulus model the far side of an arc never holds the inner
    boundary, so two arcs with swapped endpoints enclose it and are not
    parallel.
    """
    index = AS.marker_index()
    total = len(index)
    outer = [k for k, a in enumerate(AS.arcs) if not a.inner]
    uf = nx.utils.UnionFind(outer)

    def adjacent(p, q):
        return (index[p] - index[q]) % total in (1, total - 1)

    for i in outer:
        for j in outer:
            if j <= i:
                continue
            a, b = AS.arcs[i], AS.arcs[j]
            if adjacent(a.start, b.start) and adjacent(a.end, b.end):
                uf.union(i, j)
            elif (AS.model == "disk" and adjacent(a.start, b.end)
                  and adjacent(a.end, b.start)):
                uf.union(i, j)
    return sorted(sorted(c) for c in uf.to_sets())


def reduced_arcs(AS):
    """A′: one representative per parallel class, skipping arcs between
    adjacent quadrants and arcs to the inner boundary"""
    keep = []
    for cls in parallel_classes(AS):
        arc = AS.arcs[cls[0]]
        if segment_distance(arc, AS.prongs) == 1:
            continue
        keep.append(cls[0])
    return keep


class BlowupGraph(object):
    def __init__(self, graph, attachments, kind):
        #: networkx.MultiDiGraph, nodes carry a sorted "prongs" tuple
        self.graph = graph
        #: prong -> node
        self.attachments = dict(attachments)
        #: "tree" or "circle"
        self.kind = kind

    def __repr__(self):
        return "<BlowupGraph {} vertices={} edges={}>".format(
            self.kind, self.nvertices, self.nedges)

    @property
    def nvertices(self):
        return self.graph.number_of_nodes()

    @property
    def nedges(self):
        return self.graph.number_of_edges()

    @property
    def trivial(self):
        """No blowup: a single vertex holding every prong"""
        return self.kind == "tree" and self.nvertices == 1

    def prong_counts(self):
        return sorted(len(d["prongs"]) for _, d in self.graph.nodes(data=True)
                      if d["prongs"])

    def canonical_hash(self):
        G = self.graph.copy()
        for v, d in G.nodes(data=True):
            d["label"] = ",".join(str(p) for p in d["prongs"])
        return nx.weisfeiler_lehman_graph_hash(G, node_attr="label")

    def isomorphic(self, other):
        """Isomorphism of oriented prong-labeled graphs"""
        if self.kind != other.kind:
            return False
        return nx.is_isomorphic(
            self.graph, other.graph,
            node_match=lambda a, b: a["prongs"] == b["prongs"])

    def to_dot(self, name="blowup"):
        names = {v: k for k, v in enumerate(sorted(self.graph.nodes,
                                                   key=str))}
        lines = ["digraph {} {{".format(name)]
        for v in sorted(self.graph.nodes, key=str):
            prongs = self.graph.nodes[v]["prongs"]
            lines.append('  {} [label="{}"];'.format(
                names[v], " ".join("p{}".format(p) for p in prongs)))
        for x, y in sorted(self.graph.edges(), key=str):
            lines.append("  {} -> {};".format(names[x], names[y]))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def as_dict(self):
        names = {v: k for k, v in enumerate(sorted(self.graph.nodes,
                                                   key=str))}
        return {"kind": self.kind,
                "trivial": self.trivial,
                "vertices": [{"id": names[v],
                              "prongs": list(self.graph.nodes[v]["prongs"])}
                             for v in sorted(self.graph.nodes, key=str)],
                "edges": sorted([names[x], names[y]]
                                for x, y in self.graph.edges(keys=False)),
                "prongs": {p: names[v]
                           for p, v in sorted(self.attachments.items())},
                }


def _alternates(types):
    n = len(types)
    return n > 1 and all(types[k] != types[(k + 1) % n] for k in range(n))


def blowup_graph(AS):
    """Dual tree (disk) or circle-bearing graph (annulus) of A′

    Raises
    ------
    ArcSystemError
        if the arc system is invalid
    NoBlowupError
        if orientations do not alternate around a vertex
    """
    validate_arc_system(AS, coherence=False)
    index = AS.marker_index()
    total = len(index)
    chords = reduced_arcs(AS)
    far = {}
    closed = {}
    enters = {}
    for c in chords:
        arc = AS.arcs[c]
        far[c], _ = far_side(AS, arc, index)
        closed[c] = far[c] | {index[arc.start], index[arc.end]}
        enters[c] = enters_far_side(AS, arc, index)

    def region_of(marker):
        best = None
        for c in chords:
            if marker in far[c] and (best is None
                                     or len(far[c]) < len(far[best])):
                best = c
        return best

    parent = {}
    for c in chords:
        best = None
        for d in chords:
            if d != c and closed[c] <= far[d] and (
                    best is None or len(far[d]) < len(far[best])):
                best = d
        parent[c] = best

    def anchor(c, base):
        return min((i - base) % total for i in closed[c])

    def start_of(region):
        if region is None:
            return 0
        return index[AS.arcs[region].start] if AS.model == "annulus" \
            else min(closed[region])

    regions = [None] + chords
    features = {}
    for r in regions:
        base = start_of(r)
        items = []
        for p in range(AS.prongs):
            if region_of(index[("prong", p)]) == r:
                items.append(((index[("prong", p)] - base) % total,
                              ("prong", p),
                              "source" if p % 2 == 0 else "sink"))
        for c in chords:
            if parent[c] == r:
                items.append((anchor(c, base), ("chord", c),
                              "sink" if enters[c] else "source"))
        if r is not None:
            items.append((total, ("chord", r),
                          "source" if enters[r] else "sink"))
        features[r] = sorted(items)

    G = nx.MultiDiGraph()
    attachments = {}
    for r in chords:
        types = [t for _, _, t in features[r]]
        if not _alternates(types):
            raise NoBlowupError(
                "Arc system admits no blowup: orientations do not alternate "
                "in the region cut off by {}.".format(AS.arcs[r]))
        G.add_node(("region", r), prongs=tuple(
            f[1] for _, f, _ in features[r] if f[0] == "prong"))
    root = features[None]
    root_types = [t for _, _, t in root]
    if AS.model == "disk":
        if not _alternates(root_types):
            raise NoBlowupError("Arc system admits no blowup: orientations "
                                "do not alternate in the outer region.")
        G.add_node(("region", None), prongs=tuple(
            f[1] for _, f, _ in root if f[0] == "prong"))
        home = {c: ("region", None) for c in chords if parent[c] is None}
        for p in range(AS.prongs):
            r = region_of(index[("prong", p)])
            attachments[p] = ("region", r)
        kind = "tree"
    else:
        home = {}
        for k, (_, f, t) in enumerate(root):
            node = ("landing", k)
            G.add_node(node, prongs=(f[1],) if f[0] == "prong" else ())
            if f[0] == "chord":
                home[f[1]] = node
        for k, t in enumerate(root_types):
            nxt = (k + 1) % len(root)
            if t == root_types[nxt]:
                raise NoBlowupError(
                    "Arc system admits no blowup: consecutive landings on "
                    "the inner circle are both {}s.".format(t))
            src, dst = (k, nxt) if t == "source" else (nxt, k)
            G.add_edge(("landing", src), ("landing", dst))
        for p in range(AS.prongs):
            r = region_of(index[("prong", p)])
            if r is None:
                k = [j for j, (_, f, _) in enumerate(root)
                     if f == ("prong", p)][0]
                attachments[p] = ("landing", k)
            else:
                attachments[p] = ("region", r)
        kind = "circle"
    for c in chords:
        outer = home.get(c, ("region", parent[c]))
        inner = ("region", c)
        if enters[c]:
            G.add_edge(outer, inner)
        else:
            G.add_edge(inner, outer)
    if kind == "tree" and not nx.is_tree(G.to_undirected()):
        raise RuntimeError("Dual graph of the arc system is not a tree!")
    graph = BlowupGraph(G, attachments, kind)
    logger.debug("Blowup graph %r from %r", graph, AS)
    return graph
