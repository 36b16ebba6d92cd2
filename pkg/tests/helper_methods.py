import copy
import itertools
import json
import pathlib
import shutil
import tempfile

from veerweave import homology
from veerweave.fixtures import PACKAGED
from veerweave.triangulation import parse_triangulation, validate


def retrieve_fixture(name):
    """Copy a packaged fixture to a temporary directory and return its path
    """
    src = PACKAGED / name
    edest = pathlib.Path(tempfile.mkdtemp(prefix=src.stem))
    dst = edest / src.name
    shutil.copy(str(src), str(dst))
    return dst


def f8_document():
    return json.loads((PACKAGED / "f8.vtri").read_text(encoding="utf-8"))


def load_f8():
    tri = parse_triangulation((PACKAGED / "f8.vtri").read_text("utf-8"))
    validate(tri)
    return tri


def write_document(doc, name="mutant.vtri"):
    path = pathlib.Path(tempfile.mkdtemp(prefix="doc")) / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def _set(path, value):
    def mutate(doc):
        doc = copy.deepcopy(doc)
        target = doc
        for key in path[:-1]:
            target = target[key]
        target[path[-1]] = value
        return doc
    return mutate


def _even_face0(doc):
    # face 0 <-> face 0 through an even map: breaks orientability
    doc = copy.deepcopy(doc)
    doc["gluings"][0][0] = [1, 0, [0, 2, 3, 1]]
    doc["gluings"][1][0] = [0, 0, [0, 3, 1, 2]]
    return doc


def _drop(key):
    def mutate(doc):
        doc = copy.deepcopy(doc)
        del doc[key]
        return doc
    return mutate


#: single-field corruptions of the figure-eight document
F8_MUTATIONS = [
    ("partner mismatch", _set(["gluings", 0, 0], [1, 1, [0, 1, 3, 2]])),
    ("not a permutation", _set(["gluings", 0, 0], [1, 0, [0, 0, 3, 2]])),
    ("wrong face map", _set(["gluings", 1, 2], [0, 2, [0, 1, 3, 2]])),
    ("tetrahedron count", _set(["tets"], 3)),
    ("no tetrahedra", _set(["tets"], 0)),
    ("degenerate top edge", _set(["top_edges", 0], [0, 0])),
    ("vertex out of range", _set(["top_edges", 0], [0, 4])),
    ("reversed tetrahedron", _set(["top_edges", 0], [1, 3])),
    ("missing top edge", _set(["top_edges"], [[0, 2]])),
    ("missing gluings", _drop("gluings")),
    ("even gluing", _even_face0),
]


def enumerate_cocycles(tri, bound):
    """All nonnegative cocycles with total weight at most `bound`"""
    nf = len(tri.faces)
    found = []
    for w in itertools.product(range(bound + 1), repeat=nf):
        if sum(w) <= bound and homology.is_cocycle(tri, list(w)):
            found.append(list(w))
    return found


def all_simple_cycles(tri):
    """Simple directed cycles of the dual graph by plain depth-first search

    Each cycle is a list of face ids and starts at its smallest
    tetrahedron.
    """
    out = {}
    for f in tri.faces:
        out.setdefault(tri.below(f.id), []).append(f.id)
    cycles = []

    def dfs(start, v, faces, visited):
        for f in out.get(v, []):
            w = tri.above(f)
            if w == start:
                cycles.append(faces + [f])
            elif w > start and w not in visited:
                dfs(start, w, faces + [f], visited | {w})

    for start in range(len(tri.tets)):
        dfs(start, start, [], {start})
    return cycles


def all_cycles_verdict(tri, u):
    """Membership by pairing `u` with every simple cycle"""
    return all(sum(u[f] for f in z) >= 0 for z in all_simple_cycles(tri))


def random_class(tri, summary, state, spread=3):
    """Random integral class plus a random coboundary"""
    coords = [int(x) for x in state.randint(-spread, spread + 1,
                                            size=len(summary.basis))]
    w = homology.resolve_class(tri, summary, coords=coords)
    c = [int(x) for x in state.randint(-spread, spread + 1,
                                       size=len(tri.tets))]
    return [x + y for x, y in zip(w, homology.coboundary(tri, c))], coords


#: sheet permutations of the dihedral five-fold cover of the figure-eight,
#: keyed by (tet, face) on one side of each gluing; (0, 0) is trivial
F8_COVER_SHEETS = {
    (0, 1): [3, 2, 1, 0, 4],
    (0, 2): [1, 2, 3, 4, 0],
    (0, 3): [0, 4, 3, 2, 1],
}


def lift_document(doc, sheets, degree):
    """Finite cover of a .vtri document given by sheet permutations

    Copy `i` of tetrahedron `t` becomes tetrahedron ``tets * i + t``.
    Gluings missing from `sheets` stay on their sheet.
    """
    n = doc["tets"]
    moves = {}
    for (tet, face), perm in sheets.items():
        other, oface, _ = doc["gluings"][tet][face]
        moves[(tet, face)] = list(perm)
        moves[(other, oface)] = [perm.index(j) for j in range(degree)]
    gluings, top = [], []
    for i in range(degree):
        for tet in range(n):
            top.append(list(doc["top_edges"][tet]))
            row = []
            for face, (other, oface, perm) in enumerate(doc["gluings"][tet]):
                j = moves.get((tet, face), range(degree))[i]
                row.append([n * j + other, oface, list(perm)])
            gluings.append(row)
    return {"tets": n * degree, "top_edges": top, "gluings": gluings}


def load_cover():
    tri = parse_triangulation(
        (PACKAGED / "f8_cover5.vtri").read_text("utf-8"))
    validate(tri)
    return tri


def lift_weights(base, cover, w):
    """Pull back face weights along the covering map"""
    n = len(base.tets)
    return [w[base.face_id(f.sides[0][0] % n, f.sides[0][1])]
            for f in cover.faces]
