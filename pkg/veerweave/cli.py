"""Command line interface

Every subcommand builds a result document. Human mode prints it as
``key: value`` lines, ``--json`` prints it with a provenance header.
Exit codes: 0 success, 2 negative verdict, 1 error.
"""
import argparse
import json
import logging
import sys
from fractions import Fraction

from . import fixtures, history, homology
from ._version import version
from .arcs import blowup_graph
from .carry import carried_surface, euler_class, flip_up, flip_walk, \
    thurston_norm
from .cusp import TubeSystem, build_cusps, tube_report
from .flowgraph import CYCLE_CAP, cone_face, cone_membership, dual_graph, \
    verify_certificate
from .triangulation import FORMAT_VERSION, GluingError
from .transverse import NOT_TRANSVERSE, transversality_report


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2

BIRKHOFF_CRITERION = ("pairs nonnegatively with all closed orbits of the "
                      "flow on the complement of the punctured orbits")


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with code 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError("{}: error: {}".format(self.prog, message))


def parse_numbers(text):
    """Integers or fractions from "1,-2", "[1, -2]" or '["1/2", 3]'"""
    text = text.strip()
    if text.startswith("["):
        values = json.loads(text)
        if not isinstance(values, list):
            raise ValueError("Expected a JSON array, got '{}'!".format(text))
    else:
        values = [v for v in text.split(",") if v.strip()]
    out = []
    for v in values:
        if isinstance(v, bool) or isinstance(v, float):
            raise ValueError("Weights must be integers or 'p/q' strings, "
                             "got {}!".format(v))
        x = Fraction(str(v).strip()) if isinstance(v, str) else Fraction(v)
        out.append(int(x) if x.denominator == 1 else x)
    return out


def _context(args, need_tubes=False):
    """Triangulation, cusps and tube system of the invocation"""
    tri = fixtures.load_triangulation(args.file)
    cusps = build_cusps(tri)
    if getattr(args, "tubes", None):
        tubes = fixtures.load_tubes(args.tubes, len(cusps))
    elif need_tubes:
        raise ValueError("This subcommand needs --tubes!")
    else:
        tubes = TubeSystem([], len(cusps))
    return tri, cusps, tubes


def _class(args, tri, summary=None):
    weights = getattr(args, "weights", None)
    coords = getattr(args, "cls", None)
    if weights is None and coords is None:
        raise ValueError("Give a class with --class or --weights!")
    if weights is not None and coords is not None:
        raise ValueError("Give either --class or --weights, not both!")
    if weights is not None:
        return weights
    if summary is None:
        summary = homology.homology_summary(tri)
    return homology.resolve_class(tri, summary, coords=coords)


def _ambient(args, tubes):
    if args.ambient == "filled" and not tubes.solid:
        raise ValueError("The filled ambient needs a tube file with a "
                         "solid tube!")
    return args.ambient


def cmd_validate(args):
    try:
        tri = fixtures.load_triangulation(args.file, strict=False)
    except GluingError as e:
        return {"valid": False, "state": "invalid", "error": str(e)}, \
            EXIT_NEGATIVE
    doc = tri.report.as_dict()
    doc["tets"] = len(tri.tets)
    if tri.report.valid:
        doc["veers"] = [e.veer for e in tri.edges]
    return doc, EXIT_OK if tri.report.valid else EXIT_NEGATIVE


def cmd_cusps(args):
    tri, cusps, _ = _context(args)
    rows = []
    for c in cusps:
        rows.append({"id": c.id,
                     "tips": len(c.tips),
                     "ladders": [lad.direction for lad in c.ladders],
                     "up_ladders": len(c.up_ladders),
                     "ladderpoles": [{"id": p.id,
                                      "sides": list(p.sides),
                                      "sign": p.sign} for p in c.poles],
                     "lambda": c.lambda_tips(),
                     "rho": {s: k for s, k in c.rho},
                     })
    return {"cusps": rows}, EXIT_OK


def cmd_tubes(args):
    tri, cusps, tubes = _context(args, need_tubes=True)
    return tube_report(tri, tubes, cusps).as_dict(), EXIT_OK


def cmd_homology(args):
    tri, cusps, tubes = _context(args)
    summary = homology.homology_summary(tri, tubes, cusps)
    doc = summary.as_dict()
    directions, values = euler_class(tri, tubes, summary, cusps)
    doc["euler_class"] = {"directions": directions, "values": values}
    return doc, EXIT_OK


def cmd_cone(args):
    tri, cusps, tubes = _context(args)
    u = _class(args, tri)
    cert = cone_membership(tri, u, seed=args.seed, tubes=tubes,
                           ambient=_ambient(args, tubes), cusps=cusps,
                           cap=args.cap)
    ok, reason = verify_certificate(tri, u, cert)
    if not ok:
        raise RuntimeError("Certificate failed verification: " + reason)
    doc = cert.as_dict()
    doc["ambient"] = args.ambient
    doc["verified"] = ok
    return doc, EXIT_OK if cert.member else EXIT_NEGATIVE


def cmd_cone_face(args):
    tri, cusps, tubes = _context(args)
    if args.dot:
        return dual_graph(tri).to_dot(), EXIT_OK
    face = cone_face(tri, tubes, ambient=_ambient(args, tubes),
                     cap=args.cap, cusps=cusps)
    return face.as_dict(), EXIT_OK


def cmd_norm(args):
    tri, cusps, tubes = _context(args)
    u = _class(args, tri)
    result = thurston_norm(tri, u, tubes, seed=args.seed, cusps=cusps)
    return result.as_dict(), EXIT_OK if result.member else EXIT_NEGATIVE


def cmd_carry(args):
    tri, cusps, tubes = _context(args)
    if args.weights is None:
        raise ValueError("carry needs --weights!")
    surface = carried_surface(tri, args.weights, tubes, cusps,
                              seed=args.seed)
    return surface.as_dict(), EXIT_OK


def cmd_flip(args):
    tri, _, _ = _context(args)
    if args.weights is None:
        raise ValueError("flip needs --weights!")
    if args.walk:
        positions, repeated = flip_walk(tri, args.weights, seed=args.seed)
        return {"positions": positions, "repeated": repeated}, EXIT_OK
    if args.tet is None:
        raise ValueError("flip needs --tet or --walk!")
    return {"tet": args.tet,
            "weights": flip_up(tri, args.weights, args.tet)}, EXIT_OK


def cmd_transverse(args):
    tri, cusps, tubes = _context(args)
    u = _class(args, tri)
    report = transversality_report(tri, u, tubes, seed=args.seed,
                                   cusps=cusps)
    code = EXIT_NEGATIVE if report.verdict == NOT_TRANSVERSE else EXIT_OK
    return report.as_dict(), code


def cmd_blowup(args):
    graph = blowup_graph(fixtures.load_arcs(args.arcs))
    if args.dot:
        return graph.to_dot(), EXIT_OK
    return graph.as_dict(), EXIT_OK


def cmd_birkhoff(args):
    tri, cusps, _ = _context(args)
    u = _class(args, tri)
    cert = cone_membership(tri, u, seed=args.seed, cusps=cusps,
                           cap=args.cap)
    doc = {"verdict": cert.verdict,
           "framing": "relative",
           "criterion": BIRKHOFF_CRITERION,
           "birkhoff_section": cert.member,
           }
    if cert.member:
        doc["witness"] = cert.as_dict()["witness"]
    else:
        doc["closed_orbit"] = cert.witness
        doc["pairing"] = cert.pairing
    return doc, EXIT_OK if cert.member else EXIT_NEGATIVE


def _compact(value):
    if isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return str(history.default_json_converter(value))
    return json.dumps(history.plain(value),
                      default=history.default_json_converter)


def human_lines(doc, indent=""):
    lines = []
    for key in sorted(doc, key=str):
        value = doc[key]
        if isinstance(value, dict) and value:
            lines.append("{}{}:".format(indent, key))
            lines += human_lines(value, indent + "  ")
        elif (isinstance(value, list) and value
              and all(isinstance(v, dict) for v in value)):
            for k, item in enumerate(value):
                lines.append("{}{}[{}]:".format(indent, key, k))
                lines += human_lines(item, indent + "  ")
        else:
            lines.append("{}{}: {}".format(indent, key, _compact(value)))
    return lines


def build_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="machine-readable output")
    common.add_argument("--seed", type=int, default=0,
                        help="tie-break variation inside the solvers")
    common.add_argument("--cap", type=int, default=CYCLE_CAP,
                        help="simple-cycle enumeration limit")
    common.add_argument("-v", "--verbose", action="store_true",
                        help="debug logging on stderr")

    tube_opt = ArgumentParser(add_help=False)
    tube_opt.add_argument("--tubes", help="tube system JSON file")

    class_opt = ArgumentParser(add_help=False)
    class_opt.add_argument("--class", dest="cls", type=parse_numbers,
                           help="class coordinates in the homology basis")
    class_opt.add_argument("--weights", type=parse_numbers,
                           help="face weights of a cocycle (JSON array)")

    ambient_opt = ArgumentParser(add_help=False)
    ambient_opt.add_argument("--ambient", choices=["cusped", "filled"],
                             default="cusped")

    parser = ArgumentParser(
        prog="veerweave",
        description="Exact combinatorics of veering triangulations")
    parser.add_argument("--version", action="version",
                        version="veerweave {} (format {})".format(
                            version, FORMAT_VERSION))
    sub = parser.add_subparsers(dest="command", parser_class=ArgumentParser)

    def add(name, func, parents, helptext, file=True):
        p = sub.add_parser(name, parents=[common] + parents, help=helptext)
        if file:
            p.add_argument("file", help=".vtri file or fixture name")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, [], "validate a triangulation")
    add("cusps", cmd_cusps, [], "cusp tips, ladders and (λ, ρ) bases")
    add("tubes", cmd_tubes, [tube_opt], "prongs and strictness of tubes")
    add("homology", cmd_homology, [tube_opt],
        "H^1, basis cocycles and Euler class")
    add("cone", cmd_cone, [tube_opt, class_opt, ambient_opt],
        "cone membership with certificate")
    p = add("cone-face", cmd_cone_face, [tube_opt, ambient_opt],
            "face of the norm ball dual to the cycle cone")
    p.add_argument("--dot", action="store_true",
                   help="print the dual graph as DOT instead")
    add("norm", cmd_norm, [tube_opt, class_opt], "Thurston norm")
    p = add("carry", cmd_carry, [tube_opt], "carried surface of weights")
    p.add_argument("--weights", type=parse_numbers, required=True)
    p = add("flip", cmd_flip, [], "upward flip of a carried surface")
    p.add_argument("--weights", type=parse_numbers, required=True)
    p.add_argument("--tet", type=int)
    p.add_argument("--walk", action="store_true",
                   help="flip until stuck or a position repeats")
    add("transverse", cmd_transverse, [tube_opt, class_opt],
        "honest versus almost transversality")
    p = add("blowup", cmd_blowup, [], "blowup graph of an arc system",
            file=False)
    p.add_argument("--arcs", required=True, help="arc system JSON file")
    p.add_argument("--dot", action="store_true")
    add("birkhoff", cmd_birkhoff, [class_opt],
        "Birkhoff section criterion on a punctured triangulation")
    return parser


def setup_logging(verbose):
    """stderr handler for the package logger and captured warnings"""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    for name in ["veerweave", "py.warnings"]:
        log = logging.getLogger(name)
        # repeated runs in one process must not stack handlers
        for old in [h for h in log.handlers
                    if isinstance(h, logging.StreamHandler)]:
            log.removeHandler(old)
        log.addHandler(handler)
    logging.getLogger("veerweave").setLevel(
        logging.DEBUG if verbose else logging.WARNING)
    logging.captureWarnings(True)


def run(argv=None, stdout=None):
    """Run one subcommand and return its exit code"""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.error("a subcommand is required")
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as e:
        # --help and --version
        return e.code or EXIT_OK
    setup_logging(args.verbose)
    try:
        doc, code = args.func(args)
    except (ValueError, RuntimeError, OSError) as e:
        print("veerweave: error: {}".format(e), file=sys.stderr)
        return EXIT_ERROR
    finally:
        logging.captureWarnings(False)
    if isinstance(doc, str):
        stdout.write(doc)
    elif args.json:
        stdout.write(history.dump_document(args.command, doc))
    else:
        stdout.write("\n".join(human_lines(doc)) + "\n")
    return code
