import json
import numbers
import pathlib
from fractions import Fraction

from ._version import version
from .triangulation import FORMAT_VERSION


def provenance(command):
    """Header identifying the producer of a JSON document"""
    return {"version": version,
            "format": FORMAT_VERSION,
            "command": command,
            }


def default_json_converter(obj):
    """is a function that should return a serializable version
    of obj or raise TypeError.
    """
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return int(obj.numerator)
        return "{}/{}".format(obj.numerator, obj.denominator)
    elif isinstance(obj, numbers.Integral):
        return int(obj)
    elif isinstance(obj, bytes):
        return obj.decode("utf-8")
    elif isinstance(obj, (tuple, set, frozenset)):
        return list(obj)
    else:
        raise TypeError(
            "Object of type '{}' is not JSON serializable".format(type(obj)))


def plain(obj):
    # dict keys must be strings for sort_keys, values go through the
    # converter
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    return obj


def dump_document(command, payload):
    """JSON text of `payload` with a provenance header

    Parameters
    ----------
    command: str
        subcommand that produced the payload
    payload: dict
        result document

    Returns
    -------
    text: str
        sorted, indented JSON with a trailing newline
    """
    doc = dict(plain(payload))
    doc["veerweave"] = provenance(command)
    return json.dumps(doc,
                      sort_keys=True,
                      indent=2,
                      default=default_json_converter,
                      ) + "\n"


def read_document(path):
    """Load a JSON document, dropping the provenance header"""
    path = pathlib.Path(path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    if isinstance(doc, dict):
        doc.pop("veerweave", None)
    return doc


def write_document(path, command, payload):
    path = pathlib.Path(path)
    path.write_text(dump_document(command, payload), encoding="utf-8")
