"""Lookup and cached loading of fixture files"""
import functools
import json
import os
import pathlib
import warnings

from .arcs import ArcSystem
from .cusp import tubes_from_dict
from .triangulation import parse_triangulation, require_valid, validate


#: Fixtures shipped with the package
PACKAGED = pathlib.Path(__file__).resolve().parent / "fixtures"


class FixtureDirectoryWarning(UserWarning):
    pass


def fixture_dir():
    """Directory searched for fixtures

    ``VEERWEAVE_FIXTURES`` overrides the packaged directory. A setting
    that is not a directory is ignored with a warning.
    """
    env = os.environ.get("VEERWEAVE_FIXTURES")
    if env:
        path = pathlib.Path(env)
        if path.is_dir():
            return path
        warnings.warn("VEERWEAVE_FIXTURES='{}' is not a directory, using "
                      "the packaged fixtures.".format(env),
                      FixtureDirectoryWarning)
    return PACKAGED


def list_fixtures():
    return sorted(p.name for p in fixture_dir().iterdir() if p.is_file())


def resolve_path(path):
    """Existing file for `path`

    Paths that exist are returned as they are. Otherwise `path` is
    looked up in the fixture directory, both with its full relative
    name and with the leading "fixtures/" component removed.

    Raises
    ------
    FileNotFoundError
        if no candidate exists
    """
    path = pathlib.Path(path)
    if path.exists():
        return path.resolve()
    base = fixture_dir()
    candidates = [base / path]
    if path.parts and path.parts[0] == "fixtures":
        candidates.append(base.joinpath(*path.parts[1:]))
    candidates.append(base / path.name)
    for cc in candidates:
        if cc.is_file():
            return cc.resolve()
    raise FileNotFoundError("No such file or fixture: '{}'".format(path))


@functools.lru_cache(maxsize=100)
def _read_text(path, mtime):
    return pathlib.Path(path).read_text(encoding="utf-8")


def read_text(path):
    path = resolve_path(path)
    return _read_text(str(path), path.stat().st_mtime)


def load_json(path):
    return json.loads(read_text(path))


def load_triangulation(path, strict=True):
    """Parse and validate a .vtri file

    A fresh triangulation is returned on every call; only the file
    content is cached.

    Parameters
    ----------
    path: str or pathlib.Path
        file path or fixture name
    strict: bool
        raise if validation fails; otherwise the failed report is
        available as ``tri.report``
    """
    tri = parse_triangulation(read_text(path))
    validate(tri)
    if strict:
        require_valid(tri)
    return tri


def load_tubes(path, ncusps=None):
    return tubes_from_dict(load_json(path), ncusps)


def load_arcs(path):
    return ArcSystem.from_dict(load_json(path))
