"""Exact combinatorics of veering triangulations"""
import logging

from ._version import version as __version__  # noqa: F401
from .triangulation import (  # noqa: F401
    FORMAT_VERSION, VeeringTriangulation, parse_triangulation, validate)

logging.getLogger(__name__).addHandler(logging.NullHandler())
