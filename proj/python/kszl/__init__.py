"""Exact computations with quadratic algebras."""

import json

from ._core import Algebra, KszlError, Map, __version__, skew3
from ._core import _run

__all__ = ["Algebra", "KszlError", "Map", "skew3", "run", "__version__"]


def run(*args):
    """Run a CLI command; returns (exit_code, report dict)."""
    argv = [str(a) for a in args]
    if "--json" not in argv:
        argv.append("--json")
    code, text = _run(argv)
    return code, json.loads(text)
