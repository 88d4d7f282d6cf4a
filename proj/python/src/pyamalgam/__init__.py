"""Python access to the amalgam commands.

Every function takes and returns plain JSON-compatible values; reports have
the same shape as the CLI output.
"""

import json

from . import _core
from ._core import InvariantError, ValidationError

__all__ = ["InvariantError", "ValidationError", "enumerate", "error_document", "run", "schema", "verbs"]


def verbs():
    return list(_core.verbs())


def schema(ref):
    """A shipped schema, e.g. ``"tile.json"`` or ``"common.json#/definitions/amalgam"``."""
    return json.loads(_core.schema(ref))


def run(verb, *inputs, depth=4, budget=None, samples=1000, seed=None, jobs=1):
    """Run one verb.  Inputs are dicts, lists or fixture names (str)."""
    kwargs = {"depth": depth, "samples": samples, "seed": seed, "jobs": jobs}
    if budget is not None:
        kwargs["budget"] = budget
    return json.loads(_core.run(verb, [json.dumps(i) for i in inputs], **kwargs))


def enumerate(verb, max_genus, depth=4, budget=None, samples=1000, seed=None, jobs=1):  # noqa: A001
    kwargs = {"depth": depth, "samples": samples, "seed": seed, "jobs": jobs}
    if budget is not None:
        kwargs["budget"] = budget
    return json.loads(_core.enumerate(verb, max_genus, **kwargs))


def error_document(exc):
    """The ``{"error": ...}`` document carried by a ValidationError or InvariantError."""
    return json.loads(str(exc))
