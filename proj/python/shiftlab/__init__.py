"""Sofic shifts, sliding-block codes and openness deciders.

Thin wrappers over the compiled ``_core`` module. Shifts, graphs and codes
are passed as dicts (or JSON strings) in the same format the CLI reads;
decisions come back as dicts.
"""

import json

from . import _core
from ._core import ShiftlabError

__all__ = [
    "ShiftlabError",
    "analyze",
    "check_open",
    "check_retract",
    "check_semi_open",
    "degree",
    "entropy",
    "fischer_cover",
    "load",
    "magic_word",
    "same_shift",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def load(path):
    """Read a JSON fixture (shift, graph or code) into a dict."""
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def entropy(shift):
    return _core.entropy(_text(shift))


def fischer_cover(shift):
    return json.loads(_core.fischer_cover(_text(shift)))


def magic_word(graph):
    return _core.magic_word(_text(graph))


def same_shift(a, b):
    return _core.same_shift(_text(a), _text(b))


def degree(code):
    return json.loads(_core.degree(_text(code)))


def check_semi_open(code, l_max=4, k_max=12):
    return json.loads(_core.check_semi_open(_text(code), l_max, k_max))


def check_open(code, l_max=4, k_max=12):
    return json.loads(_core.check_open(_text(code), l_max, k_max))


def check_retract(code, n, side="right"):
    return json.loads(_core.check_retract(_text(code), n, side))


def analyze(code):
    return json.loads(_core.analyze(_text(code)))
