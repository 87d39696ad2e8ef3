"""Event words for 2-moderate doodles and blobs.

Diagrams, reports, families and traces are plain dicts in the JSON layout
used by the command-line tool.
"""

import json

from . import _core
from ._core import ModblobError

__all__ = [
    "ModblobError",
    "compose",
    "equivalent",
    "family_class",
    "fill",
    "fixture",
    "fixture_names",
    "fixture_selftest",
    "from_curves",
    "from_family",
    "invariants",
    "kappa_family",
    "kidney",
    "lens_family",
    "negate",
    "normalize",
    "render_svg",
    "scramble",
    "validate",
    "word_string",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def word_string(diagram):
    return _core.word_string(_dump(diagram))


def validate(diagram):
    return json.loads(_core.validate(_dump(diagram)))


def fill(diagram):
    return json.loads(_core.fill(_dump(diagram)))


def invariants(diagram, doodle=False):
    return json.loads(_core.invariants(_dump(diagram), doodle))


def kidney(n):
    return json.loads(_core.kidney(n))


def compose(a, b, star=False):
    return json.loads(_core.compose(_dump(a), _dump(b), star))


def negate(diagram):
    return json.loads(_core.negate(_dump(diagram)))


def scramble(diagram, seed, steps):
    return json.loads(_core.scramble(_dump(diagram), seed, steps))


def normalize(diagram):
    canonical, trace = _core.normalize(_dump(diagram))
    return json.loads(canonical), json.loads(trace)


def equivalent(a, b, depth=6, prefilter=True):
    return json.loads(_core.equivalent(_dump(a), _dump(b), depth, prefilter))


def kappa_family():
    return json.loads(_core.kappa_family())


def lens_family():
    return json.loads(_core.lens_family())


def from_family(family, tol=0.0):
    return json.loads(_core.from_family(_dump(family), tol))


def family_class(family):
    return _core.family_class(_dump(family))


def from_curves(curves):
    return json.loads(_core.from_curves(_dump(curves)))


def fixture_names():
    return list(_core.fixture_names())


def fixture(name):
    return json.loads(_core.fixture(name))


def fixture_selftest():
    return dict(_core.fixture_selftest())


def render_svg(diagram):
    return _core.render_svg(_dump(diagram))
