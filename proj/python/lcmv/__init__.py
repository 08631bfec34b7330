"""Local cohomology of coordinate and linear subspace arrangements.

Every command takes an input document (a dict in the same schema as the
command-line tool) and returns ``(report, exit_code)`` with the report as a dict.
"""

import json

from . import _core
from ._core import LcmvError, local_cohomology_dims, oracle_support

__all__ = [
    "LcmvError",
    "analyze",
    "cci",
    "compare",
    "demo_remark2",
    "eisenstein",
    "local_cohomology_dims",
    "oracle",
    "oracle_support",
    "render_text",
]


def _run(fn, doc, *args, **kwargs):
    text, code = fn(json.dumps(doc), *args, **kwargs)
    return json.loads(text), code


def analyze(doc):
    return _run(_core.analyze, doc)


def compare(doc, box=(-2, 1), corrupt_signs=False):
    return _run(_core.compare, doc, box[0], box[1], corrupt_signs)


def oracle(doc, degree=None, box=(-2, 1)):
    return _run(_core.oracle, doc, degree, box[0], box[1])


def eisenstein(doc):
    return _run(_core.eisenstein, doc)


def cci(doc):
    return _run(_core.cci, doc)


def demo_remark2(n_vars=4, p=2, extra_components=()):
    text, code = _core.demo_remark2(n_vars, p, [list(c) for c in extra_components])
    return json.loads(text), code


def render_text(report):
    return _core.render_text(json.dumps(report))
