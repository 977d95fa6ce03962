"""Satisfiability, validity and certification for brdg and related classes."""

import json

from ._brdg import (
    FormatError,
    ParseError,
    SignatureError,
    SizeLimitError,
    TilingError,
    count_algebras,
    formula_size,
    normalize,
    run,
    solve_tiling,
)
from . import _brdg

__all__ = [
    "FormatError",
    "ParseError",
    "SignatureError",
    "SizeLimitError",
    "TilingError",
    "certify",
    "count_algebras",
    "decide_sat",
    "decide_valid",
    "formula_size",
    "normalize",
    "run",
    "solve_tiling",
]


def _props(props):
    if isinstance(props, str):
        return props
    return ",".join(props)


def decide_sat(formula, cls="brdg", props=(), jobs=1, naive=False):
    return json.loads(_brdg.decide_sat_json(formula, cls, _props(props), jobs, naive))


def decide_valid(sentence, cls="brdg", props=(), jobs=1):
    return json.loads(_brdg.decide_valid_json(sentence, cls, _props(props), jobs))


def certify(structure):
    if not isinstance(structure, str):
        structure = json.dumps(structure)
    return json.loads(_brdg.certify_json(structure))
