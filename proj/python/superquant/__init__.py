"""Exact natural projectively invariant quantization on supermanifolds.

Specifications are dicts (or JSON strings) in the same format the command
line tool reads; results come back as dicts.
"""

import json

from ._superquant import (
    InputError,
    PreconditionError,
    ResourceError,
    SuperquantError,
    ansatz_degree2,
    criticality,
)
from . import _superquant

__all__ = [
    "InputError",
    "PreconditionError",
    "ResourceError",
    "SuperquantError",
    "ansatz_degree2",
    "apply",
    "check_invariance",
    "criticality",
    "descend",
    "lift",
    "quantize",
    "special_nm_minus1",
]


def _text(spec):
    return spec if isinstance(spec, str) else json.dumps(spec)


def quantize(spec):
    """Quantized operator of the spec's symbol, as {"lambda", "mu", "order", "terms"}."""
    return json.loads(_superquant.quantize_json(_text(spec)))


def apply(spec):
    """The quantized operator applied to the spec's density."""
    return json.loads(_superquant.apply_json(_text(spec)))


def lift(spec):
    """Divergence-free lift of the spec's symbol (index 0 is the Euler field)."""
    return json.loads(_superquant.lift_json(_text(spec)))


def descend(spec):
    return json.loads(_superquant.descend_json(_text(spec)))


def special_nm_minus1(spec, t="0"):
    return json.loads(_superquant.special_json(_text(spec), str(t)))


def check_invariance(spec, t="0"):
    """True when quantizing with the connection perturbed by the spec's alpha changes nothing."""
    return _superquant.invariant(_text(spec), str(t))
