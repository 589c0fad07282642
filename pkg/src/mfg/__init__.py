"""Exact workbench for one-sided topological Markov shifts, their topological
full groups, and Cuntz-Krieger algebras.

Everything is exact: points are eventually periodic sequences, algebra
elements are sparse sums of S_alpha S_beta^* over a cyclotomic field, and
every claimed identity is checked by equality over finite sweeps.
"""
from .ck import CKElement, PhaseFunction
from .clopen import ClopenSet, LCFunction
from .errors import MFGError
from .full_group import PrefixExchangeTable, apply, compose, invert
from .orbit_equiv import TailMap, golden_mean_example
from .points import EPPoint, sweep
from .scalar import Scalar
from .shift import MarkovShift, full_shift, golden_mean

__all__ = [
    "CKElement",
    "ClopenSet",
    "EPPoint",
    "LCFunction",
    "MFGError",
    "MarkovShift",
    "PhaseFunction",
    "PrefixExchangeTable",
    "Scalar",
    "TailMap",
    "apply",
    "compose",
    "full_shift",
    "golden_mean",
    "golden_mean_example",
    "invert",
    "sweep",
]
