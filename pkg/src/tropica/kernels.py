"""Front door to the subset kernels.

The compiled extension is used when it was built; otherwise the pure-Python
module is. Setting ``TROPICA_PURE=1`` forces the fallback. Both take square
matrices of exact rationals (or -inf) and scale them to integers first.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Sequence

from . import _pykernels
from .scalars import NEG_INF

NEG = _pykernels.NEG
_LIMIT = 1 << 58

_impl = _pykernels
BACKEND = "python"
if os.environ.get("TROPICA_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _impl = _ckernels
        BACKEND = "cython"


def scale_to_ints(values: Sequence) -> tuple[list[int], int]:
    """Map rationals to ints with a common denominator; -inf becomes ``NEG``."""
    den = 1
    for v in values:
        if v != NEG_INF:
            den = math.lcm(den, Fraction(v).denominator)
    out = []
    for v in values:
        if v == NEG_INF:
            out.append(NEG)
        else:
            out.append(int(Fraction(v) * den))
    return out, den


def _prepare(values, n):
    if len(values) != n * n:
        raise ValueError("flat matrix has the wrong length")
    ints, den = scale_to_ints(values)
    impl = _impl
    peak = max((abs(x) for x in ints if x != NEG), default=0)
    if peak * max(n, 1) >= _LIMIT:
        impl = _pykernels  # Python ints do not overflow
    return ints, den, impl


def _back(x, den):
    return NEG_INF if x is None else Fraction(x, den)


def bidet_values(values: Sequence, n: int, impl=None):
    """Bideterminant of an n x n matrix given row-major; returns two values."""
    ints, den, chosen = _prepare(values, n)
    plus, minus = (impl or chosen).bidet(ints, n)
    return _back(plus, den), _back(minus, den)


def perm_mult_values(values: Sequence, n: int, impl=None):
    """Permanent and the number of optimal permutations capped at 2."""
    ints, den, chosen = _prepare(values, n)
    value, mult = (impl or chosen).perm_mult(ints, n)
    return _back(value, den), mult


def implementations():
    """Every available backend, keyed by name (used by tests and benchmarks)."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
