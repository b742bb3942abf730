"""Scalar helpers shared by every module.

Costs are either exact (``fractions.Fraction``) or binary floats.  The
unreachable cost is ``math.inf`` in both modes; it is never replaced by a
large finite number.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Real

INF = math.inf

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)

DEFAULT_TOLERANCE = 1e-9


def is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x) and x > 0


def coerce(x, mode: str):
    """Convert one user-supplied entry to the scalar type of ``mode``.

    Accepts numbers, ``Fraction``, and the strings ``"inf"``, ``"3/2"``,
    ``"0.25"``.  Raises ``ValueError`` on anything else, including NaN.
    """
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "+inf", "infinity", "∞"):
            return INF
        if s in ("-inf", "nan"):
            raise ValueError(f"unsupported cost entry {x!r}")
        x = Fraction(s)
    if isinstance(x, bool) or not isinstance(x, Real):
        raise ValueError(f"unsupported cost entry {x!r}")
    if isinstance(x, float):
        if math.isnan(x):
            raise ValueError("NaN cost entry")
        if math.isinf(x):
            if x < 0:
                raise ValueError("negative infinite cost entry")
            return INF
    if mode == RATIONAL:
        # repr() keeps 0.1 as 1/10 rather than its binary expansion
        return Fraction(repr(x)) if isinstance(x, float) else Fraction(x)
    return float(x)


def close(a, b, mode: str, tol: float) -> bool:
    """Equality test used for betweenness and tightness.

    Exact in rational mode; in float mode ``|a - b| <= tol * max(1, |a|)``.
    Two infinities compare equal, an infinity never equals a finite value.
    """
    if is_inf(a) or is_inf(b):
        return is_inf(a) and is_inf(b)
    if mode == RATIONAL:
        return a == b
    return abs(a - b) <= tol * max(1.0, abs(a))


def exceeds(a, b, mode: str, tol: float) -> bool:
    """``a > b`` beyond the active tolerance (plain ``>`` in rational mode)."""
    if is_inf(b):
        return False
    if is_inf(a):
        return True
    if mode == RATIONAL:
        return a > b
    return a - b > tol * max(1.0, abs(a))


def ratio(num, den):
    """``num / den`` with ``0/0 = 0`` and ``x/0 = INF`` for ``x > 0``."""
    if is_inf(num):
        return INF
    if is_inf(den):
        return 0
    if den == 0:
        return 0 if num == 0 else INF
    return num / den


def half(x):
    return x / 2 if isinstance(x, Fraction) else 0.5 * x


def fmt(x) -> str:
    """Render a scalar for JSON/CSV output: ``p/q`` for rationals, 12 significant
    digits for floats, ``"inf"`` for the unreachable cost."""
    if is_inf(x):
        return "inf"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".12g")


def as_float(x) -> float:
    return INF if is_inf(x) else float(x)
