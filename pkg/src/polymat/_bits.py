"""Bitmask helpers and enumeration caps.

Element ``i`` of the ground set ``{1..n}`` is bit ``i-1``.  Subsets are
always enumerated in increasing mask order.
"""

import os
from fractions import Fraction
from math import lcm

import numpy as np

DEFAULT_TABLE_CAP = 1 << 20
DEFAULT_VECTOR_CAP = 10**6
ENV_CAP = "POLYMAT_MAX_SUBSETS"


def table_cap():
    value = os.environ.get(ENV_CAP)
    return int(value) if value else DEFAULT_TABLE_CAP


def vector_cap():
    value = os.environ.get(ENV_CAP)
    return int(value) if value else DEFAULT_VECTOR_CAP


def popcount(mask):
    return mask.bit_count()


def elements(mask):
    """Elements (1-based, ascending) of ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def to_mask(elems):
    mask = 0
    for e in elems:
        mask |= 1 << (e - 1)
    return mask


def fmt_set(mask):
    return "{" + ",".join(str(e) for e in elements(mask)) + "}"


def submasks(mask):
    """All submasks of ``mask`` in increasing order."""
    out = []
    sub = 0
    while True:
        out.append(sub)
        if sub == mask:
            return out
        sub = ((sub | ~mask) + 1) & mask


def spread_masks(positions):
    """Map every mask over ``len(positions)`` bits onto the given bit positions.

    ``out[m]`` has bit ``positions[t]`` set exactly when ``m`` has bit ``t``.
    """
    out = [0] * (1 << len(positions))
    for m in range(1, len(out)):
        low = m & -m
        out[m] = out[m ^ low] | (1 << positions[low.bit_length() - 1])
    return out


def all_masks(n):
    return np.arange(1 << n, dtype=np.int64)


def mask_popcounts(n):
    return np.bitwise_count(all_masks(n)).astype(np.int64)


def exact(value):
    """Normalise a rank value to ``int`` or ``Fraction``; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("boolean is not a rank value")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return exact(Fraction(value))
    raise TypeError(f"rank values must be exact rationals, got {type(value).__name__}")


def scaled(values):
    """Return ``(int64 array, d)`` with ``array / d`` equal to ``values`` exactly."""
    d = 1
    for v in values:
        if isinstance(v, Fraction):
            d = lcm(d, v.denominator)
    if d == 1:
        return np.array(values, dtype=np.int64), 1
    return np.array([int(v * d) for v in values], dtype=np.int64), d


def unscale(array, d):
    if d == 1:
        return tuple(int(v) for v in array.tolist())
    return tuple(exact(Fraction(int(v), d)) for v in array.tolist())


def fmt_rank(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def fmt_vector(vec):
    return "(" + ",".join(str(x) for x in vec) + ")"
