"""Deterministic math helpers shared (by construction) with the web port.

Layout determinism must hold across hosts, so angles and jitter avoid libm:
sin/cos use an explicit Taylor kernel after range reduction, and randomness
comes from a 32-bit avalanche hash. Everything here uses only IEEE-754 double
+,-,*,/ and floor, which behave identically in Python and JavaScript.
"""

from __future__ import annotations

import math

TAU = 6.283185307179586
_HALF_PI = 1.5707963267948966

# Taylor coefficients on [-pi/4, pi/4]; |error| < 1e-13 there.
_S1 = -1.0 / 6.0
_S2 = 1.0 / 120.0
_S3 = -1.0 / 5040.0
_S4 = 1.0 / 362880.0
_S5 = -1.0 / 39916800.0
_S6 = 1.0 / 6227020800.0

_C1 = -1.0 / 2.0
_C2 = 1.0 / 24.0
_C3 = -1.0 / 720.0
_C4 = 1.0 / 40320.0
_C5 = -1.0 / 3628800.0
_C6 = 1.0 / 479001600.0


def _sin_kernel(r: float) -> float:
    z = r * r
    return r * (1.0 + z * (_S1 + z * (_S2 + z * (_S3 + z * (_S4 + z * (_S5 + z * _S6))))))


def _cos_kernel(r: float) -> float:
    z = r * r
    return 1.0 + z * (_C1 + z * (_C2 + z * (_C3 + z * (_C4 + z * (_C5 + z * _C6)))))


def _reduce(x: float) -> tuple[int, float]:
    k = math.floor(x / _HALF_PI + 0.5)
    return int(k) & 3, x - k * _HALF_PI


def det_sin(x: float) -> float:
    quadrant, r = _reduce(x)
    if quadrant == 0:
        return _sin_kernel(r)
    if quadrant == 1:
        return _cos_kernel(r)
    if quadrant == 2:
        return -_sin_kernel(r)
    return -_cos_kernel(r)


def det_cos(x: float) -> float:
    quadrant, r = _reduce(x)
    if quadrant == 0:
        return _cos_kernel(r)
    if quadrant == 1:
        return -_sin_kernel(r)
    if quadrant == 2:
        return -_cos_kernel(r)
    return _sin_kernel(r)


_MASK = 0xFFFFFFFF


def hash32(*values: int) -> int:
    """Order-sensitive 32-bit avalanche hash (murmur3-finalizer style)."""
    h = 0x9E3779B9
    for value in values:
        h = (h + (value & _MASK)) & _MASK
        h ^= h >> 16
        h = (h * 0x85EBCA6B) & _MASK
        h ^= h >> 13
        h = (h * 0xC2B2AE35) & _MASK
        h ^= h >> 16
    return h


def unit_interval(h: int) -> float:
    """Map a 32-bit hash to [0, 1); exact in double precision."""
    return h / 4294967296.0
