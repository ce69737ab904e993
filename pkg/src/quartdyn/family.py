"""Exact-formula evaluation of the quartic family f_t(z) = -(t/4)(z^2-2)^2/(z^2-1).

Points live on the Riemann sphere: a value is either a finite ``complex`` or
the module-level singleton ``INF``.  The family has simple poles at z = +-1
and a superattracting fixed point at infinity; both map to ``INF`` rather
than raising.  The free critical orbit is +-sqrt(2) -> 0 -> t -> ...
"""

from __future__ import annotations

import cmath
from typing import List, Union

from .errors import MapDomainError

# A finite intermediate larger than this is promoted to INF; Green-function
# code switches to log space long before moduli get here.
OVERFLOW_GUARD = 1e150

# |z^2 - 1| below this counts as a pole hit.
POLE_EPS = 1e-300


class _Infinity:
    """The single unsigned point at infinity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("quartdyn-infinity")


INF = _Infinity()

ExtendedComplex = Union[complex, _Infinity]


def is_infinite(z: ExtendedComplex) -> bool:
    return z is INF


def check_parameter(t: complex) -> complex:
    """Validate that t lies in the punctured plane C* and return it as complex."""
    t = complex(t)
    if t == 0:
        raise MapDomainError("parameter t must be nonzero")
    if not (cmath.isfinite(t)):
        raise MapDomainError("parameter t must be finite")
    return t


def eval_map(t: complex, z: ExtendedComplex) -> ExtendedComplex:
    """One application of f_t.  Poles and overflow promote to INF."""
    t = check_parameter(t)
    if z is INF:
        return INF
    z = complex(z)
    if abs(z) >= OVERFLOW_GUARD:
        return INF
    u = z * z
    den = u - 1.0
    if abs(den) < POLE_EPS:
        return INF
    num = u - 2.0
    w = (-0.25 * t) * (num * num / den)
    if not cmath.isfinite(w) or abs(w) > OVERFLOW_GUARD:
        return INF
    return w


def eval_derivative(t: complex, z: complex) -> complex:
    """f_t'(z) from the closed form g'(z) = 2z^3(z^2-2)/(z^2-1)^2, f_t' = -(t/4)g'.

    Vanishes exactly at the critical points 0 and +-sqrt(2).  Pole inputs are
    a domain error, unlike eval_map.
    """
    t = check_parameter(t)
    z = complex(z)
    u = z * z
    den = u - 1.0
    if abs(den) < 1e-150:
        raise MapDomainError(f"derivative undefined at pole z={z!r}")
    g_prime = 2.0 * z * u * (u - 2.0) / (den * den)
    return (-0.25 * t) * g_prime


def eval_semiconjugate(t: complex, w: ExtendedComplex) -> ExtendedComplex:
    """The semi-conjugate map (t^2/16)(w-2)^4/(w-1)^2 acting on w = z^2."""
    t = check_parameter(t)
    if w is INF:
        return INF
    w = complex(w)
    if abs(w) >= OVERFLOW_GUARD:
        return INF
    den = w - 1.0
    if abs(den) < POLE_EPS:
        return INF
    a = w - 2.0
    a2 = a * a
    v = (t * t / 16.0) * (a2 * a2) / (den * den)
    if not cmath.isfinite(v) or abs(v) > OVERFLOW_GUARD:
        return INF
    return v


def orbit(t: complex, z0: ExtendedComplex, k_max: int) -> List[ExtendedComplex]:
    """[z0, f_t(z0), ..., f_t^k_max(z0)]; INF is absorbing."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    t = check_parameter(t)
    seq: List[ExtendedComplex] = [z0 if z0 is INF else complex(z0)]
    z = seq[0]
    for _ in range(k_max):
        z = eval_map(t, z)
        seq.append(z)
    return seq


def critical_value_orbit(t: complex, k_max: int) -> List[ExtendedComplex]:
    """The orbit of the free critical value: Q_0 = t, Q_k = f_t^k(t)."""
    return orbit(t, t, k_max)
