"""Escape-time classification of parameters and dynamical points, and the
relative Green potential on the basin of infinity.

Escape levels are first-hit indices of a certified basin disc:

    level(t) = min{ k >= 0 : |Q_k(t)| >= r(t) },   r(t) = 3 if |t| >= 3 else 10/|t|.

For |t| >= 3 the closed disc |z| >= 3 is invariant and lies in the basin of
infinity, so |t| >= 3 itself certifies level 0.  For smaller |t| the radius
10/|t| guarantees monotone growth to infinity (checked numerically in the
test suite).  Either way a certified point is in the basin, so the reported
level can only overestimate the true stratum of the escape locus: points of
the basin *inside* the certificate disc are not recognised immediately.
Level sets therefore behave like escape-time bands; the census in
``cycles`` anchors component counts at poles/centers to undo this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, List, Optional

from . import family
from .errors import NotInBasin
from .family import INF, ExtendedComplex

if TYPE_CHECKING:  # pragma: no cover
    from .cycles import CycleInfo

DEFAULT_BAILOUT_CONSTANT = 10.0
CLASSIFY_MAX_ITER = 10_000
RENDER_MAX_ITER = 2_000

KIND_ESCAPE = "escape"
KIND_CYCLE = "cycle"
KIND_UNDECIDED = "undecided"


@dataclass(frozen=True)
class Verdict:
    """Classification of a parameter or dynamical point."""

    kind: str  # one of KIND_ESCAPE, KIND_CYCLE, KIND_UNDECIDED
    level: Optional[int]  # first-hit index for escape verdicts
    cycle: Optional["CycleInfo"]
    iterations_used: int
    final_modulus: float  # may be math.inf

    @classmethod
    def escape(cls, level: int, iterations: int, modulus: float) -> "Verdict":
        return cls(KIND_ESCAPE, level, None, iterations, modulus)

    @classmethod
    def attracting(cls, cycle: "CycleInfo", iterations: int, modulus: float) -> "Verdict":
        return cls(KIND_CYCLE, None, cycle, iterations, modulus)

    @classmethod
    def undecided(cls, iterations: int, modulus: float) -> "Verdict":
        return cls(KIND_UNDECIDED, None, None, iterations, modulus)

    def serialize(self, re: float, im: float) -> str:
        """One-line record 're im kind level period mult_abs iters'."""
        level = self.level if self.level is not None else -1
        period = self.cycle.period if self.cycle is not None else -1
        mult = abs(self.cycle.multiplier) if self.cycle is not None else math.nan
        return (
            f"{re:.17g} {im:.17g} {self.kind} {level} {period} "
            f"{mult:.17g} {self.iterations_used}"
        )


@dataclass(frozen=True)
class PotentialValue:
    """Relative Green potential g > 0 on the basin of infinity."""

    g: float
    converged_at: int


def bailout_radius(t: complex, constant: float = DEFAULT_BAILOUT_CONSTANT) -> float:
    """max(3, constant/|t|): beyond this radius orbits grow monotonically to
    infinity for every t.  (Immediate per-step doubling only sets in slightly
    further out; see the growth tests.)"""
    t = family.check_parameter(t)
    return max(3.0, constant / abs(t))


def level_radius(t: complex, constant: float = DEFAULT_BAILOUT_CONSTANT) -> float:
    """Certificate radius used for escape levels: 3 for |t| >= 3 (the closed
    disc |z| >= 3 is then invariant and in the basin), else constant/|t|."""
    at = abs(complex(t))
    if at >= 3.0:
        return 3.0
    return constant / at


def _certified(z: ExtendedComplex, radius: float) -> bool:
    if z is INF:
        return True
    return abs(z) >= radius


# An orbit this close to a short repelling cycle cannot be classified at
# double precision: the forward error is amplified by |multiplier|^k, so an
# eventual escape of the *computed* orbit says nothing about the intended
# parameter.  Misiurewicz inputs (rounded to double) land within roundoff of
# a repelling cycle and must surface as Undecided.
_LANDING_TOL = 1e-9
_LANDING_WINDOW = 8


def classify_parameter(
    t: complex,
    max_iter: int = CLASSIFY_MAX_ITER,
    bailout_constant: float = DEFAULT_BAILOUT_CONSTANT,
) -> Verdict:
    """Escape level of the critical orbit Q_0 = t, Q_{k+1} = f_t(Q_k); falls
    back to attracting-cycle detection, else Undecided.

    An orbit that lands within roundoff of a *repelling* cycle is reported
    Undecided immediately (see _LANDING_TOL above); an orbit that settles
    onto an attracting cycle short-circuits to the cycle verdict.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    t = family.check_parameter(t)
    from .cycles import find_attracting_cycle, landed_cycle_kind  # cycles imports escape

    r = level_radius(t, bailout_constant)
    z: ExtendedComplex = t
    recent: List[complex] = []
    for k in range(max_iter + 1):
        if _certified(z, r):
            mod = math.inf if z is INF else abs(z)
            return Verdict.escape(k, k, mod)
        w: complex = z  # finite here, uncertified
        for p in range(1, min(len(recent), _LANDING_WINDOW) + 1):
            if abs(w - recent[-p]) < _LANDING_TOL * (1.0 + abs(w)):
                kind, cyc = landed_cycle_kind(t, w, p)
                if kind == "repelling":
                    return Verdict.undecided(k, abs(w))
                if kind == "attracting" and cyc is not None:
                    return Verdict.attracting(cyc, k, abs(w))
                break  # indifferent-ish: keep iterating
        recent.append(w)
        if len(recent) > _LANDING_WINDOW:
            recent.pop(0)
        if k < max_iter:
            z = family.eval_map(t, z)

    cyc = find_attracting_cycle(t, max_iter=max_iter, bailout_constant=bailout_constant)
    mod = math.inf if z is INF else abs(z)
    if cyc is not None:
        return Verdict.attracting(cyc, max_iter, mod)
    return Verdict.undecided(max_iter, mod)


def classify_dynamical(
    t: complex,
    z: ExtendedComplex,
    max_iter: int = RENDER_MAX_ITER,
    cycle: Optional["CycleInfo"] = None,
    bailout_constant: float = DEFAULT_BAILOUT_CONSTANT,
    cycle_tol: float = 1e-6,
) -> Verdict:
    """Escape level of the orbit of z, or attraction to a caller-supplied
    finite cycle, else Undecided."""
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    t = family.check_parameter(t)
    r = level_radius(t, bailout_constant)
    pts = cycle.points(t) if cycle is not None else ()
    w: ExtendedComplex = z if z is INF else complex(z)
    for k in range(max_iter + 1):
        if _certified(w, r):
            mod = math.inf if w is INF else abs(w)
            return Verdict.escape(k, k, mod)
        if pts and w is not INF:
            for p in pts:
                if abs(w - p) < cycle_tol:
                    return Verdict.attracting(cycle, k, abs(w))
        if k < max_iter:
            w = family.eval_map(t, w)
    mod = math.inf if w is INF else abs(w)
    return Verdict.undecided(max_iter, mod)


# Beyond this modulus one more map application doubles log|w| to machine
# precision, so the Green limit is frozen.
_GREEN_FREEZE = 1e100


def green_relative(
    t: complex,
    z: ExtendedComplex,
    max_iter: int = CLASSIFY_MAX_ITER,
    bailout_constant: float = DEFAULT_BAILOUT_CONSTANT,
) -> PotentialValue:
    """g_t(z) = lim 2^-k log|(t/4) f_t^k(z)|, computed in log space.

    Raises NotInBasin when the orbit is not certified to escape within budget.
    """
    t = family.check_parameter(t)
    r = level_radius(t, bailout_constant)
    log_t4 = math.log(abs(t) / 4.0)
    w = z
    k = 0
    escaped = False
    prev_log = None
    # a certified orbit reaches the freeze modulus within ~50 doublings, so
    # grant that tail beyond the certification budget
    while k <= max_iter + 64:
        if w is INF:
            if escaped and prev_log is not None and prev_log > 100.0:
                # the overflow guard fired one squaring past the freeze zone;
                # the previous estimate is already the limit
                return PotentialValue((log_t4 + prev_log) / (2.0 ** (k - 1)), k - 1)
            # exact prepole of infinity: the potential is genuinely infinite
            return PotentialValue(math.inf, k)
        aw = abs(w)
        if aw >= r:
            escaped = True
        elif k >= max_iter:
            break
        if escaped and aw > _GREEN_FREEZE:
            g = (log_t4 + math.log(aw)) / (2.0**k)
            return PotentialValue(g, k)
        prev_log = math.log(aw) if aw > 0.0 else None
        w = family.eval_map(t, w)
        k += 1
    raise NotInBasin(f"orbit of {z!r} not certified escaping within {max_iter} steps")


def critical_orbit_sup(t: complex, k_max: int) -> float:
    """sup_k |Q_k(t)| over the first k_max iterates (inf if a pole is hit)."""
    sup = 0.0
    for w in family.critical_value_orbit(t, k_max):
        if w is INF:
            return math.inf
        sup = max(sup, abs(w))
    return sup
