"""Attracting-cycle detection and refinement, center and Misiurewicz solving,
and the hyperbolic/escape component census of the parameter plane.

Component counting at a finite resolution cannot see the true strata of the
escape locus (first-hit escape levels form equipotential bands), so the
census anchors its counts at the algebraic markers the exact module
provides: each escape-level-n component contains exactly one pole of Q_n,
and each hyperbolic component of period n > 1 exactly one center.  Counts
are reported at the census resolution, never asserted as exact topology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import escape, exactmaps, family
from .errors import RootFindingStalled
from .family import INF
from .grid import GridSpec, classify_parameter_grid, label_components

REPEAT_TOL = 1e-8
REFINE_TOL = 1e-13
MIN_PERIOD_TOL = 1e-8
DETECT_WINDOW = 64


@dataclass(frozen=True)
class CycleInfo:
    """A finite periodic cycle: minimal period, one cycle point, multiplier."""

    period: int
    representative: complex
    multiplier: complex
    refined: bool

    def points(self, t: complex) -> List[complex]:
        pts = [self.representative]
        z = self.representative
        for _ in range(self.period - 1):
            z = family.eval_map(t, z)
            if z is INF:
                break
            pts.append(z)
        return pts

    def is_attracting(self) -> bool:
        return abs(self.multiplier) < 1.0


def _orbit_step_safe(t: complex, z: complex) -> Optional[complex]:
    w = family.eval_map(t, z)
    return None if w is INF else w


def cycle_multiplier(t: complex, z: complex, period: int) -> Optional[complex]:
    """Product of f_t' along the length-`period` orbit of z; None on pole hits."""
    lam = 1.0 + 0j
    w = z
    for _ in range(period):
        try:
            lam *= family.eval_derivative(t, w)
        except Exception:
            return None
        w = _orbit_step_safe(t, w)
        if w is None:
            return None
    return lam


def _fp_residual(t: complex, z: complex, period: int) -> Optional[complex]:
    w = z
    for _ in range(period):
        w = _orbit_step_safe(t, w)
        if w is None:
            return None
    return w - z


def refine_cycle(t: complex, z0: complex, period: int, max_steps: int = 60) -> Tuple[complex, bool]:
    """Damped Newton on F(z) = f_t^p(z) - z; returns (point, refined?)."""
    z = z0
    res = _fp_residual(t, z, period)
    if res is None:
        return z0, False
    best = abs(res)
    for _ in range(max_steps):
        if best <= REFINE_TOL * (1.0 + abs(z)):
            return z, True
        lam = cycle_multiplier(t, z, period)
        if lam is None or lam == 1.0:
            return z, False
        step = res / (lam - 1.0)
        damping = 1.0
        improved = False
        for _ in range(8):
            cand = z - damping * step
            r2 = _fp_residual(t, cand, period)
            if r2 is not None and abs(r2) < best:
                z, res, best = cand, r2, abs(r2)
                improved = True
                break
            damping *= 0.5
        if not improved:
            break
    ok = best <= 1e-10 * (1.0 + abs(z))
    return z, ok


def _minimal_period(t: complex, z: complex, period: int) -> int:
    for d in range(1, period):
        if period % d:
            continue
        res = _fp_residual(t, z, d)
        if res is not None and abs(res) <= MIN_PERIOD_TOL * (1.0 + abs(z)):
            return d
    return period


def _converged_cycle(t: complex, z_near: complex, period_hint: int) -> Optional[CycleInfo]:
    """Refine a near-cycle point into a CycleInfo (any multiplier)."""
    z, refined = refine_cycle(t, z_near, period_hint)
    period = _minimal_period(t, z, period_hint)
    if period != period_hint:
        z2, refined2 = refine_cycle(t, z, period)
        if refined2:
            z, refined = z2, refined2
    lam = cycle_multiplier(t, z, period)
    if lam is None:
        return None
    return CycleInfo(period, z, lam, refined)


def find_attracting_cycle(
    t: complex,
    max_iter: int = escape.CLASSIFY_MAX_ITER,
    bailout_constant: float = escape.DEFAULT_BAILOUT_CONSTANT,
) -> Optional[CycleInfo]:
    """Follow the critical orbit of t; detect near-repetition with window
    p <= 64 and polish.  None when the orbit escapes or nothing attracting
    is found within budget."""
    t = family.check_parameter(t)
    r = escape.level_radius(t, bailout_constant)
    z: complex = t
    history: List[complex] = [z]
    scan_every = 32
    for k in range(1, max_iter + 1):
        w = family.eval_map(t, z)
        if w is INF:
            return None
        z = w
        if abs(z) >= r:
            return None  # certified escape: every critical point runs to infinity
        history.append(z)
        if len(history) > DETECT_WINDOW + 1:
            history.pop(0)
        if k % scan_every == 0 or k == max_iter:
            cand = _scan_window(history)
            if cand is not None:
                info = _converged_cycle(t, history[-1], cand)
                if info is not None and info.is_attracting():
                    return info
    return None


def landed_cycle_kind(
    t: complex, w: complex, period_hint: int
) -> Tuple[str, Optional[CycleInfo]]:
    """Classify the cycle an orbit has (numerically) landed on.

    Returns ("repelling"|"attracting"|"indifferent", CycleInfo or None).
    Indifferent covers refinement failures and |multiplier| within 1e-6 of 1,
    where no trustworthy verdict exists.
    """
    info = _converged_cycle(t, w, period_hint)
    if info is None or not info.refined:
        return "indifferent", None
    m = abs(info.multiplier)
    if m > 1.0 + 1e-6:
        return "repelling", info
    if m < 1.0:
        return "attracting", info
    return "indifferent", info


def _scan_window(history: Sequence[complex]) -> Optional[int]:
    z = history[-1]
    scale = REPEAT_TOL * (1.0 + abs(z))
    top = len(history) - 1
    for p in range(1, top + 1):
        if abs(z - history[top - p]) < scale:
            return p
    return None


# ---------------------------------------------------------------------------
# Simultaneous root finding (Aberth-Ehrlich), used on the exact module's
# squarefree root-target polynomials.
# ---------------------------------------------------------------------------


def aberth_roots(
    coeffs: Sequence[complex],
    max_iter: int = 500,
    tol: float = 1e-12,
) -> np.ndarray:
    """All roots of a polynomial given low-to-high coefficients."""
    cs = np.asarray(coeffs, np.complex128)
    while cs.size and cs[-1] == 0:
        cs = cs[:-1]
    if cs.size <= 1:
        return np.empty(0, np.complex128)
    zero_roots = 0
    while cs[0] == 0:
        zero_roots += 1
        cs = cs[1:]
    n = cs.size - 1
    roots = np.empty(0, np.complex128)
    if n >= 1:
        monic = cs / cs[-1]
        # Fujiwara's root bound: scale-robust, unlike 1 + max|coeff ratio|,
        # which overflows x^deg for the big-trailing-coefficient pole
        # polynomials this package produces.
        with np.errstate(all="ignore"):
            radius = 2.0 * max(
                float(abs(monic[n - 1 - k]) ** (1.0 / (k + 1))) for k in range(n)
            )
        if not np.isfinite(radius) or radius == 0.0:
            radius = 1.0
        angles = 2.0 * np.pi * np.arange(n) / n + 0.4
        x = radius * np.exp(1j * angles)
        deriv = monic[1:] * np.arange(1, n + 1)
        abs_rev = np.abs(monic)[::-1]
        eps = np.finfo(np.float64).eps
        done = np.zeros(n, bool)
        converged = False
        for _ in range(max_iter):
            with np.errstate(all="ignore"):
                p = np.polyval(monic[::-1], x)
                dp = np.polyval(deriv[::-1], x)
                w = p / np.where(dp == 0, 1e-300, dp)
                diff = x[:, None] - x[None, :]
                np.fill_diagonal(diff, 1.0)
                s = (1.0 / diff).sum(axis=1) - 1.0  # drop the diagonal 1/1 term
                corr = w / (1.0 - w * s)
            blown = ~np.isfinite(p)
            if blown.any():
                # evaluation overflowed: pull those guesses inward and retry
                x[blown] *= 0.5
                continue
            bad = ~np.isfinite(corr)
            corr[bad] = w[bad]
            # a residual below the evaluation-noise bound cannot be improved
            noise = 8.0 * eps * np.polyval(abs_rev, np.abs(x))
            done |= np.abs(p) <= noise
            done |= np.abs(corr) <= tol * (1.0 + np.abs(x))
            corr[done] = 0.0
            x = x - corr
            if done.all():
                converged = True
                break
        if not converged:
            raise RootFindingStalled(f"Aberth stalled with {int((~done).sum())} roots open")
        x = _newton_polish(monic, deriv, x)
        roots = x
    if zero_roots:
        roots = np.concatenate([np.zeros(zero_roots, np.complex128), roots])
    return roots


def _newton_polish(monic: np.ndarray, deriv: np.ndarray, x: np.ndarray, steps: int = 4) -> np.ndarray:
    for _ in range(steps):
        p = np.polyval(monic[::-1], x)
        dp = np.polyval(deriv[::-1], x)
        with np.errstate(all="ignore"):
            dx = p / np.where(dp == 0, 1e-300, dp)
        dx[~np.isfinite(dx)] = 0.0
        x = x - dx
    return x


def _poly_roots(p: exactmaps.RatPoly) -> np.ndarray:
    return aberth_roots(p.float_coeffs())


# ---------------------------------------------------------------------------
# Centers and Misiurewicz parameters
# ---------------------------------------------------------------------------


def _orbit_points(t: complex, n: int) -> Optional[List[complex]]:
    pts = [t]
    z = t
    for _ in range(n):
        z = family.eval_map(t, z)
        if z is INF:
            return None
        pts.append(z)
    return pts


def find_centers_detailed(n: int) -> Tuple[List[complex], List[complex]]:
    """(accepted, rejected) roots of the period-n center polynomial; accepted
    roots generate a superattracting cycle of exact period n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    poly = exactmaps.center_polynomial(n)
    roots = _poly_roots(poly)
    accepted: List[complex] = []
    rejected: List[complex] = []
    for c in roots:
        c = complex(c)
        if abs(c) < 1e-9:
            rejected.append(c)
            continue
        orb = _orbit_points(c, n)
        if orb is None:
            rejected.append(c)
            continue
        tol = 1e-8 * (1.0 + abs(c))
        if abs(orb[n] - c) > tol:
            rejected.append(c)
            continue
        if any(abs(orb[d] - c) <= tol for d in range(1, n) if n % d == 0):
            rejected.append(c)
            continue
        lam = cycle_multiplier(c, c, n)
        if lam is None or abs(lam) > 1e-8:
            rejected.append(c)
            continue
        accepted.append(c)
    return accepted, rejected


def find_centers(n: int) -> List[complex]:
    return find_centers_detailed(n)[0]


@dataclass(frozen=True)
class MisiurewiczPoint:
    parameter: complex
    preperiod: int  # the critical orbit lands after this many steps
    cycle: CycleInfo  # the (repelling) cycle it lands on


def find_misiurewicz(j: int, k: int) -> List[MisiurewiczPoint]:
    """Parameters whose critical orbit satisfies Q_j = Q_k and lands on a
    repelling cycle (no attracting cycle exists)."""
    if not 0 <= j < k:
        raise ValueError("need 0 <= j < k")
    poly = exactmaps.misiurewicz_polynomial(j, k)
    roots = _poly_roots(poly)
    out: List[MisiurewiczPoint] = []
    for c in roots:
        c = complex(c)
        if abs(c) < 1e-9:
            continue  # t = 0 is outside the parameter plane
        orb = _orbit_points(c, k)
        if orb is None:
            continue
        if abs(orb[j] - orb[k]) > 1e-6 * (1.0 + abs(orb[j])):
            continue
        if find_attracting_cycle(c, max_iter=4000) is not None:
            continue
        info = _converged_cycle(c, orb[j], k - j)
        if info is None or not info.refined:
            continue
        if abs(info.multiplier) <= 1.0:
            continue
        out.append(MisiurewiczPoint(c, j, info))
    return out


# ---------------------------------------------------------------------------
# Census of parameter-plane components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CensusRow:
    kind: str  # "escape" or "hyperbolic"
    period: int  # escape level for escape rows, cycle period for hyperbolic rows
    components_found: int  # anchored count (see module docstring)
    bound: int
    raw_components: int  # plain 4-connected components of the pixel class


def escape_component_bound(n: int) -> int:
    """Number of escape-level-n components: 2(4^n - 1)/3 for n >= 1, one
    (connected) component for the level-0 locus."""
    if n == 0:
        return 1
    return 2 * (4**n - 1) // 3


def hyperbolic_component_bound(n: int) -> int:
    """Component bound for period n: single component for n = 1, else
    2(4^(n-1) - 1)/3 (one center per component)."""
    if n == 1:
        return 1
    return 2 * (4 ** (n - 1) - 1) // 3


def _anchor_label(labels: np.ndarray, mask: np.ndarray, spec: GridSpec, z: complex) -> int:
    """Label of the component containing z, searching a 5x5 pixel window for a
    same-class pixel to absorb straddling anchors; 0 when none found."""
    pix = spec.pixel_of(z)
    if pix is None:
        return 0
    j0, i0 = pix
    best = 0
    best_d = None
    for dj in range(-2, 3):
        for di in range(-2, 3):
            j, i = j0 + dj, i0 + di
            if 0 <= j < labels.shape[0] and 0 <= i < labels.shape[1] and mask[j, i]:
                d = dj * dj + di * di
                if best_d is None or d < best_d:
                    best_d = d
                    best = int(labels[j, i])
    return best


def census(
    spec: GridSpec,
    period_max: int,
    level_max: int,
    max_iter: int = 800,
    bailout_constant: float = escape.DEFAULT_BAILOUT_CONSTANT,
) -> List[CensusRow]:
    result = classify_parameter_grid(
        spec, max_iter=max_iter, period_max=period_max, bailout_constant=bailout_constant
    )
    return census_from_grid(result, period_max, level_max)


def census_from_grid(result, period_max: int, level_max: int) -> List[CensusRow]:
    spec = result.spec
    rows: List[CensusRow] = []

    for n in range(0, level_max + 1):
        mask = result.level == n
        labels, raw = label_components(mask)
        if n == 0:
            # The level-0 locus is unbounded; pixel components touching the
            # viewport edge are identified with the single unbounded one.
            edge = set()
            edge.update(labels[0, :].tolist())
            edge.update(labels[-1, :].tolist())
            edge.update(labels[:, 0].tolist())
            edge.update(labels[:, -1].tolist())
            edge.discard(0)
            interior = raw - len(edge)
            found = (1 if edge else 0) + interior
        else:
            anchors = _poly_roots(exactmaps.pole_polynomial(n))
            hit = set()
            for a in anchors:
                lab = _anchor_label(labels, mask, spec, complex(a))
                if lab:
                    hit.add(lab)
            found = len(hit)
        rows.append(CensusRow("escape", n, found, escape_component_bound(n), raw))

    for p in range(1, period_max + 1):
        mask = result.period == p
        labels, raw = label_components(mask)
        if p == 1:
            found = 1 if _origin_component(labels, mask, spec) else 0
        else:
            hit = set()
            for c in find_centers(p):
                lab = _anchor_label(labels, mask, spec, c)
                if lab:
                    hit.add(lab)
            found = len(hit)
        rows.append(CensusRow("hyperbolic", p, found, hyperbolic_component_bound(p), raw))
    return rows


def _origin_component(labels: np.ndarray, mask: np.ndarray, spec: GridSpec) -> int:
    """Label of the period-1 component around the origin (anchor of the
    single period-1 component), 0 if no period-1 pixel sits near 0."""
    for radius_px in (1, 2, 4, 8, 16):
        z = spec.pixel_size() * radius_px
        for cand in (z, -z, 1j * z, -1j * z, complex(z, z), complex(-z, -z)):
            lab = _anchor_label(labels, mask, spec, cand)
            if lab:
                return lab
    return 0
