"""Resolution-bounded grid probe for the shape of the basin boundary.

A pixel grid cannot certify topology, but it can gather evidence: label the
escaping pixels, identify the far-field component (the immediate basin of
infinity), and look at the complementary component D around the pole z = 1.
If D contains both z = 0 and the mirror pole z = -1 it is symmetric the way
a Jordan-boundary basin forces; if it contains neither, the basin boundary
has separated the two poles and cannot be a Jordan curve.  Everything else,
and every marginal pixel configuration, is Inconclusive: a wrong topological
claim is worse than no claim.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import escape
from .grid import GridSpec, classify_julia_grid, label_components

PROBE_MAX_ITER = 2000
PROBE_HALFWIDTH = 3.2

VERDICT_CANTOR = "CantorLocus"
VERDICT_JORDAN = "JordanEvidence"
VERDICT_NONJORDAN = "NonJordanEvidence"
VERDICT_INCONCLUSIVE = "Inconclusive"


@dataclass
class LabelGrid:
    """Connected components of the escaping pixel set (0 = non-escaping)."""

    spec: GridSpec
    labels: np.ndarray  # int32 (ny, nx)
    component_of_farfield: int
    corners_agree: bool

    def component_of(self, z: complex) -> int:
        pix = self.spec.pixel_of(z)
        if pix is None:
            return -1
        return int(self.labels[pix])


@dataclass(frozen=True)
class ProbeReport:
    verdict: str
    resolution: int
    pole_component_contains_zero: bool
    pole_component_contains_minus_pole: bool

    def serialize(self) -> str:
        return (
            f"{self.verdict} {self.resolution} "
            f"{str(self.pole_component_contains_zero).lower()} "
            f"{str(self.pole_component_contains_minus_pole).lower()}"
        )


def default_probe_spec(resolution: int) -> GridSpec:
    return GridSpec.square(0j, PROBE_HALFWIDTH, resolution)


def label_escape_grid(
    t: complex,
    spec: GridSpec,
    max_iter: int = PROBE_MAX_ITER,
    bailout_constant: float = escape.DEFAULT_BAILOUT_CONSTANT,
) -> LabelGrid:
    """Label the 4-connected components of the set of pixels whose orbit is
    certified escaping within max_iter."""
    if spec.width / 2 < 3.0 or spec.height / 2 < 3.0:
        raise ValueError("probe grid must enclose the disc |z| <= 3")
    res = classify_julia_grid(t, spec, max_iter=max_iter, bailout_constant=bailout_constant)
    mask = res.level >= 0
    labels, _count = label_components(mask)
    corners = [
        int(labels[0, 0]),
        int(labels[0, -1]),
        int(labels[-1, 0]),
        int(labels[-1, -1]),
    ]
    nonzero = [c for c in corners if c != 0]
    agree = len(set(corners)) == 1 and bool(nonzero)
    far = max(set(nonzero), key=nonzero.count) if nonzero else 0
    return LabelGrid(spec, labels, far, agree)


# Separator budgets tried by the probe, smallest first.  Rung L declares
# pixels of escape level > L "not escaped within budget L"; those pixels
# stand in for the Julia set as separators.  A hyperbolic Julia set empties
# every pixel within a few hundred iterations, so the full budget alone
# never separates anything; the ladder scans honest sub-budgets and the
# verdict is the consensus of the rungs that produce a clean configuration.
_SEPARATOR_LADDER = (3, 4, 5, 6, 8, 10, 12, 16, 24, 32, 48, 64, 128, 256, 512, 1024)


def sierpinski_probe(
    t: complex,
    spec: Optional[GridSpec] = None,
    max_iter: int = PROBE_MAX_ITER,
    resolution: int = 2048,
    classify_max_iter: int = escape.CLASSIFY_MAX_ITER,
    bailout_constant: float = escape.DEFAULT_BAILOUT_CONSTANT,
) -> ProbeReport:
    """Evidence for the Jordan / non-Jordan alternative of the basin boundary
    at an escape parameter of level >= 1."""
    if spec is None:
        spec = default_probe_spec(resolution)
    resolution = spec.nx
    verdict = escape.classify_parameter(
        t, max_iter=classify_max_iter, bailout_constant=bailout_constant
    )
    if verdict.kind != escape.KIND_ESCAPE:
        return ProbeReport(VERDICT_INCONCLUSIVE, resolution, False, False)
    if verdict.level == 0:
        return ProbeReport(VERDICT_CANTOR, resolution, False, False)

    res = classify_julia_grid(t, spec, max_iter=max_iter, bailout_constant=bailout_constant)
    level = res.level

    pix_pole = spec.pixel_of(1.0 + 0j)
    pix_zero = spec.pixel_of(0j)
    pix_mpole = spec.pixel_of(-1.0 + 0j)
    if pix_pole is None or pix_zero is None or pix_mpole is None:
        return ProbeReport(VERDICT_INCONCLUSIVE, resolution, False, False)

    clean: list[ProbeReport] = []
    for budget in [b for b in _SEPARATOR_LADDER if b < max_iter] + [max_iter]:
        rung = _probe_rung(level, spec, budget, pix_pole, pix_zero, pix_mpole, resolution)
        if rung is not None and rung.verdict != VERDICT_INCONCLUSIVE:
            clean.append(rung)
    if not clean:
        return ProbeReport(VERDICT_INCONCLUSIVE, resolution, False, False)
    verdicts = {r.verdict for r in clean}
    if len(verdicts) > 1:
        return ProbeReport(VERDICT_INCONCLUSIVE, resolution, False, False)
    return clean[0]


def _probe_rung(
    level: np.ndarray,
    spec: GridSpec,
    budget: int,
    pix_pole,
    pix_zero,
    pix_mpole,
    resolution: int,
) -> Optional[ProbeReport]:
    """One separator budget: farfield = fast pixels' corner component,
    D = complement component at the pole, decision per the symmetric rule."""
    fast = (level >= 0) & (level <= budget)
    labels, _n = label_components(fast)
    corners = {
        int(labels[0, 0]),
        int(labels[0, -1]),
        int(labels[-1, 0]),
        int(labels[-1, -1]),
    }
    if len(corners) != 1 or 0 in corners:
        return None
    far = corners.pop()

    complement = labels != far
    if not complement[pix_pole]:
        return None  # the pole pixel escaped into the far field: nothing to probe
    comp_labels, _nc = label_components(complement)
    d_hat = int(comp_labels[pix_pole])

    contains_zero = bool(comp_labels[pix_zero] == d_hat)
    contains_mpole = bool(comp_labels[pix_mpole] == d_hat)

    if _near_farfield(labels, far, pix_zero, radius=2):
        return ProbeReport(VERDICT_INCONCLUSIVE, resolution, contains_zero, contains_mpole)
    if int((comp_labels == d_hat).sum()) < 4:
        return ProbeReport(VERDICT_INCONCLUSIVE, resolution, contains_zero, contains_mpole)

    if contains_zero and contains_mpole:
        name = VERDICT_JORDAN
    elif not contains_zero and not contains_mpole:
        name = VERDICT_NONJORDAN
    else:
        name = VERDICT_INCONCLUSIVE
    return ProbeReport(name, resolution, contains_zero, contains_mpole)


def _near_farfield(labels: np.ndarray, far: int, pix, radius: int = 2) -> bool:
    j0, i0 = pix
    ny, nx = labels.shape
    j1, j2 = max(0, j0 - radius), min(ny, j0 + radius + 1)
    i1, i2 = max(0, i0 - radius), min(nx, i0 + radius + 1)
    return bool((labels[j1:j2, i1:i2] == far).any())
