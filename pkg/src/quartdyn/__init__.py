"""Dynamics and parameter space of the quartic rational family
f_t(z) = -(t/4)(z^2-2)^2/(z^2-1).

Modules:
  family     exact-formula map evaluation on the Riemann sphere
  exactmaps  arbitrary-precision rational algebra for Q_n(t) = f_t^n(t)
  escape     escape-time classification and the Green potential
  boettcher  Boettcher coordinates, E_n, Xi_n, kernel gaps
  cycles     cycle detection, centers, Misiurewicz points, census
  topology   Jordan/Sierpinski grid probe
  atlas      deterministic parameter/Julia rendering to PPM
  cli        command-line front end
"""

from .family import INF, eval_derivative, eval_map, eval_semiconjugate, orbit
from .escape import (
    Verdict,
    PotentialValue,
    bailout_radius,
    classify_dynamical,
    classify_parameter,
    green_relative,
)
from .exactmaps import (
    POLE,
    RatPoly,
    RationalFuncExact,
    center_polynomial,
    misiurewicz_polynomial,
    pole_polynomial,
    q_function,
    q_next,
)
from .boettcher import BoettcherValue, e_n, kernel_gap, phi, xi_n
from .cycles import (
    CensusRow,
    CycleInfo,
    MisiurewiczPoint,
    census,
    find_attracting_cycle,
    find_centers,
    find_misiurewicz,
)
from .grid import GridSpec
from .topology import LabelGrid, ProbeReport, label_escape_grid, sierpinski_probe
from .atlas import ImageBuffer, encode_ppm, decode_ppm, render_julia, render_parameter

__version__ = "0.1.0"

__all__ = [
    "INF",
    "POLE",
    "BoettcherValue",
    "CensusRow",
    "CycleInfo",
    "GridSpec",
    "ImageBuffer",
    "LabelGrid",
    "MisiurewiczPoint",
    "PotentialValue",
    "ProbeReport",
    "RatPoly",
    "RationalFuncExact",
    "Verdict",
    "bailout_radius",
    "census",
    "center_polynomial",
    "classify_dynamical",
    "classify_parameter",
    "decode_ppm",
    "e_n",
    "encode_ppm",
    "eval_derivative",
    "eval_map",
    "eval_semiconjugate",
    "find_attracting_cycle",
    "find_centers",
    "find_misiurewicz",
    "green_relative",
    "kernel_gap",
    "label_escape_grid",
    "misiurewicz_polynomial",
    "orbit",
    "phi",
    "pole_polynomial",
    "q_function",
    "q_next",
    "render_julia",
    "render_parameter",
    "sierpinski_probe",
    "xi_n",
]
