"""Self-contained invariant suite behind the ``verify`` CLI subcommand.

Stages are ordered cheapest first so failures surface fast.  Every check is
deterministic (seeded sampling), needs no network or external data, and the
whole battery completes in well under ten minutes on a desktop.
"""

from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction
from typing import Callable, List, Tuple

import numpy as np

from . import atlas, boettcher, cycles, escape, exactmaps, family, topology
from .family import INF
from .grid import GridSpec

Check = Tuple[str, Callable[[], Tuple[bool, str]]]

TM = math.sqrt(4.0 + 2.0 * math.sqrt(2.0))  # the (1,2)-Misiurewicz parameter


def _sample_disc(rng: random.Random, rmin: float, rmax: float) -> complex:
    return cmath.rect(rng.uniform(rmin, rmax), rng.uniform(-math.pi, math.pi))


# ----------------------------------------------------------- exact algebra


def check_exact_degrees() -> Tuple[bool, str]:
    for n in range(5):
        q = exactmaps.q_function(n)
        if q.degree() != exactmaps.expected_degree(n):
            return False, f"deg Q_{n} = {q.degree()}"
        if q.leading_coefficient() != exactmaps.expected_leading(n):
            return False, f"lead Q_{n} = {q.leading_coefficient()}"
        if q.order_at_infinity() != exactmaps.expected_order_at_infinity(n):
            return False, f"order-at-infinity Q_{n} = {q.order_at_infinity()}"
    return True, "n <= 4"


def check_exact_oddness() -> Tuple[bool, str]:
    for n in range(1, 4):
        q = exactmaps.q_function(n)
        if not (q.num.odd_part_only() and q.den.even_part_only()):
            return False, f"Q_{n} parity broken"
    return True, "Q_n(-t) = -Q_n(t) for n <= 3"


def check_pole_squarefree() -> Tuple[bool, str]:
    for n in (1, 2, 3):
        if not exactmaps.is_squarefree(exactmaps.pole_polynomial(n)):
            return False, f"pole polynomial {n} not squarefree"
    return True, "n <= 3"


def check_exact_float_agreement() -> Tuple[bool, str]:
    rng = random.Random(7)
    worst = 0.0
    for _ in range(100):
        t = Fraction(rng.randint(-40, 40), rng.randint(1, 20))
        if t == 0:
            continue
        for n in (1, 2, 3):
            q = exactmaps.q_function(n)
            exact = q.eval_exact(t)
            if exact is exactmaps.POLE:
                continue
            den = q.den.eval(t)
            if abs(den) < Fraction(1, 1000):
                continue
            z = family.critical_value_orbit(complex(float(t), 0.0), n)[n]
            if z is INF:
                continue
            ex = complex(float(exact), 0.0)
            err = abs(z - ex) / (1.0 + abs(ex))
            worst = max(worst, err)
            if err > 1e-9:
                return False, f"t={t} n={n} err={err:.2e}"
    return True, f"worst rel err {worst:.2e}"


# ----------------------------------------------------------------- family


def check_family_pointwise() -> Tuple[bool, str]:
    if abs(family.eval_map(1.0, 0.0) - 1.0) != 0.0:
        return False, "f_1(0) != 1"
    if abs(family.eval_map(2.0, 3.0) - (-49.0 / 16.0)) > 1e-15:
        return False, "f_2(3) != -49/16"
    if family.eval_map(3.0, 1.0) is not INF:
        return False, "pole not mapped to INF"
    if family.eval_semiconjugate(5.0, 2.0) != 0.0:
        return False, "semiconjugate zero broken"
    return True, "spot values"


def check_family_symmetries() -> Tuple[bool, str]:
    rng = random.Random(11)
    for _ in range(500):
        t = _sample_disc(rng, 0.05, 5.0)
        z = _sample_disc(rng, 0.0, 4.0)
        if abs(z * z - 1.0) < 1e-6:
            continue
        a = family.eval_map(t, z)
        b = family.eval_map(t, -z)
        if a is INF or b is INF:
            if a is not b:
                return False, f"evenness broken at t={t}, z={z}"
            continue
        if a != b:
            return False, f"evenness broken at t={t}, z={z}"
        c = family.eval_map(-t, z)
        if abs(c + a) != 0.0:
            return False, f"t-oddness broken at t={t}, z={z}"
    return True, "evenness and t-oddness, 500 samples"


def check_semiconjugacy() -> Tuple[bool, str]:
    rng = random.Random(13)
    worst = 0.0
    for _ in range(2000):
        t = _sample_disc(rng, 0.05, 5.0)
        z = _sample_disc(rng, 0.05, 4.0)
        if abs(z * z - 1.0) < 1e-4:
            continue
        lhs = family.eval_semiconjugate(t, z * z)
        fz = family.eval_map(t, z)
        if lhs is INF or fz is INF:
            continue
        rhs = fz * fz
        err = abs(lhs - rhs) / (1.0 + abs(rhs))
        worst = max(worst, err)
        if err > 1e-12:
            return False, f"t={t} z={z} err={err:.2e}"
    return True, f"worst rel err {worst:.2e}"


def check_derivative_fd() -> Tuple[bool, str]:
    rng = random.Random(17)
    h = 1e-6
    for _ in range(300):
        t = _sample_disc(rng, 0.05, 5.0)
        z = _sample_disc(rng, 0.0, 4.0)
        if abs(z * z - 1.0) < 1e-2:
            continue
        d = family.eval_derivative(t, z)
        fd = (family.eval_map(t, z + h) - family.eval_map(t, z - h)) / (2 * h)
        if abs(d - fd) > 1e-6 * (1.0 + abs(d)):
            return False, f"t={t} z={z}"
    return True, "central differences at h=1e-6"


def check_critical_orbit() -> Tuple[bool, str]:
    rng = random.Random(19)
    for _ in range(1000):
        t = _sample_disc(rng, 0.05, 10.0)
        s2 = math.sqrt(2.0)
        v = family.eval_map(t, s2)
        if abs(v) > 1e-29 * (1.0 + abs(t)):
            return False, f"f_t(sqrt2) = {v}"
        if family.eval_map(t, 0.0) != t:
            return False, f"f_t(0) != t at t={t}"
    return True, "f(+-sqrt2)=0, f(0)=t, 1000 samples"


# ----------------------------------------------------------------- escape


def check_classify_examples() -> Tuple[bool, str]:
    cases = [
        (5.0, escape.KIND_ESCAPE, 0),
        (1.0, escape.KIND_ESCAPE, 1),
        (math.sqrt(2.0), escape.KIND_CYCLE, None),
        (TM, escape.KIND_UNDECIDED, None),
    ]
    for t, kind, level in cases:
        v = escape.classify_parameter(t)
        if v.kind != kind or (level is not None and v.level != level):
            return False, f"t={t}: {v.kind}/{v.level}"
    return True, "four reference parameters"


def check_radius_growth() -> Tuple[bool, str]:
    """Certified points grow monotonically and double after one extra step."""
    for at in np.geomspace(0.05, 50.0, 40):
        t = complex(at, 0.0)
        r = escape.level_radius(t)
        for az in np.geomspace(r, 20 * r, 25):
            step1 = (at / 4.0) * (az * az - 2.0) ** 2 / (az * az + 1.0)
            if step1 <= az * 1.05:
                return False, f"|t|={at:.3g} |z|={az:.3g}: growth {step1/az:.3f}"
            if az >= 2 * r:
                if step1 < 2 * az:
                    return False, f"doubling fails at |t|={at:.3g} |z|={az:.3g}"
    return True, "growth >= 1.05 at radius, doubling from 2r"


def check_escape_symmetry() -> Tuple[bool, str]:
    rng = random.Random(23)
    for _ in range(120):
        t = _sample_disc(rng, 0.1, 4.0)
        a = escape.classify_parameter(t, max_iter=1500)
        b = escape.classify_parameter(-t, max_iter=1500)
        if a.kind != b.kind or a.level != b.level:
            return False, f"t={t}: {a.kind}/{a.level} vs {b.kind}/{b.level}"
    return True, "verdicts at t and -t, 120 samples"


def check_non_escaping_set_bound() -> Tuple[bool, str]:
    # the non-escaping parameter set is contained in |t| <= 2*sqrt(2); note
    # the critical *orbit* of a hyperbolic parameter may leave that disc
    # (t ~ 1.1224 - 0.6359i has an attracting 15-cycle through |z| ~ 3.07)
    rng = random.Random(29)
    bound = 2.0 * math.sqrt(2.0) + 1e-9
    found = 0
    tries = 0
    while found < 120 and tries < 3000:
        tries += 1
        t = _sample_disc(rng, 0.05, 4.0)
        v = escape.classify_parameter(t, max_iter=3000)
        if v.kind == escape.KIND_ESCAPE:
            continue
        found += 1
        if abs(t) > bound:
            return False, f"non-escaping t={t} outside the disc"
    return True, f"{found} non-escaping samples inside |t| <= 2*sqrt(2)"


def check_green() -> Tuple[bool, str]:
    g = escape.green_relative(100.0, 100.0)
    e0 = abs(boettcher.e_n(100.0, 0))
    if abs(g.g - math.log(e0)) > 1e-10:
        return False, f"g={g.g} log|E0|={math.log(e0)}"
    g2 = escape.green_relative(1.0, 1e8)
    if abs(g2.g - math.log(2.5e7)) > 1e-6 * g2.g:
        return False, f"far-field green {g2.g}"
    rng = random.Random(31)
    for _ in range(50):
        t = _sample_disc(rng, 3.5, 6.0)
        z = _sample_disc(rng, 3.5, 8.0)
        ga = escape.green_relative(t, z).g
        gb = escape.green_relative(t, family.eval_map(t, z)).g
        if abs(gb - 2.0 * ga) > 1e-10 * max(1.0, abs(gb)):
            return False, f"doubling law at t={t} z={z}"
    return True, "level-0 identity, asymptotics, doubling law"


# --------------------------------------------------------------- boettcher


def check_boettcher_functional() -> Tuple[bool, str]:
    rng = random.Random(37)
    worst = 0.0
    for t in (2.0, 5.0, 1.0 + 2.0j):
        for _ in range(30):
            z = _sample_disc(rng, 3.5, 7.0)
            p0 = boettcher.phi_value(t, z)
            p1 = boettcher.phi_value(t, family.eval_map(t, z))
            res = abs(p1 + (t / 4.0) * p0 * p0) / abs(p1)
            worst = max(worst, res)
            if res > 1e-8:
                return False, f"t={t} z={z} residual {res:.2e}"
    return True, f"worst residual {worst:.2e}"


def check_boettcher_normalization() -> Tuple[bool, str]:
    v = boettcher.phi_value(2.0, 1e6)
    if abs(v / 1e6 - 1.0) > 1e-5:
        return False, f"phi(1e6)/1e6 = {v/1e6}"
    b = boettcher.phi(2.0, 4.0)
    if b.modulus_log <= math.log(4.0 / 2.0):
        return False, "modulus bound |phi| > 4/|t| broken"
    return True, "phi ~ z and modulus bound"


def check_e0() -> Tuple[bool, str]:
    e0 = boettcher.e_n(100.0, 0)
    if abs(e0 + 2500.0) / 2500.0 > 0.01:
        return False, f"E0(100) = {e0}"
    for t in (5.0, 3.0 + 3.0j, 7.0 - 2.0j):
        a = boettcher.e_n(t, 0)
        b = boettcher.e_n(-t, 0)
        if abs(a - b) > 1e-10 * (1.0 + abs(a)):
            return False, f"E0 symmetry at t={t}"
        if abs(a) <= 1.0:
            return False, f"|E0({t})| = {abs(a)} <= 1"
    return True, "asymptotics, symmetry, |E0| > 1"


def check_xi() -> Tuple[bool, str]:
    for t in (4.0, 5.0j, -6.0):
        for n in (1, 2):
            x = boettcher.xi_n(t, n)
            if abs(x - t) > 23.0:
                return False, f"|xi_{n}({t}) - t| = {abs(x-t):.2f}"
            if abs(x) <= 2.0:
                return False, f"|xi_{n}({t})| = {abs(x):.2f}"
    x5 = boettcher.xi_n(5.0, 1)
    q5 = boettcher._q_n_float(5.0, 1)
    xq = boettcher.xi_n(q5, 1)
    res = abs(xq - (-0.25) * x5**3) / abs(xq)
    if res > 1e-6:
        return False, f"xi functional residual {res:.2e}"
    return True, "distance/modulus bounds and functional equation"


def check_kernel_gap() -> Tuple[bool, str]:
    g1 = boettcher.kernel_gap(5.0, 1)
    g3 = boettcher.kernel_gap(5.0, 3)
    if not g3 < g1:
        return False, f"gap(5,3)={g3} !< gap(5,1)={g1}"
    h = [boettcher.kernel_gap(3.0 + 3.0j, n) for n in (1, 2, 3)]
    if not h[2] < h[0]:
        return False, f"gaps at 3+3i: {h}"
    return True, f"gap(5,*): {g1:.3g} -> {g3:.3g}"


def check_injectivity_probe() -> Tuple[bool, str]:
    rng = random.Random(41)
    samples = []
    while len(samples) < 200:
        t = _sample_disc(rng, 3.3, 8.0)
        samples.append((t, boettcher.e_n(t, 0)))
    collisions = 0
    for i in range(len(samples)):
        for j in range(i + 1, len(samples)):
            t1, e1 = samples[i]
            t2, e2 = samples[j]
            if abs(t1 - t2) < 1e-9 or abs(t1 + t2) < 1e-9:
                continue
            if abs(e1 - e2) < 1e-9:
                collisions += 1
    if collisions:
        return False, f"{collisions} E0 collisions at 1e-9"
    return True, "no E0 collisions among 200 Cantor-locus samples"


# ------------------------------------------------------------------ cycles


def check_multiplier_asymptotics() -> Tuple[bool, str]:
    for t in (0.01, 0.02j, -0.015):
        c = cycles.find_attracting_cycle(t)
        if c is None or c.period != 1:
            return False, f"t={t}: no fixed point found"
        if abs(c.representative - t) > 10.0 * abs(t) ** 3:
            return False, f"t={t}: z_t off by {abs(c.representative - t):.2e}"
        if abs(c.multiplier / t**4 - 1.0) > 0.01:
            return False, f"t={t}: multiplier {c.multiplier}"
    return True, "z_t = t + O(t^3), lambda = t^4 + O(t^6)"


def check_exceptional_multiplier() -> Tuple[bool, str]:
    t = -2.0 * math.sqrt(3.0)
    z = 2.0 / math.sqrt(3.0)
    lam = family.eval_derivative(t, z)
    if abs(lam + 16.0) > 1e-10:
        return False, f"lambda = {lam}"
    if abs(family.eval_map(t, z) - z) > 1e-12:
        return False, "z not fixed"
    if cycles.find_attracting_cycle(t) is not None:
        return False, "reported an attracting cycle at t=-2sqrt3"
    return True, "fixed point with lambda = -16, not attracting"


def check_centers() -> Tuple[bool, str]:
    c2 = sorted(cycles.find_centers(2), key=lambda z: z.real)
    s2 = math.sqrt(2.0)
    if len(c2) != 2 or abs(c2[0] + s2) > 1e-10 or abs(c2[1] - s2) > 1e-10:
        return False, f"centers(2) = {c2}"
    acc, rej = cycles.find_centers_detailed(3)
    if len(acc) != 10:
        return False, f"centers(3): {len(acc)} accepted, {len(rej)} rejected"
    for c in acc:
        orb = family.critical_value_orbit(c, 3)
        if abs(orb[3] - c) > 1e-8:
            return False, f"center {c} does not close up"
    return True, "centers(2) = +-sqrt2; 10 period-3 centers"


def check_misiurewicz() -> Tuple[bool, str]:
    pts = cycles.find_misiurewicz(1, 2)
    params = [m.parameter for m in pts]
    for target in (TM, -TM):
        if not any(abs(p - target) < 1e-10 for p in params):
            return False, f"missing {target}"
    for m in pts:
        if abs(m.cycle.multiplier) <= 1.0:
            return False, f"landing not repelling at {m.parameter}"
        v = escape.classify_parameter(m.parameter)
        if v.kind != escape.KIND_UNDECIDED:
            return False, f"{m.parameter} classifies {v.kind}"
    return True, f"{len(pts)} points incl. +-sqrt(4+2sqrt2)"


def check_multiplier_symmetry() -> Tuple[bool, str]:
    rng = random.Random(43)
    found = 0
    while found < 25:
        t = _sample_disc(rng, 0.1, 1.4)
        a = cycles.find_attracting_cycle(t, max_iter=4000)
        if a is None:
            continue
        b = cycles.find_attracting_cycle(-t, max_iter=4000)
        if b is None or b.period != a.period:
            return False, f"period mismatch at t={t}"
        if abs(a.multiplier - b.multiplier) > 1e-8 * (1.0 + abs(a.multiplier)):
            return False, f"multiplier mismatch at t={t}"
        found += 1
    return True, "25 cycle pairs at t and -t"


# ---------------------------------------------------------------- topology


def check_probe() -> Tuple[bool, str]:
    rep = topology.sierpinski_probe(5.0, resolution=512)
    if rep.verdict != topology.VERDICT_CANTOR:
        return False, f"t=5: {rep.verdict}"
    rep = topology.sierpinski_probe(TM, resolution=512)
    if rep.verdict != topology.VERDICT_INCONCLUSIVE:
        return False, f"t=mis: {rep.verdict}"
    rep = topology.sierpinski_probe(TM - 1e-4, resolution=512)
    if rep.verdict != topology.VERDICT_JORDAN:
        return False, f"t=sierp: {rep.verdict}"
    rep2 = topology.sierpinski_probe(-(TM - 1e-4), resolution=512)
    if rep2.verdict != rep.verdict:
        return False, "probe not symmetric under t -> -t"
    return True, "Cantor / Inconclusive / JordanEvidence at 512"


def check_label_grid() -> Tuple[bool, str]:
    spec = topology.default_probe_spec(256)
    lg = topology.label_escape_grid(5.0, spec, max_iter=400)
    if not lg.corners_agree:
        return False, "corners disagree at t=5"
    far = lg.component_of_farfield
    for z in (0j, 1.0 + 0j, -1.0 + 0j):
        if lg.component_of(z) != far:
            return False, f"{z} not in the single escaping component"
    return True, "t=5 escaping set is one component"


# ------------------------------------------------------------------- atlas


def check_census_small() -> Tuple[bool, str]:
    spec = GridSpec.square(0j, 3.0, 512)
    rows = cycles.census(spec, period_max=3, level_max=2, max_iter=600)
    by = {(r.kind, r.period): r for r in rows}
    if by[("escape", 1)].components_found != 2:
        return False, f"level-1: {by[('escape', 1)].components_found}"
    if by[("hyperbolic", 1)].components_found != 1:
        return False, f"period-1: {by[('hyperbolic', 1)].components_found}"
    if by[("hyperbolic", 2)].components_found != 2:
        return False, f"period-2: {by[('hyperbolic', 2)].components_found}"
    for r in rows:
        if r.kind == "hyperbolic" and r.components_found > r.bound:
            return False, f"bound violated: {r}"
    return True, "level-1 = 2, period-1 = 1, period-2 = 2 at 512"


def check_ppm() -> Tuple[bool, str]:
    img = atlas.ImageBuffer(1, 1, bytearray(b"\xff\xff\xff"))
    if atlas.encode_ppm(img) != b"P6\n1 1\n255\n\xff\xff\xff":
        return False, "1x1 white PPM bytes"
    spec = GridSpec(0j, 2.0, 1.6, 48, 40)
    im2 = atlas.render_julia(math.sqrt(2.0), spec, max_iter=300)
    back = atlas.decode_ppm(atlas.encode_ppm(im2))
    if bytes(back.rgb) != bytes(im2.rgb):
        return False, "PPM round trip"
    return True, "format and round trip"


def check_render_determinism() -> Tuple[bool, str]:
    spec = GridSpec(0j, 6.0, 4.0, 160, 128)
    a = atlas.render_parameter(spec, max_iter=300, period_max=6, workers=1)
    b = atlas.render_parameter(spec, max_iter=300, period_max=6, workers=4)
    if bytes(a.rgb) != bytes(b.rgb):
        return False, "workers=1 vs workers=4 differ"
    if bytes(atlas.rotate180(a).rgb) != bytes(a.rgb):
        return False, "no 180-degree symmetry"
    return True, "byte-identical and rotation symmetric at 160x128"


STAGES: List[Tuple[str, List[Check]]] = [
    (
        "exactmaps",
        [
            ("exact-degree-law", check_exact_degrees),
            ("exact-oddness", check_exact_oddness),
            ("pole-squarefree", check_pole_squarefree),
            ("exact-float-agreement", check_exact_float_agreement),
        ],
    ),
    (
        "family",
        [
            ("family-spot-values", check_family_pointwise),
            ("family-symmetries", check_family_symmetries),
            ("semiconjugacy", check_semiconjugacy),
            ("derivative-fd", check_derivative_fd),
            ("critical-orbit", check_critical_orbit),
        ],
    ),
    (
        "escape",
        [
            ("classify-examples", check_classify_examples),
            ("radius-growth", check_radius_growth),
            ("classify-symmetry", check_escape_symmetry),
            ("non-escaping-set-bound", check_non_escaping_set_bound),
            ("green-potential", check_green),
        ],
    ),
    (
        "boettcher",
        [
            ("boettcher-functional-eq", check_boettcher_functional),
            ("boettcher-normalization", check_boettcher_normalization),
            ("e0-asymptotics", check_e0),
            ("xi-bounds", check_xi),
            ("kernel-gap", check_kernel_gap),
            ("e0-injectivity", check_injectivity_probe),
        ],
    ),
    (
        "cycles",
        [
            ("multiplier-asymptotics", check_multiplier_asymptotics),
            ("exceptional-multiplier", check_exceptional_multiplier),
            ("centers", check_centers),
            ("misiurewicz", check_misiurewicz),
            ("multiplier-symmetry", check_multiplier_symmetry),
        ],
    ),
    (
        "topology",
        [
            ("label-grid", check_label_grid),
            ("sierpinski-probe", check_probe),
        ],
    ),
    (
        "census+atlas",
        [
            ("census-small", check_census_small),
            ("ppm-format", check_ppm),
            ("render-determinism", check_render_determinism),
        ],
    ),
]


def run_verify(out=print) -> int:
    failures = 0
    for stage, checks in STAGES:
        for name, fn in checks:
            try:
                ok, detail = fn()
            except Exception as exc:  # a check must never crash the runner
                ok, detail = False, f"exception: {exc!r}"
            tag = "PASS" if ok else "FAIL"
            if not ok:
                failures += 1
            out(f"{tag} [{stage}] {name}: {detail}")
    out(f"{'OK' if failures == 0 else 'FAILED'}: {failures} failing checks")
    return 0 if failures == 0 else 1
