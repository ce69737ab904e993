import cmath
import math
import random

from quartdyn import cycles, escape, exactmaps, family

TM = math.sqrt(4.0 + 2.0 * math.sqrt(2.0))


def test_multiplier_asymptotics_near_origin():
    for t in (0.01, 0.02j, -0.015):
        c = cycles.find_attracting_cycle(t)
        assert c is not None and c.period == 1 and c.refined
        assert abs(c.representative - t) <= 10.0 * abs(t) ** 3
        assert abs(c.multiplier / t**4 - 1.0) <= 0.01


def test_superattracting_two_cycle():
    c = cycles.find_attracting_cycle(math.sqrt(2.0))
    assert c.period == 2
    assert abs(c.multiplier) <= 1e-8
    pts = sorted(c.points(math.sqrt(2.0)), key=abs)
    assert abs(pts[0]) < 1e-7 and abs(pts[1] - math.sqrt(2.0)) < 1e-7


def test_attracting_fixed_point_inside_big_component():
    c = cycles.find_attracting_cycle(0.4 + 1.3j)
    assert c is not None and c.period == 1
    assert abs(c.multiplier) < 1.0


def test_escaping_parameter_has_no_cycle():
    assert cycles.find_attracting_cycle(5.0) is None
    assert cycles.find_attracting_cycle(-2.0 * math.sqrt(3.0)) is None


def test_minimal_period_reported():
    rng = random.Random(14)
    found = 0
    while found < 20:
        t = cmath.rect(rng.uniform(0.1, 1.4), rng.uniform(-math.pi, math.pi))
        c = cycles.find_attracting_cycle(t, max_iter=4000)
        if c is None:
            continue
        found += 1
        for d in range(1, c.period):
            if c.period % d:
                continue
            res = cycles._fp_residual(t, c.representative, d)
            assert res is None or abs(res) > 1e-8 * (1.0 + abs(c.representative))


def test_aberth_on_known_polynomial():
    # (t^2 - 2)(t^2 + 1)(t - 3) expanded, roots +-sqrt2, +-i, 3
    poly = (
        exactmaps.RatPoly((-2, 0, 1))
        * exactmaps.RatPoly((1, 0, 1))
        * exactmaps.RatPoly((-3, 1))
    )
    roots = sorted(cycles.aberth_roots(poly.float_coeffs()), key=lambda z: (round(z.real, 6), z.imag))
    expect = sorted(
        [-math.sqrt(2), math.sqrt(2), 1j, -1j, 3.0 + 0j],
        key=lambda z: (round(complex(z).real, 6), complex(z).imag),
    )
    for got, want in zip(roots, expect):
        assert abs(got - complex(want)) < 1e-12


def test_centers_period_two():
    c2 = sorted(cycles.find_centers(2), key=lambda z: z.real)
    assert len(c2) == 2
    assert abs(c2[0] + math.sqrt(2.0)) < 1e-10
    assert abs(c2[1] - math.sqrt(2.0)) < 1e-10


def test_centers_period_three_saturate_bound():
    acc, rej = cycles.find_centers_detailed(3)
    assert len(acc) == 10  # 2(4^2-1)/3
    assert not rej
    for c in acc:
        orb = family.critical_value_orbit(c, 3)
        assert abs(orb[3] - c) <= 1e-8
        assert abs(orb[1] - c) > 1e-8  # exact period: not fixed
        lam = cycles.cycle_multiplier(c, c, 3)
        assert abs(lam) <= 1e-8


def test_centers_classify_as_their_period():
    for c in cycles.find_centers(3):
        v = escape.classify_parameter(c)
        assert v.kind == escape.KIND_CYCLE
        assert v.cycle.period == 3


def test_misiurewicz_1_2():
    pts = cycles.find_misiurewicz(1, 2)
    params = [m.parameter for m in pts]
    for target in (TM, -TM):
        assert any(abs(p - target) < 1e-10 for p in params)
    for m in pts:
        assert abs(m.cycle.multiplier) > 1.0
        # t in the Julia set: never escapes, never attracts
        v = escape.classify_parameter(m.parameter)
        assert v.kind == escape.KIND_UNDECIDED


def test_misiurewicz_landing_at_tm():
    pts = cycles.find_misiurewicz(1, 2)
    m = min(pts, key=lambda m: abs(m.parameter - TM))
    assert m.cycle.period == 1
    # lands on the fixed point -t with the multiplier of the exceptional orbit
    assert abs(m.cycle.representative + TM) < 1e-8
    lam = family.eval_derivative(TM, -TM)
    assert abs(m.cycle.multiplier - lam) < 1e-8


def test_misiurewicz_0_1_empty():
    assert cycles.find_misiurewicz(0, 1) == []


def test_multiplier_symmetry():
    rng = random.Random(15)
    found = 0
    while found < 25:
        t = cmath.rect(rng.uniform(0.1, 1.4), rng.uniform(-math.pi, math.pi))
        a = cycles.find_attracting_cycle(t, max_iter=4000)
        if a is None:
            continue
        b = cycles.find_attracting_cycle(-t, max_iter=4000)
        assert b is not None and b.period == a.period
        assert abs(a.multiplier - b.multiplier) <= 1e-8 * (1.0 + abs(a.multiplier))
        found += 1


def test_refine_cycle_polishes_to_tolerance():
    t = 0.3 + 0.2j
    c = cycles.find_attracting_cycle(t)
    assert c is not None and c.refined
    res = cycles._fp_residual(t, c.representative, c.period)
    assert abs(res) <= 1e-10 * (1.0 + abs(c.representative))


def test_centers_sit_inside_their_census_components():
    from quartdyn.grid import GridSpec, classify_parameter_grid, label_components

    spec = GridSpec.square(0j, 3.0, 512)
    grid = classify_parameter_grid(spec, max_iter=600, period_max=3)
    for n in (2, 3):
        mask = grid.period == n
        labels, _ = label_components(mask)
        for c in cycles.find_centers(n):
            lab = cycles._anchor_label(labels, mask, spec, c)
            assert lab > 0, f"center {c} not inside a period-{n} pixel component"


def test_census_bounds_helpers():
    assert cycles.escape_component_bound(0) == 1
    assert [cycles.escape_component_bound(n) for n in (1, 2, 3)] == [2, 10, 42]
    assert cycles.hyperbolic_component_bound(1) == 1
    assert [cycles.hyperbolic_component_bound(n) for n in (2, 3, 4)] == [2, 10, 42]
