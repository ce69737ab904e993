import cmath
import math
import random
from fractions import Fraction

import pytest

from quartdyn import family
from quartdyn.errors import MapDomainError
from quartdyn.family import INF


def rand_point(rng, rmin=0.0, rmax=5.0):
    return cmath.rect(rng.uniform(rmin, rmax), rng.uniform(-math.pi, math.pi))


def test_map_critical_value_exact():
    # (0-2)^2/(0-1) = -4 forces f_t(0) = t, with no rounding at all
    assert family.eval_map(1.0, 0.0) == 1.0
    t = 0.7 - 1.3j
    assert family.eval_map(t, 0.0) == t


def test_map_rational_spot_value():
    # oracle: -(2/4) * 49/8 computed in exact rational arithmetic
    expect = Fraction(-2, 4) * Fraction(49, 8)
    got = family.eval_map(2.0, 3.0)
    assert got.imag == 0.0
    assert abs(got.real - float(expect)) < 1e-15


def test_map_sends_sqrt2_to_zero():
    rng = random.Random(1)
    for _ in range(200):
        t = rand_point(rng, 0.05, 8.0)
        for s in (math.sqrt(2.0), -math.sqrt(2.0)):
            v = family.eval_map(t, s)
            assert abs(v) < 1e-29 * (1.0 + abs(t))


def test_poles_and_infinity():
    assert family.eval_map(3.0, 1.0) is INF
    assert family.eval_map(3.0, -1.0) is INF
    assert family.eval_map(3.0, INF) is INF
    assert INF == INF
    assert not (INF == 1.0)


def test_parameter_validation():
    with pytest.raises(MapDomainError):
        family.eval_map(0.0, 2.0)
    with pytest.raises(MapDomainError):
        family.check_parameter(complex("inf"))


def test_evenness_and_t_oddness():
    rng = random.Random(2)
    for _ in range(500):
        t = rand_point(rng, 0.05, 5.0)
        z = rand_point(rng, 0.0, 4.0)
        a = family.eval_map(t, z)
        b = family.eval_map(t, -z)
        if a is INF or b is INF:
            assert a is b
            continue
        assert a == b  # bitwise: (-z)^2 rounds identically to z^2
        c = family.eval_map(-t, z)
        assert c == -a


def test_derivative_closed_form_vs_finite_differences():
    rng = random.Random(3)
    h = 1e-6
    checked = 0
    while checked < 300:
        t = rand_point(rng, 0.05, 5.0)
        z = rand_point(rng, 0.0, 4.0)
        if abs(z * z - 1.0) < 1e-2:
            continue
        d = family.eval_derivative(t, z)
        fd = (family.eval_map(t, z + h) - family.eval_map(t, z - h)) / (2.0 * h)
        assert abs(d - fd) <= 1e-6 * (1.0 + abs(d))
        checked += 1


def test_derivative_critical_points():
    t = 2.3 + 0.4j
    assert family.eval_derivative(t, 0.0) == 0.0
    assert abs(family.eval_derivative(t, math.sqrt(2.0))) < 1e-14
    with pytest.raises(MapDomainError):
        family.eval_derivative(t, 1.0)


def test_derivative_exceptional_value():
    # the fixed point 2/sqrt(3) of f_{-2 sqrt 3} has multiplier exactly -16
    t = -2.0 * math.sqrt(3.0)
    z = 2.0 / math.sqrt(3.0)
    assert abs(family.eval_map(t, z) - z) < 1e-13
    assert abs(family.eval_derivative(t, z) + 16.0) < 1e-10


def test_semiconjugate_spot_values():
    assert family.eval_semiconjugate(4.0, 2.0) == 0.0
    t = 1.5 - 0.5j
    assert abs(family.eval_semiconjugate(t, 0.0) - t * t) < 1e-15
    assert family.eval_semiconjugate(2.0, 1.0) is INF


def test_semiconjugacy_identity():
    rng = random.Random(4)
    checked = 0
    while checked < 1000:
        t = rand_point(rng, 0.05, 5.0)
        z = rand_point(rng, 0.05, 4.0)
        if abs(z * z - 1.0) < 1e-4:
            continue
        lhs = family.eval_semiconjugate(t, z * z)
        fz = family.eval_map(t, z)
        if lhs is INF or fz is INF:
            continue
        rhs = fz * fz
        assert abs(lhs - rhs) <= 1e-12 * (1.0 + abs(rhs))
        checked += 1


def test_orbit_superattracting_two_cycle():
    t = math.sqrt(2.0)
    orb = family.orbit(t, t, 4)
    expect = [t, 0.0, t, 0.0, t]
    for got, want in zip(orb, expect):
        assert abs(got - want) < 1e-12


def test_orbit_infinity_absorbing():
    orb = family.orbit(2.0, INF, 3)
    assert all(z is INF for z in orb)
    orb = family.orbit(2.0, 1.0, 3)
    assert orb[0] == 1.0 and all(z is INF for z in orb[1:])


def test_orbit_misiurewicz_parameter():
    # (t^2-2)^2 = 4(t^2-1) at t^2 = 4 + 2 sqrt 2, so f_t(t) = -t and -t is fixed
    t = math.sqrt(4.0 + 2.0 * math.sqrt(2.0))
    orb = family.orbit(t, t, 3)
    for got, want in zip(orb, [t, -t, -t, -t]):
        assert abs(got - want) < 1e-12
