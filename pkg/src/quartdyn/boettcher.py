"""Complex Boettcher coordinates on the basin of infinity, the parameter
functions E_n, the iterate-map Boettcher functions Xi_n, and the kernel gap
|Xi_n - sqrt(-4 E_0)|.

The coordinate satisfies Phi(f_t(z)) = -(t/4) Phi(z)^2 with Phi(z) ~ z at
infinity.  Writing w_k = -(t/4) f_t^k(z) gives w_{k+1} = w_k^2 * rho_k with
rho_k = (1 - 2/z_k^2)^2 / (1 - 1/z_k^2), so the continued argument obeys
A_{k+1} = 2 A_k + Arg(rho_k) and

    Phi(z) = (4/t) * lim exp( (log|w_k| + i A_k) / 2^k ).

Choosing the principal Arg(rho_k) is exactly the nearest-branch rule; a
principal value near +-pi means the branch is genuinely ambiguous and is
reported, not guessed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Tuple

from . import escape, family
from .errors import BranchAmbiguous, MapDomainError, NotConverged, NotInBasin, WrongStratum
from .family import INF

PHI_TOL = 1e-12
XI_TOL = 1e-8

# Beyond this modulus the multiplicative correction rho is 1 to double
# precision and the limit is frozen.
_FREEZE = 1e50


@dataclass(frozen=True)
class BoettcherValue:
    """log|Phi|, arg Phi (wrapped to (-pi, pi]), and the step count used."""

    modulus_log: float
    argument: float
    k_used: int

    @property
    def value(self) -> complex:
        return cmath.exp(complex(self.modulus_log, self.argument))


def _wrap_angle(a: float) -> float:
    a = math.remainder(a, 2.0 * math.pi)
    if a <= -math.pi:
        a += 2.0 * math.pi
    return a


def phi(
    t: complex,
    z: complex,
    max_iter: int = escape.CLASSIFY_MAX_ITER,
    bailout_constant: float = escape.DEFAULT_BAILOUT_CONSTANT,
) -> BoettcherValue:
    """Boettcher coordinate of a basin point, modulus in log space and the
    argument by branch continuation."""
    t = family.check_parameter(t)
    verdict = escape.classify_dynamical(
        t, z, max_iter=max_iter, bailout_constant=bailout_constant
    )
    if verdict.kind != escape.KIND_ESCAPE:
        raise NotInBasin(f"z={z!r} not certified in the basin of infinity")
    zk = complex(z)
    if zk == 0:
        raise NotInBasin("z=0 is a critical point, not a basin point")
    mt4 = -0.25 * t
    w = mt4 * zk
    log_w = math.log(abs(w))
    arg_w = cmath.phase(w)
    # The continued-branch root limit L satisfies L ~ -(t/4) z at infinity and
    # L o f = L^2, so the normalized coordinate is Phi = (-4/t) L.
    base = -4.0 / t
    est = base * cmath.exp(complex(log_w, arg_w))
    k = 0
    while k < verdict.level + 64:
        if abs(zk) > _FREEZE:
            break
        z_next = family.eval_map(t, zk)
        if z_next is INF:
            raise NotConverged("orbit hit a pole exactly; Boettcher limit diverges")
        w_next = mt4 * z_next
        rho = w_next / (w * w)
        d_arg = cmath.phase(rho)
        if abs(d_arg) > 2.9 or (abs(zk) >= 4.0 and abs(d_arg) > math.pi / 2):
            raise BranchAmbiguous(
                f"argument jump {d_arg:.3f} rad at step {k} (|z|={abs(zk):.3g})"
            )
        log_w = math.log(abs(w_next))
        arg_w = 2.0 * arg_w + d_arg
        zk, w = z_next, w_next
        k += 1
        new_est = base * cmath.exp(complex(log_w / 2.0**k, arg_w / 2.0**k))
        if abs(new_est - est) <= PHI_TOL * abs(new_est) and abs(zk) > abs(t) + 3:
            est = new_est
            break
        est = new_est
    modulus_log = math.log(abs(base)) + log_w / 2.0**k
    argument = _wrap_angle(cmath.phase(base) + arg_w / 2.0**k)
    return BoettcherValue(modulus_log, argument, k)


def phi_value(t: complex, z: complex, **kw) -> complex:
    return phi(t, z, **kw).value


def _e_value(t: complex, z: complex, **kw) -> complex:
    return (-0.25 * t) * phi_value(t, z, **kw)


def e_n(
    t: complex,
    n: int,
    max_iter: int = escape.CLASSIFY_MAX_ITER,
    bailout_constant: float = escape.DEFAULT_BAILOUT_CONSTANT,
) -> complex:
    """E_n(t) = -(t/4) Phi_t(Q_n(t)) for a parameter of escape level n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    t = family.check_parameter(t)
    verdict = escape.classify_parameter(t, max_iter=max_iter, bailout_constant=bailout_constant)
    if verdict.kind != escape.KIND_ESCAPE or verdict.level != n:
        raise WrongStratum(
            f"t={t!r} has verdict {verdict.kind}/{verdict.level}, expected escape level {n}"
        )
    zn = family.critical_value_orbit(t, n)[n]
    if zn is INF:
        raise NotConverged(f"Q_{n}(t) is a pole; E_{n} diverges at t={t!r}")
    return _e_value(t, zn, max_iter=max_iter, bailout_constant=bailout_constant)


def _q_n_float(t: complex, n: int):
    """Q_n at parameter t by n floating map steps (INF on pole hits)."""
    z = t
    for _ in range(n):
        z = family.eval_map(t, z)
        if z is INF:
            return INF
    return z


def xi_n(t: complex, n: int, k_max: int = 10) -> complex:
    """Boettcher coordinate of the iterate map Q_n at its superattracting
    fixed point infinity, via the alpha_n-adic limit (alpha_n = 2^(n+1)-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t = family.check_parameter(t)
    if abs(t) < 3.0:
        raise MapDomainError("xi_n requires |t| >= 3 (guaranteed basin of Q_n)")
    alpha = 2 ** (n + 1) - 1
    log_a = -(2**n - 1) * math.log(4.0)  # log|a_n|; arg a_n = pi (a_n < 0)
    s = t
    u = cmath.phase(s)
    est = s
    e_k = 0
    for k in range(1, k_max + 1):
        # stop before the next iterate overflows doubles
        if math.log(abs(s)) * alpha + log_a > 230.0:
            tail = 3.0 / (abs(s) * abs(s)) / alpha
            if tail <= XI_TOL:
                return est
            raise NotConverged(
                f"xi_{n}: iterate overflow at k={k} with tail bound {tail:.2e}"
            )
        s_next = _q_n_float(s, n)
        if s_next is INF:
            raise NotConverged(f"xi_{n}: orbit hit a pole at k={k}")
        target = alpha * u + math.pi
        pa = cmath.phase(s_next)
        u_next = pa + 2.0 * math.pi * round((target - pa) / (2.0 * math.pi))
        e_k = 1 + alpha * e_k
        scale = float(alpha) ** k
        new_est = cmath.exp(
            complex(
                (math.log(abs(s_next)) - e_k * log_a) / scale,
                (u_next - e_k * math.pi) / scale,
            )
        )
        s, u = s_next, u_next
        if abs(new_est - est) <= XI_TOL * abs(new_est):
            return new_est
        est = new_est
    raise NotConverged(f"xi_{n} did not settle within k_max={k_max}")


def sqrt_e0_branch(
    t: complex,
    far_modulus: float = 1e4,
    step_factor: float = 0.9,
    **kw,
) -> complex:
    """The branch s(t) of sqrt(-4 E_0(t)) with s(t) ~ t at infinity, pinned by
    continuation along the ray from far_modulus * t/|t| down to t."""
    t = family.check_parameter(t)
    if abs(t) < 3.0:
        raise MapDomainError("branch continuation requires |t| >= 3")
    ray: List[complex] = []
    m = far_modulus
    direction = t / abs(t)
    while m > abs(t):
        ray.append(m * direction)
        m *= step_factor
    ray.append(t)
    s_prev = None
    for tj in ray:
        e0 = _e_value(tj, tj, **kw)
        r = cmath.sqrt(-4.0 * e0)
        anchor = tj if s_prev is None else s_prev
        s_prev = r if abs(r - anchor) <= abs(-r - anchor) else -r
    return s_prev


def kernel_gap(
    t: complex,
    n: int,
    max_iter: int = escape.CLASSIFY_MAX_ITER,
    bailout_constant: float = escape.DEFAULT_BAILOUT_CONSTANT,
) -> float:
    """|Xi_n(t) - s(t)| with s the t-normalized branch of sqrt(-4 E_0)."""
    t = family.check_parameter(t)
    verdict = escape.classify_parameter(t, max_iter=max_iter, bailout_constant=bailout_constant)
    if verdict.kind != escape.KIND_ESCAPE or verdict.level != 0:
        raise WrongStratum(f"kernel_gap needs escape level 0, got {verdict.kind}/{verdict.level}")
    s = sqrt_e0_branch(t, max_iter=max_iter, bailout_constant=bailout_constant)
    x = xi_n(t, n)
    return abs(x - s)


def kernel_table(t: complex, n_max: int) -> List[Tuple[int, complex, float]]:
    """Rows (n, Xi_n(t), gap) for the kernel-check report."""
    rows = []
    s = sqrt_e0_branch(t)
    for n in range(1, n_max + 1):
        x = xi_n(t, n)
        rows.append((n, x, abs(x - s)))
    return rows
