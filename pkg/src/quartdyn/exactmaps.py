"""Exact rational-function algebra for the parameter-plane maps Q_n(t) = f_t^n(t).

Everything here runs over arbitrary-precision rationals (``fractions.Fraction``)
so it can serve as the oracle for the floating-point modules.  The composition

    Q_{n+1} = -(t/4) (N^2 - 2 D^2)^2 / (D^2 (N^2 - D^2)),   Q_n = N/D reduced,

is coprime by construction: gcd(N, D) = 1 forces gcd(N^2 - 2D^2, D) = 1 and
gcd(N^2 - 2D^2, N^2 - D^2) | D^2, while t never divides the denominator
(D(0) != 0 inductively).  Polynomial gcds are therefore only needed for the
squarefree parts of the root-target polynomials, where a primitive-PRS
Euclid over the integers keeps coefficient growth in check.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from .errors import CapacityError

# Refuse compositions whose numerator degree would exceed this.
MAX_NUM_DEGREE = 100_000

# Exact compositions beyond Q_6 (numerator degree 5461) are expensive and
# unneeded; callers must opt in explicitly.
DEFAULT_MAX_INDEX = 6


class _PoleMarker:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "POLE"


POLE = _PoleMarker()

ExactValue = Union[Fraction, _PoleMarker]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class RatPoly:
    """Dense polynomial over Fraction; coeffs[k] is the coefficient of t^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls(())

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "RatPoly":
        return cls((0, 1))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "RatPoly":
        return RatPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
        return RatPoly(out)

    def scale(self, c) -> "RatPoly":
        c = _as_fraction(c)
        if c == 0:
            return RatPoly(())
        return RatPoly(tuple(a * c for a in self.coeffs))

    def shift_up(self, k: int) -> "RatPoly":
        """Multiply by t^k."""
        if self.is_zero():
            return self
        return RatPoly((Fraction(0),) * k + self.coeffs)

    def square(self) -> "RatPoly":
        return self * self

    def derivative(self) -> "RatPoly":
        return RatPoly(tuple(c * k for k, c in enumerate(self.coeffs) if k >= 1))

    def eval(self, t) -> Fraction:
        t = _as_fraction(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def eval_complex(self, t: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * t + complex(c)
        return acc

    def float_coeffs(self) -> List[float]:
        return [float(c) for c in self.coeffs]

    def integer_coeffs(self) -> List[int]:
        """Coefficients cleared to integers (multiplied by the common denominator)."""
        if not self.coeffs:
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return [int(c * den) for c in self.coeffs]

    def primitive_integer(self) -> "RatPoly":
        """Integer-coefficient primitive part with positive leading coefficient."""
        ints = self.integer_coeffs()
        if not ints:
            return RatPoly(())
        g = 0
        for c in ints:
            g = math.gcd(g, abs(c))
        if ints[-1] < 0:
            g = -g
        return RatPoly([c // g for c in ints])

    def even_part_only(self) -> bool:
        return all(c == 0 for k, c in enumerate(self.coeffs) if k % 2 == 1)

    def odd_part_only(self) -> bool:
        return all(c == 0 for k, c in enumerate(self.coeffs) if k % 2 == 0)

    def __repr__(self):
        if self.is_zero():
            return "RatPoly(0)"
        terms = []
        for k in range(self.degree(), -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{k}")
        return "RatPoly(" + " + ".join(terms) + ")"


def _int_content(cs: Sequence[int]) -> int:
    g = 0
    for c in cs:
        g = math.gcd(g, abs(c))
    return g or 1


def _int_primitive(cs: List[int]) -> List[int]:
    g = _int_content(cs)
    return [c // g for c in cs]


def _int_trim(cs: List[int]) -> List[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _int_pseudo_rem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder of integer polynomials (a, b low-to-high, b nonzero)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        # lb * a - la * t^(da-db) * b  kills the top term
        a = [lb * c for c in a]
        off = da - db
        for i, cb in enumerate(b):
            a[off + i] -= la * cb
        a = _int_trim(a)
        if not a:
            break
    return a


def poly_gcd(p: RatPoly, q: RatPoly) -> RatPoly:
    """Monic gcd via a primitive pseudo-remainder sequence over the integers."""
    if p.is_zero():
        return _make_monic(q)
    if q.is_zero():
        return _make_monic(p)
    a = _int_primitive(p.integer_coeffs())
    b = _int_primitive(q.integer_coeffs())
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_pseudo_rem(a, b)
        if r:
            r = _int_primitive(r)
        a, b = b, r
    return _make_monic(RatPoly(a))


def _make_monic(p: RatPoly) -> RatPoly:
    if p.is_zero():
        return p
    return p.scale(Fraction(1) / p.leading())


def squarefree_part(p: RatPoly) -> RatPoly:
    """p / gcd(p, p'), returned as a primitive integer polynomial."""
    if p.degree() <= 0:
        return p.primitive_integer()
    g = poly_gcd(p, p.derivative())
    if g.degree() <= 0:
        return p.primitive_integer()
    q, r = poly_divmod(p, g)
    assert r.is_zero(), "squarefree division left a remainder"
    return q.primitive_integer()


def poly_divmod(a: RatPoly, b: RatPoly) -> Tuple[RatPoly, RatPoly]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, a.degree() - b.degree() + 1)
    r = list(a.coeffs)
    db, lb = b.degree(), b.leading()
    while len(r) - 1 >= db and r:
        da = len(r) - 1
        c = r[-1] / lb
        q[da - db] = c
        for i, cb in enumerate(b.coeffs):
            r[da - db + i] -= c * cb
        while r and r[-1] == 0:
            r.pop()
    return RatPoly(q), RatPoly(r)


def is_squarefree(p: RatPoly) -> bool:
    return poly_gcd(p, p.derivative()).degree() <= 0


class RationalFuncExact:
    """Reduced ratio of two exact polynomials with monic denominator."""

    __slots__ = ("num", "den", "index")

    def __init__(self, num: RatPoly, den: RatPoly, index: int | None = None):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        lc = den.leading()
        if lc != 1:
            num = num.scale(Fraction(1) / lc)
            den = den.scale(Fraction(1) / lc)
        self.num = num
        self.den = den
        self.index = index  # n when this value is Q_n, else None

    def degree(self) -> int:
        """max(deg num, deg den); equals (4^(n+1)-1)/3 for Q_n."""
        return max(self.num.degree(), self.den.degree())

    def order_at_infinity(self) -> int:
        """deg num - deg den; equals 2^(n+1)-1 for Q_n."""
        return self.num.degree() - self.den.degree()

    def leading_coefficient(self) -> Fraction:
        """Coefficient a with Q(t) ~ a t^(deg num - deg den) at infinity."""
        return self.num.leading()

    def eval_exact(self, t) -> ExactValue:
        t = _as_fraction(t)
        d = self.den.eval(t)
        if d == 0:
            return POLE
        return self.num.eval(t) / d

    def eval_complex(self, t: complex) -> complex:
        return self.num.eval_complex(t) / self.den.eval_complex(t)

    def __repr__(self):
        tag = f"Q_{self.index}" if self.index is not None else "RationalFuncExact"
        return f"<{tag}: deg num {self.num.degree()}, deg den {self.den.degree()}>"


Q0 = RationalFuncExact(RatPoly.x(), RatPoly.const(1), index=0)


def q_next(q_prev: RationalFuncExact) -> RationalFuncExact:
    """One composition step Q -> f_t(Q) as a reduced rational function of t."""
    n_, d_ = q_prev.num, q_prev.den
    out_deg = 4 * n_.degree() + 1
    if out_deg > MAX_NUM_DEGREE:
        raise CapacityError(
            f"composition would reach numerator degree {out_deg} > {MAX_NUM_DEGREE}"
        )
    n2 = n_.square()
    d2 = d_.square()
    core = n2 - d2.scale(2)  # N^2 - 2 D^2
    num = core.square().shift_up(1).scale(Fraction(-1, 4))
    den = d2 * (n2 - d2)
    idx = None if q_prev.index is None else q_prev.index + 1
    return RationalFuncExact(num, den, index=idx)


_q_cache: List[RationalFuncExact] = [Q0]
_q_lock = threading.Lock()


def q_function(n: int, max_index: int = DEFAULT_MAX_INDEX) -> RationalFuncExact:
    """Q_n as an exact rational function (cached)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > max_index:
        raise CapacityError(f"Q_{n} exceeds the configured cap n <= {max_index}")
    with _q_lock:
        while len(_q_cache) <= n:
            _q_cache.append(q_next(_q_cache[-1]))
        return _q_cache[n]


def q_sequence(n: int, max_index: int = DEFAULT_MAX_INDEX) -> List[RationalFuncExact]:
    q_function(n, max_index)
    return _q_cache[: n + 1]


def degree(q: RationalFuncExact) -> int:
    return q.degree()


def leading_coefficient(q: RationalFuncExact) -> Fraction:
    return q.leading_coefficient()


def expected_degree(n: int) -> int:
    return (4 ** (n + 1) - 1) // 3


def expected_leading(n: int) -> Fraction:
    return Fraction(-1, 4) ** (2**n - 1)


def expected_order_at_infinity(n: int) -> int:
    return 2 ** (n + 1) - 1


def pole_polynomial(n: int) -> RatPoly:
    """Squarefree numerator of Q_{n-1}^2 - 1; roots are the finite poles of Q_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    q = q_function(n - 1)
    p = q.num.square() - q.den.square()
    return squarefree_part(p)


def center_polynomial(n: int) -> RatPoly:
    """Squarefree numerator of Q_{n-2}^2 - 2; roots are period-n center candidates."""
    if n < 2:
        raise ValueError("n must be >= 2")
    q = q_function(n - 2)
    p = q.num.square() - q.den.square().scale(2)
    return squarefree_part(p)


def misiurewicz_polynomial(j: int, k: int) -> RatPoly:
    """Squarefree numerator of Q_j - Q_k; roots make the critical orbit (j,k)-preperiodic."""
    if not 0 <= j < k:
        raise ValueError("need 0 <= j < k")
    qj = q_function(j)
    qk = q_function(k)
    p = qj.num * qk.den - qk.num * qj.den
    return squarefree_part(p)


def eval_exact(q: RationalFuncExact, t) -> ExactValue:
    return q.eval_exact(t)


def poly_text_lines(p: RatPoly) -> List[str]:
    """Archival text form: one line 'degree k: numerator/denominator' per nonzero term."""
    lines = []
    for k, c in enumerate(p.coeffs):
        if c != 0:
            lines.append(f"degree {k}: {c.numerator}/{c.denominator}")
    return lines


def rational_func_text(q: RationalFuncExact) -> str:
    parts = ["numerator"]
    parts += poly_text_lines(q.num)
    parts.append("denominator")
    parts += poly_text_lines(q.den)
    return "\n".join(parts)
