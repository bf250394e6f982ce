"""Exact and certified scalar arithmetic.

Three scalar kinds are used throughout the package:

* ``Rational`` is an alias of :class:`fractions.Fraction` (always lowest
  terms, positive denominator).
* :class:`QuadExt` is an exact element ``a + b*sqrt(d)`` of a real
  quadratic field, with ``d`` squarefree.
* :class:`Enclosure` is an adaptive rational interval: certified bounds
  plus an on-demand refinement procedure that halves the width.

Real-root isolation for rational polynomials (Descartes'-rule bisection
with exact sign evaluation) and certified logarithms round out the kit.
All values are immutable; every operation is pure.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, FieldMismatchError, PrecisionExhaustedError

Rational = Fraction

#: default target width for refinements requested without an explicit eps
DEFAULT_PRECISION = Fraction(1, 10**12)

_MAX_REFINE_STEPS = 4096


def _squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = s*s*d with d squarefree; return (s, d). Requires n > 0."""
    if n <= 0:
        raise DomainError("squarefree decomposition needs a positive integer")
    s, d = 1, 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    return s, d * m


class QuadExt:
    """a + b*sqrt(d) with a, b rational and d a squarefree positive integer.

    Purely rational values are stored with b = 0, d = 1 and mix freely with
    elements of any quadratic field; combining two genuinely irrational
    values from different fields raises :class:`FieldMismatchError`.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 1):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d <= 0:
            raise DomainError("radicand must be positive")
        if b:
            s, d0 = _squarefree_decompose(d)
            b *= s
            d = d0
            if d == 1:
                a += b
                b = Fraction(0)
        else:
            d = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # -- field bookkeeping -------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is irrational")
        return self.a

    def _join(self, other) -> tuple["QuadExt", "QuadExt"]:
        if isinstance(other, (int, Fraction)):
            other = QuadExt(other)
        elif not isinstance(other, QuadExt):
            return NotImplemented, NotImplemented
        if self.d == other.d or self.is_rational or other.is_rational:
            return self, other
        raise FieldMismatchError(
            f"cannot combine sqrt({self.d}) with sqrt({other.d})"
        )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        x, y = self._join(other)
        if x is NotImplemented:
            return NotImplemented
        d = x.d if not x.is_rational else y.d
        return QuadExt(x.a + y.a, x.b + y.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        x, y = self._join(other)
        if x is NotImplemented:
            return NotImplemented
        d = x.d if not x.is_rational else y.d
        return QuadExt(x.a - y.a, x.b - y.b, d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        x, y = self._join(other)
        if x is NotImplemented:
            return NotImplemented
        d = x.d if not x.is_rational else y.d
        return QuadExt(x.a * y.a + d * x.b * y.b, x.a * y.b + x.b * y.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        x, y = self._join(other)
        if x is NotImplemented:
            return NotImplemented
        n = y.norm()
        if n == 0:
            raise DomainError("division by zero")
        d = x.d if not x.is_rational else y.d
        conj = QuadExt(y.a, -y.b, y.d)
        num = x * conj
        return QuadExt(num.a / n, num.b / n, d)

    def __rtruediv__(self, other):
        return QuadExt(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (QuadExt(1) / self) ** (-k)
        out = QuadExt(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a*a - d*b*b; multiplicative."""
        return self.a * self.a - self.d * self.b * self.b

    # -- order -------------------------------------------------------------

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # mixed signs: compare a^2 with d b^2 (never equal for squarefree d>1)
        if a * a > self.d * b * b:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            if self.d == other.d:
                return self.a == other.a and self.b == other.b
            # distinct quadratic fields only share the rationals
            return self.b == 0 and other.b == 0 and self.a == other.a
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        x, y = self._join(other)
        return (x - y).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- conversion --------------------------------------------------------

    def enclosure(self, eps=None) -> "Enclosure":
        """Certified rational interval around this value, refinable at will."""
        if self.b == 0:
            return Enclosure(self.a, self.a)
        a, b, d = self.a, self.b, self.d

        def shrink(target: Fraction) -> tuple[Fraction, Fraction]:
            slo, shi = _sqrt_bounds(Fraction(d), target / (2 * abs(b)))
            if b > 0:
                return a + b * slo, a + b * shi
            return a + b * shi, a + b * slo

        lo, hi = shrink(eps if eps is not None else Fraction(1, 2**16))
        return Enclosure(lo, hi, shrink)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        if self.b == 0:
            return f"QuadExt({self.a})"
        return f"QuadExt({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"


def quad_sqrt(q) -> QuadExt:
    """Exact square root of a nonnegative rational, e.g. sqrt(32) = 4*sqrt(2)."""
    q = Fraction(q)
    if q < 0:
        raise DomainError("square root of a negative rational")
    if q == 0:
        return QuadExt(0)
    s, d = _squarefree_decompose(q.numerator * q.denominator)
    if d == 1:
        return QuadExt(Fraction(s, q.denominator))
    return QuadExt(0, Fraction(s, q.denominator), d)


def quad_arith(x: QuadExt, y: QuadExt, op: str) -> QuadExt:
    """Named dispatch for the four field operations ('add', 'sub', 'mul', 'div')."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise DomainError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# enclosures
# ---------------------------------------------------------------------------


def _sqrt_bounds(q: Fraction, eps: Fraction) -> tuple[Fraction, Fraction]:
    """Bounds lo <= sqrt(q) <= hi with hi - lo <= eps, via integer isqrt."""
    if q < 0:
        raise DomainError("square root of a negative value")
    if q == 0:
        return Fraction(0), Fraction(0)
    n = q.numerator * q.denominator
    den = q.denominator
    p = 0
    while Fraction(1, (1 << p) * den) > eps:
        p += 1
    r = math.isqrt(n << (2 * p))
    if r * r == n << (2 * p):
        v = Fraction(r, (1 << p) * den)
        return v, v
    return Fraction(r, (1 << p) * den), Fraction(r + 1, (1 << p) * den)


def _round_out(lo: Fraction, hi: Fraction, slack: Fraction) -> tuple[Fraction, Fraction]:
    """Round endpoints outward onto a dyadic grid no coarser than slack.

    Keeps denominators small after long chains of interval arithmetic.
    """
    if slack <= 0:
        return lo, hi
    p = 0
    while Fraction(1, 1 << p) > slack:
        p += 1
    scale = 1 << p
    lo2 = Fraction(math.floor(lo * scale), scale)
    hi2 = Fraction(math.ceil(hi * scale), scale)
    return lo2, hi2


_IV = tuple[Fraction, Fraction]


def _iv_add(a: _IV, b: _IV) -> _IV:
    return a[0] + b[0], a[1] + b[1]


def _iv_neg(a: _IV) -> _IV:
    return -a[1], -a[0]


def _iv_sub(a: _IV, b: _IV) -> _IV:
    return a[0] - b[1], a[1] - b[0]


def _iv_mul(a: _IV, b: _IV) -> _IV:
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(ps), max(ps)


def _iv_div(a: _IV, b: _IV) -> _IV:
    if b[0] <= 0 <= b[1]:
        raise ZeroDivisionError("denominator interval contains zero")
    rec = (1 / b[1], 1 / b[0])
    return _iv_mul(a, rec)


def _iv_abs(a: _IV) -> _IV:
    if a[0] >= 0:
        return a
    if a[1] <= 0:
        return -a[1], -a[0]
    return Fraction(0), max(-a[0], a[1])


class Enclosure:
    """Certified rational interval [lo, hi] with on-demand refinement.

    ``shrink(eps)`` must return bounds of width at most eps that still
    contain the enclosed value.  Zero-width enclosures are legal and
    represent exact rationals.  Arithmetic composes enclosures; a derived
    enclosure refines its operands adaptively when asked to shrink.
    """

    __slots__ = ("lo", "hi", "_shrink")

    def __init__(self, lo, hi, shrink: Callable[[Fraction], _IV] | None = None):
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise DomainError("enclosure with lo > hi")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "_shrink", shrink)

    def __setattr__(self, name, value):
        raise AttributeError("Enclosure is immutable")

    @classmethod
    def exact(cls, value) -> "Enclosure":
        v = Fraction(value)
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def refined(self, eps) -> "Enclosure":
        """Same value, width at most eps; bounds never loosen."""
        eps = Fraction(eps)
        if eps <= 0:
            raise DomainError("eps must be positive")
        if self.width <= eps:
            return self
        if self._shrink is None:
            raise PrecisionExhaustedError(
                f"static enclosure of width {float(self.width):.3g} cannot reach {float(eps):.3g}"
            )
        lo, hi = self._shrink(eps)
        lo = max(lo, self.lo)
        hi = min(hi, self.hi)
        return Enclosure(lo, hi, self._shrink)

    def refine_once(self) -> "Enclosure":
        if self.width == 0:
            return self
        return self.refined(self.width / 2)

    # -- derived arithmetic --------------------------------------------------

    def _iv(self) -> _IV:
        return self.lo, self.hi

    @staticmethod
    def _coerce(x) -> "Enclosure":
        if isinstance(x, Enclosure):
            return x
        if isinstance(x, QuadExt):
            return x.enclosure()
        return Enclosure.exact(x)

    @staticmethod
    def _derived(
        ops: tuple["Enclosure", ...],
        fn: Callable[..., _IV],
        plan: Callable[[Fraction, list], list[Fraction]],
    ) -> "Enclosure":
        """Compose an interval operation with targeted operand refinement.

        plan(eps, ops) yields operand target widths sufficient for the
        result to reach width eps/2, so a shrink walks the expression tree
        once instead of bisecting blindly.
        """

        def shrink(eps: Fraction) -> _IV:
            cur = list(ops)
            goal = eps
            for _ in range(8):
                targets = plan(goal, cur)
                cur = [
                    o if o.width <= t else o.refined(t)
                    for o, t in zip(cur, targets)
                ]
                lo, hi = fn(*[o._iv() for o in cur])
                if hi - lo <= eps / 2:
                    return _round_out(lo, hi, eps / 4)
                goal = goal / 8
            raise PrecisionExhaustedError("adaptive refinement failed to converge")

        lo, hi = fn(*[o._iv() for o in ops])
        return Enclosure(lo, hi, shrink)

    @staticmethod
    def _mag(o: "Enclosure") -> Fraction:
        return max(abs(o.lo), abs(o.hi))

    @staticmethod
    def _plan_linear(eps: Fraction, ops) -> list[Fraction]:
        n = len(ops)
        return [eps / (4 * n)] * n

    @staticmethod
    def _plan_mul(eps: Fraction, ops) -> list[Fraction]:
        a, b = ops
        return [
            eps / (8 * (Enclosure._mag(b) + 1)),
            eps / (8 * (Enclosure._mag(a) + 1)),
        ]

    @staticmethod
    def _plan_div(eps: Fraction, ops) -> list[Fraction]:
        a, b = ops
        m = min(abs(b.lo), abs(b.hi))
        if m == 0:
            raise ZeroDivisionError("denominator interval touches zero")
        return [
            eps * m / 8,
            eps * m * m / (8 * (Enclosure._mag(a) + 1)),
        ]

    def __add__(self, other):
        return Enclosure._derived(
            (self, Enclosure._coerce(other)), _iv_add, Enclosure._plan_linear
        )

    __radd__ = __add__

    def __neg__(self):
        return Enclosure._derived((self,), _iv_neg, Enclosure._plan_linear)

    def __sub__(self, other):
        return Enclosure._derived(
            (self, Enclosure._coerce(other)), _iv_sub, Enclosure._plan_linear
        )

    def __rsub__(self, other):
        return Enclosure._derived(
            (Enclosure._coerce(other), self), _iv_sub, Enclosure._plan_linear
        )

    def __mul__(self, other):
        return Enclosure._derived(
            (self, Enclosure._coerce(other)), _iv_mul, Enclosure._plan_mul
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        den = certified_nonzero(Enclosure._coerce(other))
        return Enclosure._derived((self, den), _iv_div, Enclosure._plan_div)

    def __rtruediv__(self, other):
        den = certified_nonzero(self)
        return Enclosure._derived(
            (Enclosure._coerce(other), den), _iv_div, Enclosure._plan_div
        )

    def __abs__(self):
        return Enclosure._derived((self,), _iv_abs, Enclosure._plan_linear)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Enclosure.exact(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def contains(self, value) -> bool:
        v = Fraction(value)
        return self.lo <= v <= self.hi

    def __float__(self):
        return float(self.midpoint)

    def __repr__(self):
        return f"Enclosure({self.lo}, {self.hi})"


def refine(e: Enclosure, eps) -> Enclosure:
    """Refine an enclosure to width at most eps."""
    return e.refined(eps)


def simplest_in_interval(lo, hi) -> Fraction:
    """The rational with the smallest denominator in the closed interval."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise DomainError("empty interval")

    def go(a: Fraction, b: Fraction) -> Fraction:
        ca = math.ceil(a)
        if ca <= b:
            if a <= 0 <= b:
                return Fraction(0)
            return Fraction(ca) if a > 0 else Fraction(math.floor(b))
        n = math.floor(a)
        return n + 1 / go(1 / (b - n), 1 / (a - n))

    return go(lo, hi)


def as_enclosure(x) -> Enclosure:
    return Enclosure._coerce(x)


def certified_nonzero(e: Enclosure, max_steps: int = _MAX_REFINE_STEPS) -> Enclosure:
    """Refine until 0 is excluded; exact [0, 0] raises DomainError."""
    cur = e
    for _ in range(max_steps):
        if cur.lo > 0 or cur.hi < 0:
            return cur
        if cur.width == 0:
            raise DomainError("value is exactly zero")
        cur = cur.refine_once()
    raise PrecisionExhaustedError("could not certify a nonzero sign", witness=e)


def certified_sign(e: Enclosure, max_steps: int = _MAX_REFINE_STEPS) -> int:
    """Exact sign of the enclosed value (-1, 0, +1)."""
    cur = e
    for _ in range(max_steps):
        if cur.lo > 0:
            return 1
        if cur.hi < 0:
            return -1
        if cur.width == 0:
            return 0
        cur = cur.refine_once()
    raise PrecisionExhaustedError("could not certify a sign", witness=e)


def certified_positive(e: Enclosure, max_steps: int = _MAX_REFINE_STEPS) -> Enclosure:
    cur = certified_nonzero(e, max_steps)
    if cur.hi < 0:
        raise DomainError("value is negative")
    return cur


def sqrt_enclosure(x) -> Enclosure:
    """Enclosure of the square root of a nonnegative enclosed value."""
    e = Enclosure._coerce(x)
    if e.lo < 0:
        e = e.refined(max(e.width / 4, DEFAULT_PRECISION))
        if e.lo < 0:
            if e.hi < 0:
                raise DomainError("square root of a negative value")
            e = Enclosure(Fraction(0), e.hi, e._shrink)

    def bounds(cur: "Enclosure", eps: Fraction) -> _IV:
        lo = max(cur.lo, Fraction(0))
        slo, _ = _sqrt_bounds(lo, eps / 4)
        _, shi = _sqrt_bounds(cur.hi, eps / 4)
        return slo, shi

    def shrink(eps: Fraction) -> _IV:
        cur = e
        for _ in range(12):
            slo, shi = bounds(cur, eps)
            if shi - slo <= eps:
                return slo, shi
            # derivative of sqrt is 1/(2 sqrt); near zero fall back to eps^2
            target = eps * slo if slo > 0 else eps * eps / 4
            cur = cur.refined(min(target, cur.width / 2))
        raise PrecisionExhaustedError("sqrt refinement failed")

    lo, hi = bounds(e, Fraction(1, 2**16))
    return Enclosure(lo, hi, shrink)


# ---------------------------------------------------------------------------
# certified logarithm
# ---------------------------------------------------------------------------

_LOG2_CACHE: dict = {"eps": None, "bounds": None}


def _atanh_series_bounds(u: Fraction, eps: Fraction) -> tuple[Fraction, Fraction]:
    """Bounds for 2*atanh(u) with 0 <= u <= 1/3, tail controlled by eps."""
    total = Fraction(0)
    term = u
    k = 0
    u2 = u * u
    while True:
        total += term / (2 * k + 1)
        # tail after the k-th term of 2*sum u^(2j+1)/(2j+1)
        tail = Fraction(9, 4) * term * u2 / (2 * k + 3)
        if 2 * tail <= eps:
            return 2 * total, 2 * total + 2 * tail
        term *= u2
        k += 1


def _log2_bounds(eps: Fraction) -> tuple[Fraction, Fraction]:
    cached_eps = _LOG2_CACHE["eps"]
    if cached_eps is None or cached_eps > eps:
        _LOG2_CACHE["eps"] = eps
        _LOG2_CACHE["bounds"] = _atanh_series_bounds(Fraction(1, 3), eps)
    return _LOG2_CACHE["bounds"]


def _log_bounds(x: Fraction, eps: Fraction) -> tuple[Fraction, Fraction]:
    """Bounds lo <= ln(x) <= hi with hi - lo <= eps, for rational x > 0."""
    if x <= 0:
        raise DomainError("logarithm of a nonpositive value")
    # reduce to m in [1, 2) with x = m * 2^e
    e = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / Fraction(2) ** e
    while m >= 2:
        m /= 2
        e += 1
    while m < 1:
        m *= 2
        e -= 1
    part = eps / (2 * (abs(e) + 1))
    u = (m - 1) / (m + 1)
    mlo, mhi = _atanh_series_bounds(u, part)
    if e == 0:
        return mlo, mhi
    l2lo, l2hi = _log2_bounds(part)
    if e > 0:
        return mlo + e * l2lo, mhi + e * l2hi
    return mlo + e * l2hi, mhi + e * l2lo


def log_enclosure(x) -> Enclosure:
    """Enclosure of the natural logarithm of a certified-positive value."""
    e = Enclosure._coerce(x)
    cur = certified_nonzero(e)
    if cur.hi < 0:
        raise DomainError("logarithm of a negative value")

    base = cur

    def shrink(eps: Fraction) -> _IV:
        inner = base
        for _ in range(12):
            if inner.width <= inner.lo * eps / 2:
                lo, _ = _log_bounds(inner.lo, eps / 4)
                _, hi = _log_bounds(inner.hi, eps / 4)
                return lo, hi
            # derivative of log is at most 1/lo on the interval
            inner = inner.refined(min(inner.lo * eps / 2, inner.width / 2))
        raise PrecisionExhaustedError("log refinement failed")

    lo, hi = shrink(Fraction(1, 2**8))
    return Enclosure(lo, hi, shrink)


# ---------------------------------------------------------------------------
# polynomials over the rationals (coefficients low to high)
# ---------------------------------------------------------------------------


def poly_trim(cs: Sequence) -> tuple[Fraction, ...]:
    cs = [Fraction(c) for c in cs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_degree(cs) -> int:
    return len(cs) - 1


def poly_eval(cs, x):
    out = Fraction(0) if not isinstance(x, QuadExt) else QuadExt(0)
    for c in reversed(cs):
        out = out * x + c
    return out


def poly_derivative(cs):
    return tuple(k * c for k, c in enumerate(cs) if k >= 1)


def _poly_divmod(f, g):
    f = list(f)
    g = list(g)
    if not g:
        raise DomainError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g) and any(c != 0 for c in f):
        if f[-1] == 0:
            f.pop()
            continue
        k = len(f) - len(g)
        c = f[-1] / g[-1]
        q[k] = c
        for i, gc in enumerate(g):
            f[i + k] -= c * gc
        f.pop()
    return poly_trim(q), poly_trim(f)


def _poly_gcd(f, g):
    a, b = poly_trim(f), poly_trim(g)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = tuple(c / lead for c in a)
    return a


def poly_squarefree(cs):
    """Radical of the polynomial: same roots, all simple."""
    cs = poly_trim(cs)
    if poly_degree(cs) < 1:
        return cs
    g = _poly_gcd(cs, poly_derivative(cs))
    if poly_degree(g) < 1:
        return cs
    q, _ = _poly_divmod(cs, g)
    return q


def _sign_variations(cs) -> int:
    v = 0
    prev = 0
    for c in cs:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if prev and s != prev:
            v += 1
        prev = s
    return v


def _taylor_shift_1(cs):
    """p(x) -> p(x + 1) by repeated synthetic addition."""
    out = list(cs)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += out[j + 1]
    return tuple(out)


def _compose_affine(cs, a: Fraction, h: Fraction):
    """Coefficients of p(a + h*x)."""
    out: list[Fraction] = [Fraction(0)] * len(cs)
    for c in reversed(cs):
        # out = out * (a + h x) + c
        new = [Fraction(0)] * len(out)
        for i, oc in enumerate(out):
            new[i] += a * oc
            if i + 1 < len(new):
                new[i + 1] += h * oc
        new[0] += c
        out = new
    return tuple(out)


def _descartes_count(p, a: Fraction, b: Fraction) -> int:
    """Descartes bound for the number of roots of p in the open interval (a, b)."""
    q = _compose_affine(p, a, b - a)
    r = _taylor_shift_1(tuple(reversed(q)))
    return _sign_variations(r)


def _deflate_rational_root(p, r: Fraction):
    """Divide p by (x - r) exactly; r must be a root."""
    q, rem = _poly_divmod(p, (-r, Fraction(1)))
    if rem:
        raise DomainError("deflation at a non-root")
    return q


def _bisection_shrink(p, a: Fraction, b: Fraction) -> Callable[[Fraction], _IV]:
    sa = 1 if poly_eval(p, a) > 0 else -1

    def shrink(eps: Fraction) -> _IV:
        lo, hi, slo = a, b, sa
        while hi - lo > eps:
            mid = (lo + hi) / 2
            v = poly_eval(p, mid)
            if v == 0:
                return mid, mid
            if (1 if v > 0 else -1) == slo:
                lo = mid
            else:
                hi = mid
        return lo, hi

    return shrink


def isolate_real_roots(coefficients: Sequence) -> list[Enclosure]:
    """Disjoint enclosures of the distinct real roots, in increasing order.

    Accepts coefficients low to high; works by Descartes'-rule bisection
    with exact sign evaluation, so isolation is certified.
    """
    cs = poly_trim(coefficients)
    if not cs:
        raise DomainError("zero polynomial has no isolated roots")
    if poly_degree(cs) == 0:
        return []
    p = list(poly_squarefree(cs))

    found: list[tuple[Fraction, Fraction, tuple]] = []
    points: list[Fraction] = []

    if p[0] == 0:
        points.append(Fraction(0))
        p = p[1:]
    p = tuple(p)

    if poly_degree(p) >= 1:
        lead = p[-1]
        bound = 1 + max(abs(c / lead) for c in p[:-1]) if len(p) > 1 else Fraction(1)
        stack: list[tuple[Fraction, Fraction]] = [(-bound, bound)]
        while stack:
            a, b = stack.pop()
            v = _descartes_count(p, a, b)
            if v == 0:
                continue
            if v == 1:
                found.append((a, b, p))
                continue
            mid = (a + b) / 2
            if poly_eval(p, mid) == 0:
                points.append(mid)
                p = _deflate_rational_root(p, mid)
                if poly_degree(p) < 1:
                    continue
            stack.append((a, mid))
            stack.append((mid, b))

    enclosures = [Enclosure(m, m) for m in points]
    for a, b, poly in found:
        # re-deflate stale captures: the stored poly may predate a deflation,
        # but deflation only removed roots outside the open interval (a, b)
        enclosures.append(Enclosure(a, b, _bisection_shrink(poly, a, b)))

    enclosures.sort(key=lambda e: (e.lo, e.hi))
    # separate neighbours whose closed intervals touch
    changed = True
    while changed:
        changed = False
        for i in range(len(enclosures) - 1):
            if enclosures[i].hi >= enclosures[i + 1].lo:
                enclosures[i] = enclosures[i].refine_once()
                enclosures[i + 1] = enclosures[i + 1].refine_once()
                changed = True
        enclosures.sort(key=lambda e: (e.lo, e.hi))
    return enclosures


# ---------------------------------------------------------------------------
# generic scalar helpers (Fraction | QuadExt | Enclosure)
# ---------------------------------------------------------------------------

ExactScalar = (int, Fraction, QuadExt)


def is_exact(x) -> bool:
    return isinstance(x, ExactScalar)


def scalar_abs(x):
    if isinstance(x, QuadExt):
        return abs(x)
    if isinstance(x, Enclosure):
        return abs(x)
    return abs(Fraction(x))


def scalar_sign(x) -> int:
    if isinstance(x, QuadExt):
        return x.sign()
    if isinstance(x, Enclosure):
        return certified_sign(x)
    x = Fraction(x)
    return (x > 0) - (x < 0)


def scalar_to_enclosure(x) -> Enclosure:
    return Enclosure._coerce(x)


def scalar_decimal(x, places: int = 12) -> str:
    """Deterministic fixed-point rendering, round-half-even."""
    if isinstance(x, Enclosure):
        e = x.refined(Fraction(1, 10 ** (places + 3))) if x._shrink or x.width == 0 else x
        value = e.midpoint
    elif isinstance(x, QuadExt):
        value = x.enclosure().refined(Fraction(1, 10 ** (places + 3))).midpoint
    else:
        value = Fraction(x)
    scaled = value * 10**places
    n = round(scaled)  # Fraction rounds half to even
    sign = "-" if n < 0 else ""
    n = abs(n)
    digits = str(n).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}" if places else f"{sign}{digits}"
