"""Exact model of measured foliations on the once-punctured torus.

Foliations are nonzero 2-vectors up to scale and sign, the geometric
intersection number is the absolute determinant of the pair, and mapping
classes are integer 2x2 matrices of determinant 1 given as words in the
standard twist generators R = [[1,1],[0,1]] and L = [[1,0],[1,1]].
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Mapping

from .errors import (
    ChartMismatchError,
    DomainError,
    FieldMismatchError,
    HypothesisViolationError,
)
from .exactnum import (
    Enclosure,
    QuadExt,
    log_enclosure,
    quad_sqrt,
    scalar_abs,
    scalar_to_enclosure,
)
from .linalg import Matrix, Word, parse_word, word_eval, word_inverse, word_str

TORUS_CHART = "torus"

R = Matrix([[1, 1], [0, 1]])
L = Matrix([[1, 0], [1, 1]])
TORUS_GENERATORS: Mapping[str, Matrix] = {"R": R, "L": L}


class Classification(Enum):
    PSEUDO_ANOSOV = "pseudoAnosov"
    NOT_PSEUDO_ANOSOV = "notPseudoAnosov"


class ChartPoint:
    """A measured foliation as a weight vector in a named chart.

    Weights are exact scalars (or enclosures); the class is understood up
    to positive scaling, and in the torus chart also up to sign.
    """

    __slots__ = ("chart", "weights")

    def __init__(self, chart: str, weights):
        ws = tuple(
            w if isinstance(w, (QuadExt, Enclosure)) else Fraction(w) for w in weights
        )
        if not ws:
            raise DomainError("empty weight vector")
        if all(isinstance(w, (Fraction, QuadExt)) and w == 0 for w in ws):
            raise DomainError("zero vector does not represent a foliation")
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "weights", ws)

    def __setattr__(self, name, value):
        raise AttributeError("ChartPoint is immutable")

    @classmethod
    def torus(cls, x, y) -> "ChartPoint":
        return cls(TORUS_CHART, (x, y))

    @property
    def dim(self) -> int:
        return len(self.weights)

    def scaled(self, t) -> "ChartPoint":
        return ChartPoint(self.chart, tuple(w * t for w in self.weights))

    def transformed(self, M: Matrix) -> "ChartPoint":
        return ChartPoint(self.chart, M.apply(self.weights))

    def __iter__(self):
        return iter(self.weights)

    def __eq__(self, other):
        return (
            isinstance(other, ChartPoint)
            and self.chart == other.chart
            and self.weights == other.weights
        )

    def __repr__(self):
        return f"ChartPoint({self.chart!r}, {self.weights})"


def _check_same_chart(u: ChartPoint, v: ChartPoint):
    if u.chart != v.chart:
        raise ChartMismatchError(f"charts differ: {u.chart!r} vs {v.chart!r}")


def intersection(u: ChartPoint, v: ChartPoint):
    """|u1 v2 - u2 v1|: symmetric, scaling-equivariant, Mod-invariant.

    Exact when both points live in a common quadratic field; certified
    enclosure otherwise.
    """
    _check_same_chart(u, v)
    if u.dim != 2 or v.dim != 2:
        raise DomainError("torus pairing needs 2-dimensional weights")
    u1, u2 = u.weights
    v1, v2 = v.weights
    try:
        return scalar_abs(u1 * v2 - u2 * v1)
    except FieldMismatchError:
        pass
    det = scalar_to_enclosure(u1) * scalar_to_enclosure(v2) - scalar_to_enclosure(
        u2
    ) * scalar_to_enclosure(v1)
    return abs(det)


def classify(M: Matrix) -> Classification:
    """Nielsen-Thurston type of an integer determinant-1 matrix."""
    if not M.is_integer() or M.dim != 2:
        raise DomainError("classification needs an integer 2x2 matrix")
    if M.det() != 1:
        raise DomainError("classification needs determinant 1")
    tr = M.trace()
    return (
        Classification.PSEUDO_ANOSOV
        if abs(tr) > 2
        else Classification.NOT_PSEUDO_ANOSOV
    )


def _clear_denominators(vec: tuple) -> tuple:
    """Cosmetic rescale by the lcm of all coefficient denominators."""
    dens = []
    for w in vec:
        if isinstance(w, QuadExt):
            dens.extend((w.a.denominator, w.b.denominator))
        else:
            dens.append(Fraction(w).denominator)
    scale = 1
    for d in dens:
        scale = scale * d // math.gcd(scale, d)
    if scale == 1:
        return vec
    return tuple(w * scale for w in vec)


class PAClass:
    """A mapping class given by a generator word and its matrix.

    Eigendata (stretch factor and fixed foliations) is computed once on
    first use and cached; instances are otherwise immutable, so sharing
    across threads is safe.
    """

    def __init__(self, matrix: Matrix, word: Word = (), chart: str = TORUS_CHART):
        if not matrix.is_integer() or matrix.dim != 2:
            raise DomainError("mapping class needs an integer 2x2 matrix")
        if matrix.det() != 1:
            raise DomainError("mapping class matrix must have determinant 1")
        self.matrix = matrix
        self.word = word
        self.chart = chart

    @classmethod
    def from_word(
        cls,
        text: str | Word,
        generators: Mapping[str, Matrix] = TORUS_GENERATORS,
        chart: str = TORUS_CHART,
    ) -> "PAClass":
        word = (
            parse_word(text, generators.keys()) if isinstance(text, str) else tuple(text)
        )
        return cls(word_eval(word, generators), word, chart)

    def __repr__(self):
        return f"PAClass({word_str(self.word)})"

    @property
    def classification(self) -> Classification:
        return classify(self.matrix)

    @property
    def is_pseudo_anosov(self) -> bool:
        return self.classification is Classification.PSEUDO_ANOSOV

    def inverse(self) -> "PAClass":
        return PAClass(self.matrix.inverse(), word_inverse(self.word), self.chart)

    def power(self, k: int) -> "PAClass":
        return PAClass(self.matrix**k, self.word * k if k >= 0 else word_inverse(self.word) * (-k), self.chart)

    @cached_property
    def _eigen(self):
        if not self.is_pseudo_anosov:
            raise HypothesisViolationError(
                f"{word_str(self.word)} is not pseudo-Anosov"
            )
        tr = self.matrix.trace()
        sign = 1 if tr > 0 else -1
        work = self.matrix if sign > 0 else -self.matrix
        a, b = work.rows[0]
        c, d = work.rows[1]
        t = work.trace()
        sq = quad_sqrt(t * t - 4)
        lam = (QuadExt(t) + sq) / 2
        lam_small = (QuadExt(t) - sq) / 2

        def eigvec(ev):
            if b != 0:
                return (QuadExt(b), ev - a)
            if c != 0:
                return (ev - d, QuadExt(c))
            raise HypothesisViolationError("diagonal matrix is not pseudo-Anosov")

        plus = ChartPoint(self.chart, _clear_denominators(eigvec(lam)))
        minus = ChartPoint(self.chart, _clear_denominators(eigvec(lam_small)))
        return lam, plus, minus

    @property
    def stretch_factor(self) -> QuadExt:
        return self._eigen[0]

    @property
    def unstable(self) -> ChartPoint:
        return self._eigen[1]

    @property
    def stable(self) -> ChartPoint:
        return self._eigen[2]


def fixed_foliations(g: PAClass) -> tuple[ChartPoint, ChartPoint, QuadExt]:
    """(unstable, stable, stretch factor); exact in a quadratic field.

    The matrix scales the unstable vector by +-lam and the stable one by
    +-1/lam; the sign is invisible in the sign-quotient chart.
    """
    lam, plus, minus = g._eigen
    return plus, minus, lam


def translation_length(g: PAClass) -> Enclosure:
    """log of the stretch factor, refinable to any requested width."""
    return log_enclosure(g.stretch_factor)


def projective_equal(u: ChartPoint, v: ChartPoint) -> bool:
    """Equality of rays up to sign, decided exactly.

    Cross-multiplies inside a common field; directions from genuinely
    different quadratic fields can only agree when both slopes are
    rational.
    """
    _check_same_chart(u, v)
    u1, u2 = u.weights
    v1, v2 = v.weights
    try:
        return u1 * v2 == u2 * v1
    except FieldMismatchError:
        zero_u = isinstance(u1, (Fraction, QuadExt)) and u1 == 0
        zero_v = isinstance(v1, (Fraction, QuadExt)) and v1 == 0
        if zero_u or zero_v:
            return zero_u and zero_v
        return u2 / u1 == v2 / v1


def are_independent(g: PAClass, h: PAClass) -> bool:
    """True iff the fixed-point sets in the projective chart are disjoint."""
    g_plus, g_minus, _ = fixed_foliations(g)
    h_plus, h_minus, _ = fixed_foliations(h)
    for x in (g_plus, g_minus):
        for y in (h_plus, h_minus):
            if projective_equal(x, y):
                return False
    return True
