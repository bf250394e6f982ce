"""Twist families from a filling pair of multicurves.

A curve system is the rectangular matrix N of pairwise intersection
numbers between the components of two multicurves.  The leading
eigenvalue mu of N N^T drives the standard 2x2 twist representation

    T_A = [[1, sqrt(mu)], [0, 1]],   T_B = [[1, 0], [-sqrt(mu), 1]],

whose sign-definite words (nonnegative powers of A, nonpositive powers of
B, both present) are guaranteed hyperbolic.  Stretch factors of such
words are exact: the representation matrices keep rational diagonal and
sqrt(mu)-multiples off the diagonal, so traces stay rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import (
    DomainError,
    HypothesisViolationError,
    NotFillingError,
)
from .exactnum import Enclosure, QuadExt, quad_sqrt
from .linalg import Matrix, Word, parse_word, word_eval
from .pfengine import pf_data
from .torus import PAClass


def _rect_transpose(n):
    return tuple(zip(*n))


def _rect_times_transpose(n) -> Matrix:
    rows = len(n)
    return Matrix(
        [
            [sum(a * b for a, b in zip(n[i], n[j])) for j in range(rows)]
            for i in range(rows)
        ]
    )


@dataclass(frozen=True)
class CurveSystem:
    """Intersection pattern of a filling pair of multicurves.

    intersections[i][j] counts crossings between component i of the first
    multicurve and component j of the second.  No zero row or column is
    allowed; a component disjoint from the whole other multicurve cannot
    fill.
    """

    intersections: tuple[tuple[int, ...], ...]

    def __init__(self, intersections):
        rows = tuple(tuple(int(x) for x in row) for row in intersections)
        if not rows or not rows[0]:
            raise NotFillingError("empty intersection matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise NotFillingError("ragged intersection matrix")
        if any(x < 0 for r in rows for x in r):
            raise DomainError("intersection numbers are nonnegative")
        if any(all(x == 0 for x in r) for r in rows):
            raise NotFillingError("zero row: the pair cannot fill")
        for j in range(width):
            if all(rows[i][j] == 0 for i in range(len(rows))):
                raise NotFillingError("zero column: the pair cannot fill")
        object.__setattr__(self, "intersections", rows)

    @property
    def p(self) -> int:
        return len(self.intersections)

    @property
    def q(self) -> int:
        return len(self.intersections[0])

    @cached_property
    def mu(self) -> Fraction | Enclosure:
        """Leading eigenvalue of N N^T (exact when rational)."""
        data = pf_data(_rect_times_transpose(self.intersections))
        enc = data.lam_enclosure()
        if enc.width == 0:
            return enc.lo
        return enc

    @cached_property
    def mu_transposed(self) -> Fraction | Enclosure:
        """Leading eigenvalue of N^T N; equals mu on the nonzero spectrum."""
        data = pf_data(_rect_times_transpose(_rect_transpose(self.intersections)))
        enc = data.lam_enclosure()
        return enc.lo if enc.width == 0 else enc


def build_rep(cs: CurveSystem) -> tuple[Matrix, Matrix]:
    """(T_A, T_B) for the twist pair; needs a rational leading eigenvalue.

    An irrational mu would put sqrt(mu) outside every quadratic field the
    package computes in exactly, so such systems are refused rather than
    approximated.
    """
    mu = cs.mu
    if isinstance(mu, Enclosure):
        raise DomainError(
            "leading eigenvalue of N N^T is irrational; no exact representation"
        )
    root = quad_sqrt(mu)
    t_a = Matrix([[QuadExt(1), root], [QuadExt(0), QuadExt(1)]])
    t_b = Matrix([[QuadExt(1), QuadExt(0)], [-root, QuadExt(1)]])
    return t_a, t_b


def _check_sign_convention(word: Word):
    has_a = any(name == "A" for name, _ in word)
    has_b = any(name == "B" for name, _ in word)
    if not (has_a and has_b):
        raise HypothesisViolationError(
            "word must involve both twists to be pseudo-Anosov"
        )
    for name, exp in word:
        if name == "A" and exp < 0:
            raise HypothesisViolationError("A must appear with nonnegative exponents")
        if name == "B" and exp > 0:
            raise HypothesisViolationError("B must appear with nonpositive exponents")


def tv_word_matrix(cs: CurveSystem, word: Word | str) -> Matrix:
    """Image of an arbitrary word; no pseudo-Anosov claim attached."""
    t_a, t_b = build_rep(cs)
    if isinstance(word, str):
        word = parse_word(word, ("A", "B"))
    return word_eval(word, {"A": t_a, "B": t_b})


def tv_stretch(cs: CurveSystem, word: Word | str) -> QuadExt:
    """Stretch factor of a sign-definite word, exact in a quadratic field."""
    if isinstance(word, str):
        word = parse_word(word, ("A", "B"))
    _check_sign_convention(word)
    m = tv_word_matrix(cs, word)
    tr = m.trace()
    if isinstance(tr, QuadExt):
        if not tr.is_rational:
            raise DomainError("unexpected irrational trace in a twist word")
        tr = tr.as_fraction()
    if abs(tr) <= 2:
        raise HypothesisViolationError("twist word is not hyperbolic")
    return (QuadExt(abs(tr)) + quad_sqrt(tr * tr - 4)) / 2


def tv_class(cs: CurveSystem, word: Word | str) -> PAClass:
    """The word as a torus-style mapping class when sqrt(mu) is rational.

    The representation space then carries the full exact foliation
    machinery; the chart is tagged per family so points from different
    curve systems cannot be paired accidentally.
    """
    mu = cs.mu
    if isinstance(mu, Enclosure):
        raise DomainError("irrational leading eigenvalue")
    root = quad_sqrt(mu)
    if not root.is_rational:
        raise DomainError(
            "sqrt of the leading eigenvalue is irrational; fixed foliations "
            "leave the quadratic fields this package computes in exactly"
        )
    if isinstance(word, str):
        word = parse_word(word, ("A", "B"))
    m = tv_word_matrix(cs, word)
    rational = Matrix([[x.as_fraction() if isinstance(x, QuadExt) else x for x in row] for row in m.rows])
    chart = f"twist-family(mu={mu})"
    return PAClass(rational, word, chart)
