"""Linear charts for foliation dynamics.

A chart is a weight space with a positive cone and named generator
matrices.  The module provides carried actions of words (with a
conservative cone-preservation flag), intersection functionals obtained
as left eigenvectors of the leading eigendata, piecewise-linear forms
with explicit pieces, and a convexity probe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DomainError, HypothesisViolationError
from .exactnum import QuadExt, scalar_sign
from .linalg import LinearForm, Matrix, Word, parse_word
from .pfengine import pf_data
from .torus import TORUS_CHART, TORUS_GENERATORS, ChartPoint, PAClass


def _matrix_nonnegative(M: Matrix) -> bool:
    return M.is_nonnegative()


@dataclass(frozen=True)
class ChartSystem:
    """Weight space of a fixed dimension with named generator actions.

    The cone is the set of entrywise-positive weights; a generator is
    flagged cone-preserving exactly when its matrix is entrywise
    nonnegative, which is equivalent for linear maps.
    """

    dim: int
    generators: Mapping[str, Matrix]
    chart: str = "chart"

    def __post_init__(self):
        for name, m in self.generators.items():
            if m.dim != self.dim:
                raise DomainError(f"generator {name!r} has wrong dimension")
            if m.det() == 0:
                raise DomainError(f"generator {name!r} is singular")

    @classmethod
    def torus(cls) -> "ChartSystem":
        return cls(dim=2, generators=dict(TORUS_GENERATORS), chart=TORUS_CHART)

    def cone_flag(self, name: str, exponent: int = 1) -> bool:
        m = self.generators[name]
        if exponent >= 0:
            return _matrix_nonnegative(m)
        return _matrix_nonnegative(m.inverse())


@dataclass(frozen=True)
class CarriedAction:
    matrix: Matrix
    cone_preserving: bool


def carried_action(cs: ChartSystem, word: Word | str) -> CarriedAction:
    """Product matrix of a word with a conservative cone flag.

    The flag is the conjunction over the letters; a letter with negative
    exponent counts through its inverse matrix, so it keeps the flag only
    when that inverse is itself nonnegative.
    """
    if isinstance(word, str):
        word = parse_word(word, cs.generators.keys())
    out = Matrix.identity(cs.dim)
    flag = True
    for name, exp in word:
        if name not in cs.generators:
            raise DomainError(f"unbound generator {name!r}")
        out = out @ cs.generators[name] ** exp
        flag = flag and cs.cone_flag(name, exp)
    return CarriedAction(out, flag)


def intersection_functional(cs: ChartSystem, g: PAClass | Matrix | Word | str) -> LinearForm:
    """Left leading eigenvector as a linear form, largest coefficient 1.

    On the positive cone this is a positive multiple of the pairing with
    the stable foliation of g; the scale is not determined, so callers
    must combine values in scale-invariant ratios only.
    """
    if isinstance(g, PAClass):
        matrix = g.matrix
    elif isinstance(g, Matrix):
        matrix = g
    else:
        matrix = carried_action(cs, g).matrix
    if matrix.dim != cs.dim:
        raise DomainError("matrix does not act on this chart")
    data = pf_data(matrix)
    coeffs = data.left
    # fix the overall sign so the form is positive on the leading direction
    probe = sum(c * r for c, r in zip(coeffs, data.right))
    if scalar_sign(probe) < 0:
        coeffs = tuple(-c for c in coeffs)
    return LinearForm(coeffs)


# ---------------------------------------------------------------------------
# piecewise-linear forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    """A cone cut out by linear inequalities, with the form valid on it."""

    constraints: tuple[LinearForm, ...]
    form: LinearForm

    def contains(self, weights) -> bool:
        return all(scalar_sign(c(weights)) >= 0 for c in self.constraints)


@dataclass(frozen=True)
class PLForm:
    """Piecewise-linear form with explicit pieces covering its domain."""

    pieces: tuple[Piece, ...]
    chart: str = "chart"

    def __post_init__(self):
        if not self.pieces:
            raise DomainError("a piecewise-linear form needs pieces")
        dims = {p.form.dim for p in self.pieces}
        if len(dims) != 1:
            raise DomainError("inconsistent piece dimensions")

    @property
    def dim(self) -> int:
        return self.pieces[0].form.dim

    @property
    def piece_count(self) -> int:
        return len(self.pieces)


def _weights_of(u) -> tuple:
    return u.weights if isinstance(u, ChartPoint) else tuple(u)


def pl_eval(f: PLForm, u) -> tuple:
    """(value, 1-based index of the first piece containing u).

    Boundary points belong to every adjacent piece; the lowest index wins.
    """
    if isinstance(u, ChartPoint) and u.chart != f.chart:
        raise DomainError(f"point in chart {u.chart!r}, form on {f.chart!r}")
    w = _weights_of(u)
    if len(w) != f.dim:
        raise DomainError("dimension mismatch")
    for j, piece in enumerate(f.pieces, start=1):
        if piece.contains(w):
            return piece.form(w), j
    raise DomainError("point outside every piece of the form")


def convexity_probe(f: PLForm, u, w, t) -> bool:
    """Exact check of f(t u + (1-t) w) <= t f(u) + (1-t) f(w)."""
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise DomainError("t must lie in [0, 1]")
    uw = _weights_of(u)
    ww = _weights_of(w)
    mid = tuple(t * a + (1 - t) * b for a, b in zip(uw, ww))
    f_mid, _ = pl_eval(f, ChartPoint(f.chart, mid) if isinstance(u, ChartPoint) else mid)
    f_u, _ = pl_eval(f, u)
    f_w, _ = pl_eval(f, w)
    gap = t * f_u + (1 - t) * f_w - f_mid
    return scalar_sign(gap) >= 0


def torus_intersection_form(z: ChartPoint) -> PLForm:
    """The pairing u -> |det(z, u)| as a two-piece linear form.

    Piece 1 carries det(z, .) where it is nonnegative, piece 2 carries
    the negative; they agree (with value 0) on the ray of z.
    """
    if z.chart != TORUS_CHART and z.dim != 2:
        raise DomainError("need a 2-dimensional chart point")
    z1, z2 = z.weights
    det_form = LinearForm((-z2, z1))  # det(z, u) = z1 u2 - z2 u1
    return PLForm(
        pieces=(
            Piece(constraints=(det_form,), form=det_form),
            Piece(constraints=(-det_form,), form=-det_form),
        ),
        chart=z.chart,
    )


@dataclass(frozen=True)
class ConvergenceSpec:
    """Sample set and iteration range for uniform-convergence tables."""

    n_min: int
    n_max: int
    tolerance: Fraction
    samples: tuple[ChartPoint, ...]

    def __post_init__(self):
        if self.n_min < 1 or self.n_max < self.n_min:
            raise DomainError("need 1 <= n_min <= n_max")
        if Fraction(self.tolerance) <= 0:
            raise DomainError("tolerance must be positive")
        if not self.samples:
            raise DomainError("sample set must be nonempty")
