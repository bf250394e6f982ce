"""Exact matrix algebra over rationals and quadratic extensions.

Square matrices, linear forms, word evaluation over named generators, and
dense tensor (Kronecker) products.  Characteristic polynomials come from
the Faddeev-LeVerrier recursion, which stays inside the scalar field and
also yields the adjugate of (t*I - M) as a matrix polynomial.  Everything
is immutable and pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError
from .exactnum import QuadExt

Word = tuple[tuple[str, int], ...]


def _coerce_scalar(x):
    if isinstance(x, (QuadExt, Fraction)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise DomainError(f"unsupported matrix scalar {x!r}")


class Matrix:
    """Immutable square matrix with exact scalar entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        data = tuple(tuple(_coerce_scalar(x) for x in row) for row in rows)
        n = len(data)
        if n == 0 or any(len(r) != n for r in data):
            raise DomainError("matrix must be square and nonempty")
        object.__setattr__(self, "rows", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"Matrix[{body}]"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_dim(other)
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_dim(other)
        return Matrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self.rows])

    def _check_dim(self, other):
        if not isinstance(other, Matrix) or other.dim != self.dim:
            raise DomainError("dimension mismatch")

    def scale(self, s) -> "Matrix":
        return Matrix([[a * s for a in row] for row in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_dim(other)
        n = self.dim
        cols = tuple(zip(*other.rows))
        return Matrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in cols]
                for row in self.rows
            ]
        )

    def __pow__(self, k: int) -> "Matrix":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.dim:
            raise DomainError("vector dimension mismatch")
        return tuple(sum(a * v for a, v in zip(row, vec)) for row in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)))

    def trace(self):
        t = self.rows[0][0]
        for i in range(1, self.dim):
            t = t + self.rows[i][i]
        return t

    def det(self):
        """Exact determinant by fraction-producing Gaussian elimination."""
        n = self.dim
        a = [list(row) for row in self.rows]
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
            if pivot is None:
                return Fraction(0) * det
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = -det
            det = det * a[col][col]
            inv = 1 / a[col][col] if isinstance(a[col][col], Fraction) else QuadExt(1) / a[col][col]
            for r in range(col + 1, n):
                f = a[r][col] * inv
                if f == 0:
                    continue
                for c in range(col, n):
                    a[r][c] = a[r][c] - f * a[col][c]
        return det

    def inverse(self) -> "Matrix":
        n = self.dim
        a = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
            if pivot is None:
                raise DomainError("matrix is singular")
            a[col], a[pivot] = a[pivot], a[col]
            inv = 1 / a[col][col] if isinstance(a[col][col], Fraction) else QuadExt(1) / a[col][col]
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                if r == col or a[r][col] == 0:
                    continue
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return Matrix([row[n:] for row in a])

    def is_nonnegative(self) -> bool:
        for row in self.rows:
            for x in row:
                s = x.sign() if isinstance(x, QuadExt) else (1 if x > 0 else -1 if x < 0 else 0)
                if s < 0:
                    return False
        return True

    def is_integer(self) -> bool:
        return all(
            isinstance(x, Fraction) and x.denominator == 1
            for row in self.rows
            for x in row
        )


@dataclass(frozen=True)
class LinearForm:
    """Linear functional given by its coefficient vector."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", tuple(_coerce_scalar(c) for c in self.coefficients)
        )

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def __call__(self, vec: Sequence):
        if len(vec) != self.dim:
            raise DomainError("vector dimension mismatch")
        return sum(c * v for c, v in zip(self.coefficients, vec))

    def scale(self, s) -> "LinearForm":
        return LinearForm(tuple(c * s for c in self.coefficients))

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-c for c in self.coefficients))


# ---------------------------------------------------------------------------
# words over named generators
# ---------------------------------------------------------------------------

_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹⁻", "0123456789-")


def parse_word(text: str, names: Iterable[str]) -> Word:
    """Parse a generator word like "R L", "RL^2", or "A B^-1".

    Tokens are separated by whitespace; inside a token, generator names are
    matched longest-first, each optionally followed by ^<int>.  Unicode
    superscript exponents are accepted.
    """
    known = sorted(set(names), key=len, reverse=True)
    if not known:
        raise DomainError("no generators declared")
    # normalize unicode superscripts into caret form
    normalized = ""
    for ch in text:
        t = ch.translate(_SUPERSCRIPTS)
        if t != ch:
            if not normalized.endswith("^") and t in "0123456789-" and not (
                normalized and normalized[-1] in "0123456789-^"
            ):
                normalized += "^"
            normalized += t
        else:
            normalized += ch
    out: list[tuple[str, int]] = []
    for token in normalized.split():
        pos = 0
        while pos < len(token):
            name = next((n for n in known if token.startswith(n, pos)), None)
            if name is None:
                raise DomainError(f"unbound generator at {token[pos:]!r}")
            pos += len(name)
            exp = 1
            if pos < len(token) and token[pos] == "^":
                m = re.match(r"\^(-?\d+)", token[pos:])
                if not m:
                    raise DomainError(f"malformed exponent in {token!r}")
                exp = int(m.group(1))
                pos += m.end()
            if exp:
                out.append((name, exp))
    return _normalize_word(tuple(out))


def _normalize_word(word: Word) -> Word:
    out: list[tuple[str, int]] = []
    for name, exp in word:
        if exp == 0:
            continue
        if out and out[-1][0] == name:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((name, merged))
        else:
            out.append((name, exp))
    return tuple(out)


def word_inverse(word: Word) -> Word:
    return tuple((name, -exp) for name, exp in reversed(word))


def word_power(word: Word, k: int) -> Word:
    if k < 0:
        return word_power(word_inverse(word), -k)
    return _normalize_word(word * k)


def word_str(word: Word) -> str:
    if not word:
        return "<id>"
    return " ".join(n if e == 1 else f"{n}^{e}" for n, e in word)


def word_length(word: Word) -> int:
    return sum(abs(e) for _, e in word)


def word_eval(word: Word | str, generators: Mapping[str, Matrix]) -> Matrix:
    """Product of generator matrices in word order, exponents honoured."""
    if isinstance(word, str):
        word = parse_word(word, generators.keys())
    dims = {g.dim for g in generators.values()}
    if len(dims) != 1:
        raise DomainError("generators have inconsistent dimensions")
    out = Matrix.identity(dims.pop())
    for name, exp in word:
        if name not in generators:
            raise DomainError(f"unbound generator {name!r}")
        out = out @ generators[name] ** exp
    return out


# ---------------------------------------------------------------------------
# characteristic polynomial and adjugate (Faddeev-LeVerrier)
# ---------------------------------------------------------------------------


def _faddeev_leverrier(M: Matrix):
    n = M.dim
    ident = Matrix.identity(n)
    B = ident
    adj_terms = [B]  # adj(tI - M) = sum_k adj_terms[k] * t^(n-1-k)
    descending = [Fraction(1)]
    for k in range(1, n + 1):
        AB = M @ B
        c = -(AB.trace()) / k
        descending.append(c)
        B = AB + ident.scale(c)
        if k < n:
            adj_terms.append(B)
    return descending, adj_terms, B


def char_poly(M: Matrix) -> tuple:
    """Monic characteristic polynomial, coefficients low to high."""
    descending, _, _ = _faddeev_leverrier(M)
    return tuple(reversed(descending))


def char_poly_adjugate(M: Matrix):
    """(char_poly low-to-high, adjugate terms B_0..B_{n-1}).

    adj(t*I - M) = sum_k B_k t^(n-1-k); at an eigenvalue t the columns of
    the adjugate span the corresponding right eigenspace and the rows the
    left one.
    """
    descending, adj_terms, _ = _faddeev_leverrier(M)
    return tuple(reversed(descending)), adj_terms


def cayley_hamilton_residual(M: Matrix) -> Matrix:
    """Substitute M into its own characteristic polynomial (exact)."""
    coeffs = char_poly(M)
    out = Matrix.identity(M.dim).scale(Fraction(0))
    power = Matrix.identity(M.dim)
    for c in coeffs:
        out = out + power.scale(c)
        power = power @ M
    return out


# ---------------------------------------------------------------------------
# tensor products
# ---------------------------------------------------------------------------


def kron_matrix(A: Matrix, B: Matrix) -> Matrix:
    na, nb = A.dim, B.dim
    rows = []
    for i in range(na):
        for k in range(nb):
            rows.append(
                [A.rows[i][j] * B.rows[k][l] for j in range(na) for l in range(nb)]
            )
    return Matrix(rows)


def kron_vector(u: Sequence, v: Sequence) -> tuple:
    return tuple(a * b for a in u for b in v)


@dataclass(frozen=True)
class TensorSystem:
    """Dense tensor product of (map, form, vector) factors.

    Carries the product map, the product form, the product base vector and
    the characteristic polynomial coefficients c_0..c_{d-1} of the map
    (monic degree d = product of the factor dimensions).
    """

    factor_dims: tuple[int, ...]
    map: Matrix
    form: LinearForm
    base_vector: tuple
    char_coefficients: tuple

    @property
    def degree(self) -> int:
        return self.map.dim

    def form_values(self, n_max: int) -> list:
        """[form(map^n vector) for n = 0..n_max] by iterated application."""
        out = []
        vec = self.base_vector
        for _ in range(n_max + 1):
            out.append(self.form(vec))
            vec = self.map.apply(vec)
        return out

    def recurrence_residuals(self, values: Sequence) -> list:
        """Residuals of the monic characteristic recurrence on a sequence."""
        d = self.degree
        cs = self.char_coefficients
        out = []
        for n in range(len(values) - d):
            acc = values[n + d]
            for i in range(d):
                acc = acc + cs[i] * values[n + i]
            out.append(acc)
        return out


def tensor(maps: Sequence[Matrix], forms: Sequence[LinearForm], vectors: Sequence[Sequence]) -> TensorSystem:
    """Assemble the tensor-product system of the given factors."""
    if not maps or len(maps) != len(forms) or len(maps) != len(vectors):
        raise DomainError("tensor factors must be nonempty and aligned")
    for A, L, v in zip(maps, forms, vectors):
        if A.dim != L.dim or A.dim != len(v):
            raise DomainError("tensor factor dimension mismatch")
        if A.det() == 0:
            raise DomainError("singular tensor factor")
    big_map = maps[0]
    big_form = tuple(forms[0].coefficients)
    big_vec = tuple(_coerce_scalar(x) for x in vectors[0])
    for A, L, v in zip(maps[1:], forms[1:], vectors[1:]):
        big_map = kron_matrix(big_map, A)
        big_form = kron_vector(big_form, L.coefficients)
        big_vec = kron_vector(big_vec, tuple(_coerce_scalar(x) for x in v))
    coeffs = char_poly(big_map)
    if coeffs[0] == 0:
        raise DomainError("tensor map must be invertible")
    return TensorSystem(
        factor_dims=tuple(A.dim for A in maps),
        map=big_map,
        form=LinearForm(big_form),
        base_vector=big_vec,
        char_coefficients=coeffs[:-1],
    )
