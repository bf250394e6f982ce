"""Perron-Frobenius analysis of matrices acting on positive cones.

Two computation paths:

* integer/rational 2x2 matrices with |trace| > 2 and determinant +-1 get
  exact quadratic-field eigendata from the quadratic formula;
* primitive nonnegative matrices of any (small) dimension get certified
  enclosures: the leading eigenvalue from real-root isolation of the
  characteristic polynomial, eigenvectors from the adjugate of (t*I - M)
  evaluated over the eigenvalue enclosure, and a spectral-gap enclosure
  from exact deflation.

Eigenvectors are normalised so the entry of largest magnitude is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, HypothesisViolationError, PrecisionExhaustedError
from .exactnum import (
    Enclosure,
    QuadExt,
    as_enclosure,
    certified_sign,
    isolate_real_roots,
    quad_sqrt,
    sqrt_enclosure,
)
from .linalg import Matrix, char_poly_adjugate


def wielandt_bound(dim: int) -> int:
    return (dim - 1) ** 2 + 1


def primitivity(M: Matrix) -> int | None:
    """Least k with M^k entrywise positive, or None within the Wielandt bound.

    Only the sign pattern matters, so the powers are taken over booleans.
    """
    n = M.dim
    for row in M.rows:
        for x in row:
            s = x.sign() if isinstance(x, QuadExt) else (1 if x > 0 else -1 if x < 0 else 0)
            if s < 0:
                raise DomainError("primitivity needs a nonnegative matrix")
    pattern = tuple(tuple(x != 0 for x in row) for row in M.rows)
    current = pattern
    for k in range(1, wielandt_bound(n) + 1):
        if all(all(row) for row in current):
            return k
        current = tuple(
            tuple(
                any(current[i][m] and pattern[m][j] for m in range(n))
                for j in range(n)
            )
            for i in range(n)
        )
    return None


@dataclass(frozen=True)
class PFData:
    """Leading eigendata of a matrix with Perron-Frobenius structure.

    lam is the spectral radius (exact QuadExt on the 2x2 fast path, an
    Enclosure otherwise); right/left eigenvectors are tuples of exact
    scalars or Enclosures, each normalised with largest entry 1; gap
    encloses |second eigenvalue| / lam.
    """

    matrix: Matrix
    lam: QuadExt | Enclosure
    right: tuple
    left: tuple
    gap: Enclosure
    primitivity_exponent: int | None
    exact: bool

    def lam_enclosure(self) -> Enclosure:
        return self.lam.enclosure() if isinstance(self.lam, QuadExt) else self.lam


def _is_rational_matrix(M: Matrix) -> bool:
    return all(isinstance(x, Fraction) for row in M.rows for x in row)


def _hyperbolic_fast_path_applies(M: Matrix) -> bool:
    if M.dim != 2 or not _is_rational_matrix(M):
        return False
    tr = M.trace()
    det = M.det()
    return abs(tr) > 2 and det in (1, -1)


def _normalize_largest_entry(vec: tuple) -> tuple:
    """Scale so the entry of largest magnitude equals 1 (exact scalars)."""
    best = None
    for x in vec:
        ax = abs(x)
        if best is None or ax > abs(best):
            best = x
    if best == 0:
        raise DomainError("zero eigenvector")
    return tuple(x / best for x in vec)


def _fast_path(M: Matrix, k: int | None) -> PFData:
    tr = M.trace()
    det = M.det()
    work = M if tr > 0 else -M
    # the matrix and its negative act identically on sign-quotient weights
    a, b = work.rows[0]
    c, d = work.rows[1]
    t = work.trace()
    sq = quad_sqrt(t * t - 4 * det)
    lam = (QuadExt(t) + sq) / 2
    other = (QuadExt(t) - sq) / 2

    def eigvec(m11, m12, m21, m22, ev):
        if m12 != 0:
            return (QuadExt(m12), ev - m11)
        if m21 != 0:
            return (ev - m22, QuadExt(m21))
        raise HypothesisViolationError("diagonal matrix has no hyperbolic dynamics")

    right = _normalize_largest_entry(eigvec(a, b, c, d, lam))
    left = _normalize_largest_entry(eigvec(a, c, b, d, lam))
    gap = (abs(other) / lam).enclosure()
    return PFData(
        matrix=M,
        lam=lam,
        right=right,
        left=left,
        gap=gap,
        primitivity_exponent=k,
        exact=True,
    )


def _leading_root(roots: list[Enclosure], coeffs) -> Enclosure:
    if not roots:
        raise HypothesisViolationError("no real eigenvalue found")
    lead = roots[-1]
    steps = 0
    while lead.lo <= 0:
        if lead.width == 0 or steps > 128:
            raise HypothesisViolationError("leading eigenvalue is not positive")
        lead = lead.refine_once()
        steps += 1
    return _try_exact_root(coeffs, lead)


def _try_exact_root(coeffs, enc: Enclosure) -> Enclosure:
    """Upgrade an isolating interval to a point when the root is rational."""
    from .exactnum import poly_eval, simplest_in_interval

    cur = enc
    for _ in range(4):
        if cur.width == 0:
            return cur
        candidate = simplest_in_interval(cur.lo, cur.hi)
        if poly_eval(coeffs, candidate) == 0:
            return Enclosure.exact(candidate)
        cur = cur.refined(cur.width / 16)
    return cur


def _interval_poly_eval(terms: list[Fraction], lam: Enclosure) -> Enclosure:
    """Evaluate sum terms[k] * lam^(len-1-k) by Horner over enclosures."""
    acc = Enclosure.exact(terms[0])
    for c in terms[1:]:
        acc = acc * lam + Enclosure.exact(c)
    return acc


def _adjugate_at(adj_terms, lam: Enclosure, n: int):
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            coeffs = [B.rows[i][j] for B in adj_terms]
            row.append(_interval_poly_eval(coeffs, lam))
        entries.append(row)
    return entries


def _eigvec_from_adjugate(adj_terms, lam: Enclosure, n: int, rows: bool):
    """A row/column of adj(lam I - M) with every entry sign-certified."""
    for _ in range(80):
        entries = _adjugate_at(adj_terms, lam, n)
        if rows:
            candidates = [list(r) for r in entries]
        else:
            candidates = [[entries[i][j] for i in range(n)] for j in range(n)]
        for col in candidates:
            if all(e.lo > 0 or e.hi < 0 for e in col):
                return col, lam
        lam = lam.refine_once()
    raise PrecisionExhaustedError("eigenvector refinement did not converge")


def _normalize_enclosure_vector(vec: list[Enclosure]) -> tuple:
    """Divide by the entry of largest magnitude.

    The pivot index is certified by refinement where possible; on exact
    ties the smallest index wins.  Dividing by the pivot makes that entry
    +1 regardless of its sign.
    """
    mags = [abs(e) for e in vec]
    candidates = list(range(len(vec)))
    for _ in range(48):
        floor = max(m.lo for m in mags)
        candidates = [i for i in range(len(vec)) if mags[i].hi >= floor]
        if len(candidates) == 1:
            break
        if all(mags[i].width == 0 for i in candidates):
            break
        mags = [m.refine_once() for m in mags]
    pivot = vec[candidates[0]]
    return tuple(e / pivot for e in vec)


def _second_modulus_bounds(char_coeffs_low: tuple, real_roots: list[Enclosure], lead: Enclosure):
    """Enclosure of the second-largest eigenvalue modulus.

    Real roots other than the leading one contribute exactly; after
    deflating all real roots, an even-degree remainder holds the complex
    pairs: degree 2 gives the modulus as sqrt of the constant term, higher
    degrees fall back to a Cauchy bound.
    """
    lo = Fraction(0)
    hi = Fraction(0)
    for r in real_roots[:-1]:
        m = abs(as_enclosure(r))
        lo = max(lo, m.lo)
        hi = max(hi, m.hi)

    quotient = list(reversed(char_coeffs_low))
    for r in real_roots:
        rr = r.refined(Fraction(1, 2**40)) if r.width else r
        quotient = _synthetic_deflation_iv(quotient, rr)
    # quotient now holds interval coefficients (lo, hi) of the complex part
    deg = len(quotient) - 1
    if deg >= 2:
        if deg == 2:
            c0lo, c0hi = quotient[-1]
            root = sqrt_enclosure(Enclosure(max(c0lo, 0), max(c0hi, 0)))
            lo = max(lo, root.lo)
            hi = max(hi, root.hi)
        else:
            bound = 1 + max(max(abs(a), abs(b)) for a, b in quotient[1:])
            hi = max(hi, Fraction(bound))
    return lo, hi


def _synthetic_deflation_iv(coeffs_desc, root: Enclosure):
    """Interval synthetic division of descending (lo, hi) coefficients."""
    pairs = [c if isinstance(c, tuple) else (Fraction(c), Fraction(c)) for c in coeffs_desc]
    acc = pairs[0]
    out = [acc]
    riv = (root.lo, root.hi)
    for c in pairs[1:-1]:
        ps = (acc[0] * riv[0], acc[0] * riv[1], acc[1] * riv[0], acc[1] * riv[1])
        acc = (min(ps) + c[0], max(ps) + c[1])
        out.append(acc)
    return out


def pf_data(M: Matrix) -> PFData:
    """Certified Perron-Frobenius data for M.

    Accepts a primitive nonnegative matrix, or any rational 2x2 matrix
    with |trace| > 2 and determinant +-1 (hyperbolic fast path).
    """
    if _hyperbolic_fast_path_applies(M):
        k = None
        if M.is_nonnegative():
            k = primitivity(M)
        return _fast_path(M, k)

    if not _is_rational_matrix(M):
        raise DomainError("general path needs rational entries")
    if not M.is_nonnegative():
        raise HypothesisViolationError(
            "matrix is neither nonnegative nor a hyperbolic 2x2"
        )
    k = primitivity(M)
    if k is None:
        raise HypothesisViolationError("matrix is not primitive")

    coeffs, adj_terms = char_poly_adjugate(M)
    roots = isolate_real_roots(coeffs)
    lead = _leading_root(roots, coeffs)

    right_raw, lead = _eigvec_from_adjugate(adj_terms, lead, M.dim, rows=False)
    left_raw, lead = _eigvec_from_adjugate(adj_terms, lead, M.dim, rows=True)
    right = _normalize_enclosure_vector(right_raw)
    left = _normalize_enclosure_vector(left_raw)

    lo, hi = _second_modulus_bounds(coeffs, roots, lead)
    gap_lo = lo / lead.hi if lead.hi else Fraction(0)
    gap_hi = hi / lead.lo
    # primitivity certifies strict spectral domination, so the true gap < 1
    gap = Enclosure(min(gap_lo, Fraction(1)), min(gap_hi, Fraction(1)))

    lam = lead if lead.width else Enclosure.exact(lead.lo)
    exact = lead.width == 0
    if exact:
        # rational eigenvalue: adjugate evaluation was exact too
        right = tuple(Fraction(e.lo) if isinstance(e, Enclosure) and e.width == 0 else e for e in right)
        left = tuple(Fraction(e.lo) if isinstance(e, Enclosure) and e.width == 0 else e for e in left)
    return PFData(
        matrix=M,
        lam=lam,
        right=right,
        left=left,
        gap=gap,
        primitivity_exponent=k,
        exact=exact,
    )


def dot(u, v):
    acc = None
    for a, b in zip(u, v):
        term = a * b
        acc = term if acc is None else acc + term
    return acc


def projection_coeff(M: Matrix, u: tuple, data: PFData | None = None):
    """Coefficient of the leading eigendirection in lam^-n M^n u.

    Equals <left, u> / <left, right>; exact in the 2x2 fast path.
    """
    pf = data if data is not None else pf_data(M)
    num = dot(pf.left, u)
    den = dot(pf.left, pf.right)
    if isinstance(num, Enclosure) or isinstance(den, Enclosure):
        return as_enclosure(num) / as_enclosure(den)
    return num / den
