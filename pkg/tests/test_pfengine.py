"""Perron-Frobenius engine: primitivity, eigendata, projections."""

import math
from fractions import Fraction

import numpy as np
import pytest

from crossratio_lab.errors import DomainError, HypothesisViolationError
from crossratio_lab.exactnum import Enclosure, QuadExt, as_enclosure, certified_sign
from crossratio_lab.linalg import Matrix
from crossratio_lab.pfengine import (
    PFData,
    dot,
    pf_data,
    primitivity,
    projection_coeff,
    wielandt_bound,
)


def _brute_primitivity(rows, bound):
    """Independent oracle: literally multiply integer matrices."""
    import numpy

    m = numpy.array(rows, dtype=object)
    p = m.copy()
    for k in range(1, bound + 1):
        if (p > 0).all():
            return k
        p = p @ m
    return None


@pytest.mark.parametrize(
    "rows",
    [
        [[1, 1], [1, 0]],
        [[0, 1], [1, 1]],
        [[2, 1], [1, 1]],
        [[0, 1, 0], [0, 0, 1], [1, 1, 0]],
        [[1, 1, 0], [0, 1, 1], [1, 0, 1]],
        [[0, 1], [1, 0]],
        [[1, 0], [0, 1]],
    ],
)
def test_primitivity_matches_brute_force(rows):
    m = Matrix(rows)
    assert primitivity(m) == _brute_primitivity(rows, wielandt_bound(m.dim))


def test_primitivity_edge_cases():
    assert primitivity(Matrix([[3, 1], [2, 5]])) == 1  # strictly positive
    assert primitivity(Matrix.identity(2)) is None  # permutation-reducible
    with pytest.raises(DomainError):
        primitivity(Matrix([[1, -1], [1, 1]]))


def test_pf_data_golden_matrix_exact():
    data = pf_data(Matrix([[2, 1], [1, 1]]))
    assert data.exact
    assert data.lam == QuadExt(Fraction(3, 2), Fraction(1, 2), 5)
    # symmetric, so right and left agree; largest entry normalised to 1
    expected = (QuadExt(1), QuadExt(Fraction(-1, 2), Fraction(1, 2), 5))
    assert data.right == expected
    assert data.left == expected
    gap = data.gap.refined(Fraction(1, 10**12))
    assert abs(float(gap.midpoint) - 0.14589803375031546) < 1e-10


def test_pf_data_doubly_stochastic_times_two():
    data = pf_data(Matrix([[1, 1], [1, 1]]))
    assert data.lam_enclosure().width == 0
    assert data.lam_enclosure().lo == 2
    assert data.right == (Fraction(1), Fraction(1))
    assert data.left == (Fraction(1), Fraction(1))
    assert data.gap.lo == 0 and data.gap.hi == 0


def test_pf_data_trace_38():
    data = pf_data(Matrix([[19, 30], [12, 19]]))
    assert data.lam == QuadExt(19, 6, 10)


def test_pf_data_negative_trace_uses_sign_quotient():
    data = pf_data(Matrix([[-2, -1], [-1, -1]]))
    assert data.lam == QuadExt(Fraction(3, 2), Fraction(1, 2), 5)


def test_pf_data_rejects_non_primitive():
    with pytest.raises(HypothesisViolationError):
        pf_data(Matrix([[1, 1], [0, 1]]))  # parabolic, reducible
    with pytest.raises(HypothesisViolationError):
        pf_data(Matrix.identity(3))


def test_pf_data_dim3_certified_against_numpy():
    rows = [[0, 1, 0], [0, 0, 1], [1, 1, 0]]
    data = pf_data(Matrix(rows))
    w = np.linalg.eigvals(np.array(rows, dtype=float))
    lam_ref = max(w.real)
    lam = data.lam_enclosure().refined(Fraction(1, 10**10))
    assert lam.lo <= Fraction(lam_ref).limit_denominator(10**9) <= lam.hi or abs(
        float(lam.midpoint) - lam_ref
    ) < 1e-9
    # gap: second modulus over lam
    mods = sorted(abs(w))
    gap_ref = mods[-2] / mods[-1]
    assert data.gap.lo - Fraction(1, 10**6) <= Fraction(gap_ref).limit_denominator(10**9) <= data.gap.hi + Fraction(1, 10**6)
    assert data.gap.hi < 1


def test_pf_residual_certification_dim3():
    rows = [[0, 1, 0], [0, 0, 1], [1, 1, 0]]
    m = Matrix(rows)
    data = pf_data(m)
    lam = data.lam_enclosure()
    for i in range(3):
        mv = sum(as_enclosure(m.rows[i][j]) * data.right[j] for j in range(3))
        resid = (mv - lam * data.right[i]).refined(Fraction(1, 10**9))
        assert resid.lo <= 0 <= resid.hi
    mt = m.transpose()
    for i in range(3):
        mv = sum(as_enclosure(mt.rows[i][j]) * data.left[j] for j in range(3))
        resid = (mv - lam * data.left[i]).refined(Fraction(1, 10**9))
        assert resid.lo <= 0 <= resid.hi


def test_pf_residual_exact_dim2():
    m = Matrix([[2, 1], [1, 1]])
    data = pf_data(m)
    mv = m.apply(data.right)
    assert all(a == data.lam * b for a, b in zip(mv, data.right))
    mtv = m.transpose().apply(data.left)
    assert all(a == data.lam * b for a, b in zip(mtv, data.left))


def test_projection_coeff_examples():
    m = Matrix([[2, 1], [1, 1]])
    data = pf_data(m)
    coeff = projection_coeff(m, (Fraction(1), Fraction(0)), data)
    # normalisation-free check: coeff * right equals the known limit vector
    # (5+sqrt5)/20 * (2, sqrt5 - 1), the value the iterates converge to
    reference_coeff = QuadExt(Fraction(1, 4), Fraction(1, 20), 5)
    reference = (reference_coeff * 2, reference_coeff * QuadExt(-1, 1, 5))
    assert tuple(coeff * r for r in data.right) == reference
    assert abs(float(reference[0]) - 0.7236067977499790) < 1e-12
    assert projection_coeff(m, data.right, data) == QuadExt(1)
    # eigenvector of the small eigenvalue: (1, -(1+sqrt5)/2) direction
    small = (QuadExt(1), QuadExt(Fraction(-1, 2), Fraction(-1, 2), 5))
    assert projection_coeff(m, small, data) == QuadExt(0)


def test_convergence_rate_bounded_by_gap():
    m = Matrix([[2, 1], [1, 1]])
    data = pf_data(m)
    lam = data.lam
    gap = QuadExt(Fraction(7, 2), Fraction(-3, 2), 5)  # lam^-2 exactly
    u = (Fraction(2), Fraction(3))
    coeff = projection_coeff(m, u, data)
    # K measured at n = 1
    def deviation(n):
        vec = m**n
        scaled = tuple(QuadExt(x) / lam**n for x in vec.apply(u))
        return max(abs(a - coeff * b) for a, b in zip(scaled, data.right))

    K = deviation(1) / gap
    for n in range(1, 21):
        assert deviation(n) <= K * gap**n


def test_power_consistency_exact_dim2():
    m = Matrix([[2, 1], [1, 1]])
    lam = pf_data(m).lam
    for k in (2, 3, 5):
        assert pf_data(m**k).lam == lam**k


def test_pf_data_requires_rational_entries_on_general_path():
    s2 = QuadExt(0, 1, 2)
    with pytest.raises(DomainError):
        pf_data(Matrix([[s2, s2], [s2, s2]]))
