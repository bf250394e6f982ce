"""Twist-family representations and stretch factors."""

from fractions import Fraction

import pytest

from crossratio_lab.errors import (
    DomainError,
    HypothesisViolationError,
    NotFillingError,
)
from crossratio_lab.exactnum import Enclosure, QuadExt
from crossratio_lab.linalg import Matrix
from crossratio_lab.thurstonveech import (
    CurveSystem,
    build_rep,
    tv_class,
    tv_stretch,
    tv_word_matrix,
)
from crossratio_lab.torus import fixed_foliations


def test_single_curve_pair_recovers_torus_generators():
    cs = CurveSystem([[1]])
    assert cs.mu == 1
    t_a, t_b = build_rep(cs)
    assert t_a == Matrix([[1, 1], [0, 1]])
    assert t_b == Matrix([[1, 0], [-1, 1]])


def test_two_by_two_system():
    cs = CurveSystem([[1, 1], [1, 1]])
    assert cs.mu == 4
    m = tv_word_matrix(cs, "A B^-1")
    assert m == Matrix([[5, 2], [2, 1]])
    assert tv_stretch(cs, "A B^-1") == QuadExt(3, 2, 2)


def test_doubled_single_curve():
    cs = CurveSystem([[2]])
    assert cs.mu == 4
    t_a, _ = build_rep(cs)
    assert t_a == Matrix([[1, 2], [0, 1]])


def test_stretch_examples():
    cs = CurveSystem([[1, 1], [1, 1]])
    # [[1,2],[0,1]]^2 [[1,0],[2,1]] = [[9,4],[2,1]], trace 10
    assert tv_word_matrix(cs, "A^2 B^-1") == Matrix([[9, 4], [2, 1]])
    assert tv_stretch(cs, "A^2 B^-1") == QuadExt(5, 2, 6)
    # power law, exactly
    assert tv_stretch(cs, "A B^-1 A B^-1") == QuadExt(3, 2, 2) ** 2


def test_irrational_root_of_rational_mu():
    cs = CurveSystem([[1, 1]])  # N N^T = [2], mu = 2, sqrt(mu) = sqrt2
    assert cs.mu == 2
    m = tv_word_matrix(cs, "A B^-1")
    assert m.trace() == QuadExt(4)
    assert tv_stretch(cs, "A B^-1") == QuadExt(2, 1, 3)
    assert tv_stretch(cs, "A^2 B^-1") == QuadExt(3, 2, 2)
    with pytest.raises(DomainError):
        tv_class(cs, "A B^-1")  # foliations would leave the quadratic field


def test_sign_convention_enforced():
    cs = CurveSystem([[1, 1], [1, 1]])
    with pytest.raises(HypothesisViolationError):
        tv_stretch(cs, "A B")
    with pytest.raises(HypothesisViolationError):
        tv_stretch(cs, "A^-1 B^-1")
    with pytest.raises(HypothesisViolationError):
        tv_stretch(cs, "A A")
    # arbitrary words still evaluate, just without any classification claim
    assert tv_word_matrix(cs, "A B").det() == 1


def test_filling_validation():
    with pytest.raises(NotFillingError):
        CurveSystem([[1, 0], [1, 0]])  # zero column
    with pytest.raises(NotFillingError):
        CurveSystem([[0, 0], [1, 1]])  # zero row
    with pytest.raises(DomainError):
        CurveSystem([[1, -1], [1, 1]])


def test_spectra_of_both_gram_matrices_agree():
    for rows in ([[1, 1], [1, 1]], [[1, 2], [2, 1]], [[1, 1, 0], [0, 1, 1]]):
        cs = CurveSystem(rows)
        a, b = cs.mu, cs.mu_transposed
        ea = a if isinstance(a, Enclosure) else Enclosure.exact(a)
        eb = b if isinstance(b, Enclosure) else Enclosure.exact(b)
        ea = ea.refined(Fraction(1, 10**9)) if ea.width else ea
        eb = eb.refined(Fraction(1, 10**9)) if eb.width else eb
        assert ea.lo <= eb.hi and eb.lo <= ea.hi  # enclosures overlap


def test_tv_class_routes_into_torus_machinery():
    cs = CurveSystem([[1, 1], [1, 1]])
    g = tv_class(cs, "A B^-1")
    plus, minus, lam = fixed_foliations(g)
    assert lam == QuadExt(3, 2, 2)
    assert g.chart == "twist-family(mu=4)"
    assert g.matrix.apply(plus.weights) == tuple(lam * w for w in plus.weights)


def test_irrational_mu_is_refused_exactly():
    # N = [[1,1],[0,1]] has N N^T = [[2,1],[1,1]], mu = (3+sqrt5)/2 irrational
    cs = CurveSystem([[1, 1], [0, 1]])
    assert isinstance(cs.mu, Enclosure)
    with pytest.raises(DomainError):
        build_rep(cs)
