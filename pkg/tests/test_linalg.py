"""Matrices, words, characteristic polynomials, tensor systems."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from crossratio_lab.errors import DomainError
from crossratio_lab.exactnum import QuadExt
from crossratio_lab.linalg import (
    LinearForm,
    Matrix,
    cayley_hamilton_residual,
    char_poly,
    char_poly_adjugate,
    kron_matrix,
    parse_word,
    tensor,
    word_eval,
    word_inverse,
    word_str,
)

R = Matrix([[1, 1], [0, 1]])
L = Matrix([[1, 0], [1, 1]])
GENS = {"R": R, "L": L}


def _naive_product(word, gens):
    out = Matrix.identity(2)
    for name, exp in word:
        m = gens[name]
        if exp < 0:
            m = m.inverse()
        for _ in range(abs(exp)):
            out = out @ m
    return out


def test_word_eval_basic():
    assert word_eval("R L", GENS) == Matrix([[2, 1], [1, 1]])
    assert word_eval((), GENS) == Matrix.identity(2)
    assert word_eval("R R^-1", GENS) == Matrix.identity(2)


def test_word_parsing_forms():
    w = parse_word("RL^2 R^-1", {"R", "L"})
    assert w == (("R", 1), ("L", 2), ("R", -1))
    assert parse_word("R⁻¹", {"R"}) == (("R", -1),)
    assert parse_word("R R⁻¹", {"R"}) == ()
    assert word_str(w) == "R L^2 R^-1"
    with pytest.raises(DomainError):
        parse_word("X", {"R", "L"})


def test_word_eval_matches_naive_product():
    rng = random.Random(7)
    letters = [("R", 1), ("R", -1), ("L", 1), ("L", -2)]
    for _ in range(25):
        word = tuple(rng.choice(letters) for _ in range(rng.randint(0, 6)))
        assert word_eval(word, GENS) == _naive_product(word, GENS)


def test_word_inverse_gives_matrix_inverse():
    w = parse_word("R L L R^-1", {"R", "L"})
    assert word_eval(w, GENS) @ word_eval(word_inverse(w), GENS) == Matrix.identity(2)


def test_char_poly_examples():
    assert char_poly(Matrix([[2, 1], [1, 1]])) == (Fraction(1), Fraction(-3), Fraction(1))
    assert char_poly(Matrix.identity(3)) == (Fraction(-1), Fraction(3), Fraction(-3), Fraction(1))
    assert char_poly(Matrix([[0, 0], [0, 0]])) == (Fraction(0), Fraction(0), Fraction(1))


def test_char_poly_trace_det_oracle():
    rng = random.Random(3)
    for _ in range(20):
        m = Matrix([[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)])
        c0, c1, c2 = char_poly(m)
        assert c2 == 1
        assert c1 == -m.trace()
        assert c0 == m.det()


@settings(max_examples=30, deadline=None)
@given(
    st.integers(min_value=1, max_value=6).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(min_value=-4, max_value=4), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    )
)
def test_cayley_hamilton_zero_matrix(rows):
    m = Matrix(rows)
    residual = cayley_hamilton_residual(m)
    zero = Matrix.identity(m.dim).scale(Fraction(0))
    assert residual == zero


def test_char_poly_over_quadratic_field():
    s2 = QuadExt(0, 1, 2)
    m = Matrix([[QuadExt(1), s2], [s2, QuadExt(1)]])
    # trace 2, det 1 - 2 = -1
    assert char_poly(m) == (QuadExt(-1), QuadExt(-2), QuadExt(1))
    assert cayley_hamilton_residual(m) == Matrix.identity(2).scale(Fraction(0))


def test_adjugate_columns_are_eigenvectors():
    m = Matrix([[2, 1], [1, 1]])
    coeffs, terms = char_poly_adjugate(m)
    lam = QuadExt(Fraction(3, 2), Fraction(1, 2), 5)
    # adj(lam I - M) columns satisfy (M - lam) v = 0
    adj = terms[0].scale(lam) + terms[1]
    for j in range(2):
        col = tuple(adj.rows[i][j] for i in range(2))
        mv = m.apply(col)
        assert all(a == lam * b for a, b in zip(mv, col))


def test_det_of_word_is_product_of_generator_dets():
    rng = random.Random(11)
    gens = {"A": Matrix([[1, 2], [1, 3]]), "B": Matrix([[0, 1], [1, 4]])}
    dets = {"A": gens["A"].det(), "B": gens["B"].det()}
    letters = [("A", 1), ("A", -1), ("B", 1), ("B", -1)]
    for _ in range(15):
        word = tuple(rng.choice(letters) for _ in range(rng.randint(1, 5)))
        expected = Fraction(1)
        for name, exp in word:
            expected *= dets[name] ** exp
        assert word_eval(word, gens).det() == expected


def test_inverse_and_singularity():
    m = Matrix([[2, 1], [1, 1]])
    assert m @ m.inverse() == Matrix.identity(2)
    with pytest.raises(DomainError):
        Matrix([[1, 1], [1, 1]]).inverse()


def test_linear_form_is_linear():
    f = LinearForm((Fraction(2), Fraction(-1), Fraction(3)))
    u = (Fraction(1), Fraction(2), Fraction(0))
    w = (Fraction(-1), Fraction(1), Fraction(5))
    a, b = Fraction(3, 2), Fraction(-2, 7)
    lhs = f(tuple(a * x + b * y for x, y in zip(u, w)))
    assert lhs == a * f(u) + b * f(w)


# -- tensor systems -------------------------------------------------------------


def test_tensor_single_factor_is_identity_construction():
    A = Matrix([[2, 1], [1, 1]])
    f = LinearForm((1, 2))
    v = (3, 4)
    sys1 = tensor([A], [f], [v])
    assert sys1.map == A
    assert sys1.form.coefficients == f.coefficients
    assert sys1.base_vector == (Fraction(3), Fraction(4))
    assert sys1.degree == 2


def test_tensor_dimension_law():
    A = Matrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    f = LinearForm((1, 0, 0))
    v = (1, 1, 1)
    sys2 = tensor([A, A], [f, f], [v, v])
    assert sys2.degree == 9
    assert len(sys2.char_coefficients) == 9


def test_tensor_rank_one_evaluation_identity():
    rng = random.Random(5)
    for _ in range(10):
        dims = [rng.randint(2, 3) for _ in range(rng.randint(1, 2))]
        maps, forms, vecs = [], [], []
        for n in dims:
            while True:
                m = Matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
                if m.det() != 0:
                    break
            maps.append(m)
            forms.append(LinearForm(tuple(rng.randint(-3, 3) for _ in range(n))))
            vecs.append(tuple(rng.randint(-3, 3) for _ in range(n)))
        system = tensor(maps, forms, vecs)
        for n in range(6):
            product = Fraction(1)
            for m, f, v in zip(maps, forms, vecs):
                product *= f((m**n).apply(v))
            assert system.form_values(n)[-1] == product


def test_tensor_recurrence_is_exact():
    A = Matrix([[2, 1], [1, 1]])
    f = LinearForm((1, 1))
    v = (1, 0)
    system = tensor([A, A], [f, f], [v, v])
    values = system.form_values(12)
    assert all(r == 0 for r in system.recurrence_residuals(values))


def test_tensor_rejects_singular_factor():
    with pytest.raises(DomainError):
        tensor([Matrix([[1, 1], [1, 1]])], [LinearForm((1, 0))], [(1, 0)])
    with pytest.raises(DomainError):
        tensor([Matrix([[1, 0], [0, 1]])], [LinearForm((1, 0, 0))], [(1, 0)])


def test_kron_matrix_against_index_formula():
    A = Matrix([[1, 2], [3, 4]])
    B = Matrix([[0, 1], [1, 1]])
    K = kron_matrix(A, B)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    assert K[2 * i + k, 2 * j + l] == A[i, j] * B[k, l]
