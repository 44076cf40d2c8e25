import numpy as np
import pytest

from conftest import exhaustive_elements
from utils.ffield import ExtensionField, FieldElem, PrimeField, defining_polynomial, get_field, is_prime


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 2), (5, 2)])
def test_inverse_correct_small_fields(p, d):
    F = get_field(p, d)
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p,d", [(2, 2), (3, 2)])
def test_distributivity(p, d):
    F = get_field(p, d)
    for a in exhaustive_elements(F):
        for b in exhaustive_elements(F):
            for c in exhaustive_elements(F):
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 2), (5, 2)])
def test_alpha_is_primitive(p, d):
    F = get_field(p, d)
    powers = {F.pow(p, k) for k in range(F.q - 1)}
    assert powers == set(range(1, F.q))


def test_defining_polynomial_is_monic():
    m = defining_polynomial(3, 2)
    assert len(m) == 3
    assert m[-1] == 1


@pytest.mark.parametrize("p,d", [(2, 3), (3, 2)])
def test_frobenius_is_additive_and_fixes_prime_field(p, d):
    F = get_field(p, d)
    for a in exhaustive_elements(F):
        for b in exhaustive_elements(F):
            assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    for a in range(p):
        assert F.frobenius(a) == a
    for a in exhaustive_elements(F):
        assert F.frobenius(a, d) == a


def test_field_elem_arithmetic():
    F = get_field(3, 2)
    a, b = FieldElem(F, 4), FieldElem(F, 7)
    assert int((a + b) - b) == 4
    assert int(a * a.inverse()) == 1
    assert int(a ** (F.q - 1)) == 1
    assert not FieldElem(F, 0)
    assert int(-a + a) == 0


def test_rejects_unsupported_fields():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        ExtensionField(2, 9)
    assert is_prime(31) and not is_prime(1) and not is_prime(49)


def test_rank_over_extension():
    F = get_field(2, 2)
    a = 2
    A = np.array([[1, a], [a, F.mul(a, a)]])
    assert F.rank(A) == 1
    B = np.array([[1, a], [a, 1]])
    # det = 1 - a^2 != 0
    assert F.rank(B) == 2
    assert F.rank(F.eye(3)) == 3


def test_matmul_and_power_agree():
    F = get_field(3, 2)
    rng = np.random.default_rng(1)
    A = F.random_elements(rng, (3, 3))
    assert np.array_equal(F.power(A, 3), F.matmul(A, F.matmul(A, A)))
    assert np.array_equal(F.matmul(A, F.eye(3)), A)


def test_combine_matches_scale_and_add():
    F = get_field(2, 3)
    mats = np.array([[[1, 0], [1, 1]], [[0, 1], [0, 0]]])
    c = np.array([5, 3])
    expected = F.madd(F.scale(5, mats[0]), F.scale(3, mats[1]))
    assert np.array_equal(F.combine(c, mats), expected)


def test_prime_field_nullspace_and_row_space():
    F = PrimeField(5)
    A = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    N = F.nullspace(A)
    assert N.shape == (1, 3)
    assert not ((A @ N.T) % 5).any()
    assert F.row_space(A).shape[0] == 2
    assert F.rank(A) == 2


def test_intersection_and_coordinates():
    F = PrimeField(3)
    A = np.array([[1, 0, 0], [0, 1, 0]])
    B = np.array([[0, 1, 0], [0, 0, 1]])
    I = F.intersection(A, B)
    assert I.tolist() == [[0, 1, 0]]
    assert F.coordinates(A, [2, 1, 0]).tolist() == [2, 1]
    with pytest.raises(ValueError):
        F.coordinates(A, [0, 0, 1])
    assert F.in_span(A, [1, 2, 0]) and not F.in_span(A, [0, 0, 1])
