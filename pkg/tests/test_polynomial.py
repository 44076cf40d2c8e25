import numpy as np
import pytest
from sympy.polys.orderings import grevlex
from sympy.polys.polyerrors import ExactQuotientFailed

from utils.ffield import get_field
from utils.polynomial import PolyMatrix, PolyRing, int_terms, is_homogeneous, total_degree


@pytest.fixture
def ring():
    return PolyRing(3, ["x", "y", "z"])


def test_elements_live_in_a_grevlex_ring_over_gf_p(ring):
    x, _, _ = ring.gens()
    assert x.ring is ring.base
    assert ring.base.order == grevlex
    assert ring.base.domain.mod == 3
    assert PolyRing(3, ("x", "y", "z")).base is ring.base
    with pytest.raises(ValueError):
        PolyRing(3, ["x", "x"])


def test_grevlex_order():
    # x^2 > xy > y^2 > xz > yz > z^2, total degree first
    monos = PolyRing(3, ["x", "y", "z"]).monomials(2)
    assert monos[0] == (2, 0, 0)
    assert monos.index((0, 2, 0)) < monos.index((1, 0, 1))
    assert grevlex((0, 0, 2)) > grevlex((1, 0, 0))
    assert len(monos) == 6


def test_arithmetic_mod_p(ring):
    x, y, z = ring.gens()
    f = (x + y) ** 3
    assert f == x ** 3 + y ** 3
    assert (x + 2 * y) - (x - y) == 0
    assert total_degree(x * y) == 2
    assert total_degree(ring.zero()) == -1
    assert int((x + 1).const()) == 1
    assert ring.constant(-1) == ring.constant(2)
    assert sorted(int_terms(2 * x - y)) == [((0, 1, 0), 2), ((1, 0, 0), 2)]


def test_homogeneity(ring):
    x, y, z = ring.gens()
    assert is_homogeneous(x * y + z * z)
    assert is_homogeneous(x * y + z * z, 2)
    assert not is_homogeneous(x * y + z, None)
    assert not is_homogeneous(x, 2)
    assert is_homogeneous(ring.zero(), 5)


def test_exact_division(ring):
    x, y, z = ring.gens()
    f = (x + y) * (x - z) * z
    assert f.exquo(x + y) == (x - z) * z
    with pytest.raises(ExactQuotientFailed):
        (x * y + 1).exquo(x)


def test_leading_term_and_monic(ring):
    x, y, z = ring.gens()
    f = 2 * x * z + y * y
    assert f.LM == (0, 2, 0)
    assert int(f.LC) == 1
    assert (2 * y).monic() == y


def test_relabel_and_linear_forms(ring):
    x, y, z = ring.gens()
    target = PolyRing(3, ["u", "v"])
    u, v = target.gens()
    assert ring.relabel(x * y + z, [0, 1, None], target) == u * v
    assert ring.relabel(x * y + z * z, [1, 0, 0], target) == u * v + u * u
    assert ring.linear_form([1, 0, 2]) == x + 2 * z
    assert ring.linear_form([3, 0, 0]) == 0
    assert ring.index("z") == 2


def test_frobenius(ring):
    x, y, _ = ring.gens()
    assert ring.frobenius(x + 2 * y) == x ** 3 + 2 * y ** 3
    assert (x + y) ** 3 == ring.frobenius(x + y)
    assert ring.frobenius(x, 2) == x ** 9


def test_evaluate_over_extension(ring):
    F = get_field(3, 2)
    x, y, z = ring.gens()
    f = x * y + z
    point = [4, 5, 7]
    assert ring.evaluate(f, F, point) == F.add(F.mul(4, 5), 7)


def test_coefficient_vector_follows_monomial_basis(ring):
    x, y, z = ring.gens()
    vec = ring.coefficient_vector(2 * x * x + z * z + x, 2)
    assert vec.tolist() == [2, 0, 0, 0, 0, 1]
    assert ring.monomial_index(2)[(0, 2, 0)] == 2


def test_matrix_product_matches_entrywise():
    ring = PolyRing(2, ["a", "b"])
    a, b = ring.gens()
    A = PolyMatrix(ring, [[a, b], [ring.zero(), a]])
    B = PolyMatrix(ring, [[b, ring.one()], [a, b]])
    C = A @ B
    assert C[0, 0] == a * b + b * a
    assert C[0, 1] == a + b * b
    assert C[1, 0] == a * a
    assert C[1, 1] == a * b


def test_linear_combination_is_homogeneous():
    ring = PolyRing(5, ["s", "t"])
    mats = np.array([[[0, 1], [0, 0]], [[0, 0], [1, 0]]])
    M = PolyMatrix.linear_combination(ring, mats)
    assert M.degree == 1
    s, t = ring.gens()
    assert M[0, 1] == s and M[1, 0] == t
    assert M.power(2).degree == 2
    assert (M @ M)[0, 0] == s * t


def test_degree_map_dimensions():
    ring = PolyRing(2, ["a", "b"])
    a, b = ring.gens()
    M = PolyMatrix(ring, [[a, b]], degree=1)
    D = M.degree_map(1, 1)
    # S_1^2 -> S_2^1
    assert D.shape == (3, 4)
    # rank 3: the map (f, g) -> a f + b g is onto S_2
    assert np.linalg.matrix_rank(D) == 3


def test_matrix_evaluate_and_frobenius():
    F = get_field(2, 2)
    ring = PolyRing(2, ["a", "b"])
    a, b = ring.gens()
    M = PolyMatrix(ring, [[a, b], [b, a]], degree=1)
    val = M.evaluate(F, [2, 3])
    assert val.tolist() == [[2, 3], [3, 2]]
    twisted = M.frobenius(1)
    assert twisted.degree == 2
    assert np.array_equal(twisted.evaluate(F, [2, 3]), M.evaluate(F, [F.frobenius(2), F.frobenius(3)]))


def test_homogeneous_degree_is_enforced():
    ring = PolyRing(2, ["a", "b"])
    a, _ = ring.gens()
    with pytest.raises(ValueError):
        PolyMatrix(ring, [[a + 1]], degree=1)


def test_json_is_sorted():
    ring = PolyRing(3, ["x", "y", "z"])
    x, y, z = ring.gens()
    f = ring.from_terms({(0, 0, 1): 2, (1, 1, 0): 1, (2, 0, 0): 3})
    assert ring.to_json(f) == [[[1, 1, 0], 1], [[0, 0, 1], 2]]
    assert f == 2 * z + x * y
    M = PolyMatrix(ring, [[f, ring.zero()]])
    assert M.to_json() == [[[[[1, 1, 0], 1], [[0, 0, 1], 2]], []]]
