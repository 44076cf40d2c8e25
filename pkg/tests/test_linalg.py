import pytest

from cjt.errors import ResourceLimitError
from utils.ffield import get_field
from utils.linalg import count_minors, generic_rank, minor, minors
from utils.polynomial import PolyMatrix, PolyRing


@pytest.fixture
def ring():
    return PolyRing(3, ["x", "y", "z"])


def test_generic_rank_small(ring):
    x, y, z = ring.gens()
    assert generic_rank(PolyMatrix(ring, [[x, y], [y, x]])) == 2
    assert generic_rank(PolyMatrix(ring, [[x, y], [2 * x, 2 * y]])) == 1
    assert generic_rank(PolyMatrix.zeros(ring, 3, 2)) == 0
    # det = -(x + y + z)^3 in characteristic 3
    M = PolyMatrix(ring, [[x, y, z], [y, z, x], [z, x, y]])
    assert generic_rank(M) == 3


def test_generic_rank_bounds_point_ranks(ring, rng):
    x, y, z = ring.gens()
    M = PolyMatrix(ring, [[x, y, ring.zero()], [ring.zero(), x, y], [y, ring.zero(), x]])
    g = generic_rank(M)
    F = get_field(3, 3)
    ranks = [F.rank(M.evaluate(F, F.random_elements(rng, 3))) for _ in range(30)]
    assert max(ranks) == g
    assert all(r <= g for r in ranks)


def test_minors_of_2x3(ring):
    x, y, z = ring.gens()
    M = PolyMatrix(ring, [[x, y, z], [y, z, x]])
    found = set(minors(M, 2))
    assert found == {x * z - y * y, x * x - z * y, y * x - z * z}
    assert minors(M, 0) == [ring.one()]
    assert minors(M, 3) == []


def test_minor_cap(ring):
    M = PolyMatrix.zeros(ring, 9, 9)
    assert count_minors(M, 6) == 84 * 84
    with pytest.raises(ResourceLimitError) as info:
        minors(M, 6)
    assert info.value.limit == "max_minors"
    with pytest.raises(ResourceLimitError):
        minors(M, 6, max_minors=100)
    assert minors(M, 6, max_minors=10_000) == []


def test_single_minor(ring):
    x, y, z = ring.gens()
    M = PolyMatrix(ring, [[x, y, z], [y, z, x], [z, x, y]])
    # -(x + y + z)^3 in characteristic 3
    assert minor(M, (0, 1, 2), (0, 1, 2)) == -(x ** 3 + y ** 3 + z ** 3)
    assert minor(M, (0, 2), (1, 2)) == y * y - z * x
    assert minor(M, (), ()) == 1
    assert count_minors(M, 2) == 9
    with pytest.raises(ValueError):
        minor(M, (0, 1), (0,))


def test_bareiss_term_cap(ring):
    x, y, z = ring.gens()
    M = PolyMatrix(ring, [[x + y + z, y], [z, x + y]])
    with pytest.raises(ResourceLimitError):
        generic_rank(M, max_terms=1)
    assert generic_rank(M) == 2
