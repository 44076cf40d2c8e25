import pytest
import sympy

from cjt.errors import NonConstantModuleError, NonIntegralClassError, ResourceLimitError
from cjt.jordan import ConstancyVerdict
from cjt.modrep import builtin_module
from cjt.sheafk import (
    HilbertData,
    K0Vector,
    chart_class,
    d_symbol,
    euler_identities,
    graded_pieces,
    hilbert_polynomial,
    k0_class,
    k0_family,
    k0_restrict,
    line_bundle_class,
    sE_chart,
    splitting_type_p1,
)
from cjt.theta import theta_chart


@pytest.fixture
def klein4_regular_chart(klein4_lattice):
    L = klein4_lattice
    return sE_chart(builtin_module(L.G, 2, "regular"), L.member(L.maximals[0]), 1)


def test_line_bundle_classes():
    assert line_bundle_class(2, 0) == K0Vector(2, (1, 0))
    # O(2) = 2 O(1) - O and O(-1) = 2 O - O(1) on the projective line
    assert line_bundle_class(2, 2) == K0Vector(2, (-1, 2))
    assert line_bundle_class(2, -1) == K0Vector(2, (2, -1))
    assert line_bundle_class(3, 3) == K0Vector(3, (1, -3, 3))
    assert line_bundle_class(1, 5) == K0Vector(1, (1,))


def test_k0_arithmetic():
    O1 = line_bundle_class(2, 1)
    assert O1 * O1 == line_bundle_class(2, 2)
    assert line_bundle_class(2, 0).twist(1) == O1
    v = K0Vector(2, (3, -1))
    assert v.rank == 2
    assert v.degree == -1
    assert sympy.expand(v.hilbert_polynomial() - (2 * d_symbol + 1)) == 0
    assert k0_restrict(v, 1) == K0Vector(1, (2,))
    assert -v + v == K0Vector(2, (0, 0))
    with pytest.raises(ValueError):
        v + K0Vector(3, (1, 0, 0))
    with pytest.raises(ValueError):
        k0_restrict(v, 3)


def test_kernel_of_regular_klein4(klein4_regular_chart):
    T = graded_pieces(klein4_regular_chart, "ker")
    assert T.dims[:5] == [1, 3, 5, 7, 9]
    assert T.generator_degrees == [0, 1]
    H = hilbert_polynomial(T)
    assert H.stabilization == 0
    assert H.rank == 2
    assert H(4) == 9
    assert k0_class(H) == K0Vector(2, (3, -1))
    # O + O(-1)
    assert splitting_type_p1(T) == [0, -1]


def test_euler_identities(klein4_regular_chart):
    result = euler_identities(klein4_regular_chart)
    assert result["ker_plus_im"]
    assert result["im_plus_coker"]
    assert result["classes"]["im"] == K0Vector(2, (1, 1))
    assert result["classes"]["coker"] == K0Vector(2, (-1, 3))


def test_radical_quotient_kernel_is_trivial(z3_squared_lattice):
    L = z3_squared_lattice
    M = builtin_module(L.G, 3, "radical:2")
    assert M.dim == 3
    chart = sE_chart(M, L.member(L.maximals[0]), 1)
    v, H, T = chart_class(chart, "ker")
    assert v == K0Vector(2, (2, 0))
    assert splitting_type_p1(T) == [0, 0]


def test_basis_independence(klein4_lattice):
    L = klein4_lattice
    M = builtin_module(L.G, 2, "regular")
    E = L.member(L.maximals[0])
    classes = {chart_class(sE_chart(M, E, 1, basis=basis), "ker")[0] for basis in [(1, 2), (3, 2), (2, 1)]}
    assert classes == {K0Vector(2, (3, -1))}


def test_family_over_klein4(klein4_lattice):
    M = builtin_module(klein4_lattice.G, 2, "regular")
    family = k0_family(klein4_lattice, M, 1)
    assert family.vectors == {1: K0Vector(2, (3, -1))}
    assert family.compatibility == []
    assert family.compatible
    assert family.to_json()["vectors"] == {"1": [3, -1]}


@pytest.mark.slow
def test_family_compares_on_intersections(heisenberg3_lattice):
    L = heisenberg3_lattice
    M = builtin_module(L.G, 3, "regular")
    verdict = ConstancyVerdict("constant", "exact", 1, 18)
    family = k0_family(L, M, 1, verdict=verdict, degree_bound=6)
    assert len(family.compatibility) == 6
    assert family.compatible
    assert {v.rank for v in family.vectors.values()} == {9}


def test_family_needs_constant_rank(klein4_lattice):
    M = builtin_module(klein4_lattice.G, 2, "cyclic:1")
    with pytest.raises(NonConstantModuleError):
        k0_family(klein4_lattice, M, 1)


def test_table_errors(klein4_lattice, klein4_regular_chart):
    with pytest.raises(ValueError):
        graded_pieces(klein4_regular_chart, "torsion")
    with pytest.raises(ResourceLimitError):
        graded_pieces(klein4_regular_chart, "ker", degree_bound=10, cap=5)
    with pytest.raises(ValueError):
        splitting_type_p1(graded_pieces(klein4_regular_chart, "im"))
    L = klein4_lattice
    full = theta_chart(builtin_module(L.G, 2, "regular"), L.member(L.maximals[0]))
    with pytest.raises(ValueError):
        splitting_type_p1(graded_pieces(full, "ker"))


def test_non_integral_class():
    H = HilbertData([0], 0, d_symbol / 2, 2, (sympy.Rational(-1, 2), sympy.Rational(1, 2)))
    with pytest.raises(NonIntegralClassError):
        k0_class(H)
