import numpy as np
import pytest

from cjt.errors import InvariantViolation, LatticeError
from cjt.jordan import random_flat_point
from cjt.modrep import builtin_module, radical_action
from cjt.theta import (
    ThetaOperator,
    conjugate_point,
    fibration_homotopy,
    frobenius_twist,
    pi_point,
    project_pE,
    pullback_sE,
    restrict_family,
    section_path,
    section_sE,
    theta_chart,
    theta_family,
)
from utils.ffield import get_field


def test_chart_of_cyclic_quotient(klein4_lattice):
    L = klein4_lattice
    M = builtin_module(L.G, 2, "cyclic:1")
    E = L.member(L.maximals[0])
    theta = theta_chart(M, E)
    assert theta.ring.names == ("x_2", "x_1", "x_3")
    assert theta.degree == 1
    x2, x1, x3 = theta.ring.gens()
    # the first generator acts trivially, the other two act alike
    entries = {theta[i, j] for i in range(2) for j in range(2)} - {theta.ring.zero()}
    assert entries == {x2 + x3}


def test_family_is_p_nilpotent(klein4_lattice, heisenberg3_lattice):
    for L, spec in [(klein4_lattice, "regular"), (heisenberg3_lattice, "natural"), (heisenberg3_lattice, "sym:2")]:
        theta = theta_family(L, builtin_module(L.G, L.p, spec))
        assert theta.verify_p_nilpotent()


def test_charts_agree_on_intersections(heisenberg3_lattice):
    L = heisenberg3_lattice
    theta = theta_family(L, builtin_module(L.G, 3, "natural"))
    results = theta.check_compatibility()
    assert len(results) == 6
    assert all(agree for _, agree in results)


def test_mismatched_charts_are_rejected(heisenberg3_lattice):
    L = heisenberg3_lattice
    M = builtin_module(L.G, 3, "natural")
    charts = {k: theta_chart(M, L.member(k)) for k in L.maximals}
    charts[L.maximals[0]] = charts[L.maximals[0]].frobenius(1)
    with pytest.raises(InvariantViolation):
        ThetaOperator(L, M, 1, charts)


def test_equivariance(heisenberg3_lattice):
    L = heisenberg3_lattice
    theta = theta_family(L, builtin_module(L.G, 3, "natural"))
    for x in range(L.G.order):
        assert theta.check_equivariance(x)


def test_specialize_matches_radical_action(heisenberg3_lattice, rng):
    L = heisenberg3_lattice
    M = builtin_module(L.G, 3, "natural")
    theta = theta_family(L, M)
    F = get_field(3, 2)
    for k in L.maximals + L.rank_members(1)[:3]:
        E = L.member(k)
        xi = random_flat_point(L.G, E, 3, F, rng)
        assert np.array_equal(theta.specialize(xi), radical_action(M, E, xi.coords, F))


def test_conjugate_point_intertwines(heisenberg3_lattice, rng):
    L = heisenberg3_lattice
    G = L.G
    M = builtin_module(G, 3, "natural")
    theta = theta_family(L, M)
    F = get_field(3)
    E = L.member(L.rank_members(1)[0])
    xi = random_flat_point(G, E, 3, F, rng)
    for x in G.generators:
        moved = conjugate_point(L, xi, x)
        assert moved.flat
        P = M.matrix(x)
        assert np.array_equal(F.matmul(P, theta.specialize(xi)), F.matmul(theta.specialize(moved), P))


def test_section_and_projection(klein4_lattice):
    L = klein4_lattice
    G = L.G
    E = L.member(L.maximals[0])
    F = get_field(2)
    xi = section_sE(G, E, 2, F, [1, 0])
    assert xi.coords.tolist() == [0, 1, 0]
    assert xi.flat
    assert project_pE(G, E, 2, F, [1, 1, 1]).tolist() == [0, 0]
    assert not pi_point(G, E, 2, F, [1, 1, 1]).flat
    # a different basis lifts (1, 1) to g_1 g_2 - e
    other = section_sE(G, E, 2, F, [1, 1], basis=(3, 2))
    assert other.coords.tolist() == [0, 0, 1]
    with pytest.raises(LatticeError):
        section_sE(G, E, 2, F, [1, 0], basis=(1,))


def test_homotopies_keep_the_projection(heisenberg3_lattice, rng):
    L = heisenberg3_lattice
    G = L.G
    E = L.member(L.maximals[1])
    F = get_field(3, 2)
    xi = random_flat_point(G, E, 3, F, rng)
    c = project_pE(G, E, 3, F, xi.coords)
    assert np.array_equal(fibration_homotopy(G, xi, 3, 1).coords, xi.coords)
    for s in F.elements():
        assert np.array_equal(project_pE(G, E, 3, F, fibration_homotopy(G, xi, 3, s).coords), c)
    b0, b1 = E.basis
    other = (b1, G.mul(b0, b1))
    assert np.array_equal(section_path(G, E, 3, F, c, None, other, 0).coords, section_sE(G, E, 3, F, c).coords)
    for s in F.elements():
        assert np.array_equal(project_pE(G, E, 3, F, section_path(G, E, 3, F, c, None, other, s).coords), c)


def test_pullback_and_twist(klein4_lattice):
    L = klein4_lattice
    M = builtin_module(L.G, 2, "regular")
    theta = theta_family(L, M)
    E = L.member(L.maximals[0])
    pulled = pullback_sE(theta.chart(L.maximals[0]), E)
    assert pulled.ring.names == ("y_1", "y_2")
    assert pulled.degree == 1
    twisted = frobenius_twist(theta, 1)
    assert twisted.degree == 2
    assert twisted.frobenius == 1
    assert frobenius_twist(theta, 0) is theta
    with pytest.raises(ValueError):
        twisted.verify_p_nilpotent()


def test_restriction_is_natural(heisenberg3_lattice):
    L = heisenberg3_lattice
    M = builtin_module(L.G, 3, "natural")
    theta = theta_family(L, M)
    sigma = L.member(L.maximals[2]).elements
    restricted, embedding = restrict_family(theta, sigma)
    direct = theta_family(restricted.L, restricted.M)
    assert restricted.charts == direct.charts
    assert embedding.tolist() == list(sigma)


def test_j_is_bounded(klein4_lattice):
    M = builtin_module(klein4_lattice.G, 2, "regular")
    with pytest.raises(ValueError):
        theta_family(klein4_lattice, M, j=2)
