import pytest
import sympy

from cjt.errors import ResourceLimitError
from utils.groebner import groebner_basis, ideal_membership, normal_form, radical_membership
from utils.polynomial import PolyRing, int_terms


def as_terms(basis):
    return {frozenset(int_terms(g)) for g in basis}


def sympy_basis(gens, ring):
    syms = sympy.symbols(" ".join(ring.names))
    exprs = [sum(c * sympy.Mul(*[s ** e for s, e in zip(syms, exps)]) for exps, c in int_terms(f))
             for f in gens]
    G = sympy.groebner(exprs, *syms, modulus=ring.p, order="grevlex")
    return {frozenset((tuple(e), int(c) % ring.p) for e, c in poly.terms()) for poly in G.polys}


def test_monomial_ideal():
    ring = PolyRing(3, ["x", "y"])
    x, y = ring.gens()
    basis = groebner_basis([x * x, x * y])
    assert as_terms(basis) == as_terms([x * y, x * x])
    assert ideal_membership(x * x * y + 2 * x * y, basis)
    assert not ideal_membership(y, basis)


def test_unit_and_zero_ideal():
    ring = PolyRing(5, ["x", "y"])
    x, y = ring.gens()
    assert groebner_basis([x, x - 1]) == [ring.one()]
    assert groebner_basis([ring.zero()]) == []


def test_basis_is_sorted_and_reduced():
    ring = PolyRing(3, ["x", "y"])
    x, y = ring.gens()
    basis = groebner_basis([x * x + y, x * y + 1])
    leads = [g.LM for g in basis]
    assert leads == sorted(leads, key=lambda e: (sum(e), tuple(-v for v in reversed(e))))
    for i, g in enumerate(basis):
        assert int(g.LC) == 1
        assert normal_form(g, basis[:i] + basis[i + 1:]) == g


@pytest.mark.parametrize("p", [3, 5])
def test_agrees_with_sympy(p):
    ring = PolyRing(p, ["x", "y", "z"])
    x, y, z = ring.gens()
    systems = [
        [x * x + y, x * y + 1],
        [x * x + y * y + z, x * y - z * z, y * z + x],
    ]
    for gens in systems:
        assert as_terms(groebner_basis(gens)) == sympy_basis(gens, ring)


def test_radical_membership():
    ring = PolyRing(2, ["x", "y"])
    x, y = ring.gens()
    assert radical_membership(x, [x * x])
    assert radical_membership(x + y, [x ** 4, y ** 3])
    assert not radical_membership(y, [x * x])
    assert radical_membership(ring.zero(), [])


def test_pair_limit():
    ring = PolyRing(3, ["x", "y"])
    x, y = ring.gens()
    with pytest.raises(ResourceLimitError) as info:
        groebner_basis([x * x + y, x * y + 1], max_pairs=0)
    assert info.value.limit == "max_pairs"


def test_radical_membership_with_colliding_variable_name():
    ring = PolyRing(3, ["_t", "y"])
    t, y = ring.gens()
    assert radical_membership(t + y, [t * t, y ** 3])
    assert not radical_membership(t, [t * y])
    assert (t * y).ring is ring.base
