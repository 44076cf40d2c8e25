import logging

from sympy import Symbol
from sympy.polys.groebnertools import red_groebner, spoly
from sympy.polys.monomials import monomial_divides, monomial_lcm, monomial_mul

from cjt.errors import ResourceLimitError
from utils.polynomial import total_degree

"""
    Groebner bases over F_p in graded reverse lexicographic order, on sympy's sparse polynomial rings.

    Buchberger with Gebauer-Moeller pair elimination and normal selection, under a degree and a pair budget.
    S-polynomials, reduction and the final interreduction come from sympy.groebnertools.
"""

logger = logging.getLogger(__name__)

MAX_GB_DEGREE = 40
MAX_GB_PAIRS = 200_000


def normal_form(f, G):
    """
        Full remainder of f on division by the list G (every term reduced).
    """
    if not G or not f:
        return f
    return f.rem(list(G))


def _update(G, P, f):
    """Return the new basis and pair set when f is added to G (Gebauer-Moeller)."""
    lmf = f.LM
    lmG = [g.LM for g in G]
    P = {pair for pair in P
         if (not monomial_divides(lmf, monomial_lcm(lmG[pair[0]], lmG[pair[1]])) or
             monomial_lcm(lmG[pair[0]], lmG[pair[1]]) == monomial_lcm(lmG[pair[0]], lmf) or
             monomial_lcm(lmG[pair[0]], lmG[pair[1]]) == monomial_lcm(lmG[pair[1]], lmf))}
    lcm_dict = {}
    for i in range(len(G)):
        lcm_dict.setdefault(monomial_lcm(lmG[i], lmf), []).append(i)
    order = f.ring.order
    minimal_lcms = []
    for L in sorted(lcm_dict, key=order):
        if all(not monomial_divides(L_, L) for L_ in minimal_lcms):
            minimal_lcms.append(L)
    new_pairs = set()
    for L in minimal_lcms:
        # product criterion: coprime leading monomials reduce to zero
        if not any(monomial_lcm(lmG[i], lmf) == monomial_mul(lmG[i], lmf) for i in lcm_dict[L]):
            new_pairs.add((min(lcm_dict[L]), len(G)))
    return G + [f], P | new_pairs


def _select(G, P):
    order = G[0].ring.order

    def key(pair):
        return order(monomial_lcm(G[pair[0]].LM, G[pair[1]].LM)), pair
    return min(P, key=key)


def groebner_basis(gens, max_degree=MAX_GB_DEGREE, max_pairs=MAX_GB_PAIRS):
    """
        Reduced Groebner basis of the ideal generated by gens, sorted by increasing leading monomial.
        The unit ideal gives [1]; the zero ideal gives [].
    """
    gens = [f for f in gens if f]
    if not gens:
        return []
    ring = gens[0].ring
    if any(f.ring != ring for f in gens):
        raise ValueError("generators must lie in one ring")

    G, P = [], set()
    for f in gens:
        f = normal_form(f, G)
        if f:
            G, P = _update(G, P, f.monic())

    processed = 0
    while P:
        if any(g.is_ground for g in G):
            break
        pair = _select(G, P)
        P.remove(pair)
        processed += 1
        if processed > max_pairs:
            raise ResourceLimitError("max_pairs", max_pairs)
        r = normal_form(spoly(G[pair[0]], G[pair[1]], ring), G)
        if r:
            if total_degree(r) > max_degree:
                raise ResourceLimitError("max_degree", max_degree,
                                         f"Groebner basis element of degree {total_degree(r)} exceeds {max_degree}")
            G, P = _update(G, P, r.monic())
        if processed % 500 == 0:
            logger.debug("buchberger: %d pairs processed, basis size %d, %d pairs left", processed, len(G), len(P))

    if any(g.is_ground for g in G):
        return [ring.one]
    return sorted(red_groebner(G, ring), key=lambda g: ring.order(g.LM))


def ideal_membership(f, basis):
    """
        f in the ideal whose Groebner basis is `basis`.
    """
    return not normal_form(f, basis)


def radical_membership(f, gens, max_degree=MAX_GB_DEGREE, max_pairs=MAX_GB_PAIRS):
    """
        f in the radical of (gens), by testing whether (gens, 1 - t f) is the unit ideal.
        Over the perfect field F_p this decides containment of varieties over the algebraic closure.
    """
    if not f:
        return True
    ring = f.ring
    name = "_t"
    while Symbol(name) in ring.symbols:
        name += "_"
    big = ring.clone(symbols=ring.symbols + (Symbol(name),))
    t = big.gens[-1]
    lifted = [g.set_ring(big) for g in gens]
    lifted.append(big.one - t * f.set_ring(big))
    basis = groebner_basis(lifted, max_degree=max_degree, max_pairs=max_pairs)
    return len(basis) == 1 and basis[0].is_ground
