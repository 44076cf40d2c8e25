"""
    The universal p-nilpotent operator: per maximal elementary abelian subgroup E a matrix of forms
    Theta_{E,M}^j = (sum_{g in E, g != e} x_g (rho(g) - I))^j, its specializations at pi-points,
    s_E pullbacks, Frobenius twists and restriction to subgroups.
"""

import logging
from dataclasses import dataclass

import numpy as np

from cjt.errors import InvariantViolation, LatticeError, NonFlatPointError
from cjt.grouplat import ElabLattice, subgroup_table
from cjt.modrep import radical_action, radical_basis
from utils.ffield import get_field
from utils.lie_algebra import matrix_inverse
from utils.polynomial import PolyMatrix, PolyRing

logger = logging.getLogger(__name__)


def chart_ring(G, E, p):
    """
        F_p[x_g : g in E, g != e], variables in J_E basis order.
    """
    rb = radical_basis(G, E, p)
    return PolyRing(p, [f"x_{g}" for g in rb.order])


def section_ring(p, r):
    return PolyRing(p, [f"y_{i + 1}" for i in range(r)])


def theta_chart(M, E, j=1):
    """
        Theta_{E,M}^j as a PolyMatrix homogeneous of degree j.
    """
    rb = radical_basis(M.G, E, M.p)
    ring = chart_ring(M.G, E, M.p)
    theta = PolyMatrix.linear_combination(ring, rb.shift_matrices(M))
    return theta.power(j) if j > 1 else theta


@dataclass
class PiPoint:
    """
        A point sum_g a_g (g - e) of J_E over F_q; flat iff it lies outside J_E^2.
    """
    E: object
    field: object
    coords: np.ndarray
    flat: bool

    def to_json(self):
        return {"subgroup": list(self.E.elements), "basis": list(self.E.basis),
                "field": [self.field.p, self.field.d], "coords": [int(c) for c in self.coords],
                "flat": self.flat}


def project_pE(G, E, p, field, coords):
    """
        Coordinates of the image in J_E / J_E^2 (basis g_i - e of E's chosen basis).
    """
    rb = radical_basis(G, E, p)
    coords = np.asarray(coords, dtype=np.int64)
    # ann rows are F_p forms; evaluate sum_g ann[i, g] a_g over F_q
    return np.array([field.combine(coords, rb.ann[i].reshape(-1, 1, 1))[0, 0] for i in range(E.rank)],
                    dtype=np.int64)


def pi_point(G, E, p, field, coords):
    coords = np.asarray(coords, dtype=np.int64) % field.q
    flat = bool(project_pE(G, E, p, field, coords).any())
    return PiPoint(E, field, coords, flat)


def _basis_change(G, E, p, basis):
    """
        Exponent matrix B of a basis (rows = exponent vectors of the h_i in E's own basis) and its inverse.
    """
    B = np.array([E.exponent(h) for h in basis], dtype=np.int64)
    return B, matrix_inverse(get_field(p), B)


def section_sE(G, E, p, field, c, basis=None):
    """
        The lift of c (coordinates in J_E / J_E^2 for E's own basis) into span{h_i - e} for the basis h_i.
    """
    basis = tuple(basis) if basis is not None else E.basis
    if len(basis) != E.rank:
        raise LatticeError("a section needs a basis of the subgroup")
    rb = radical_basis(G, E, p)
    _, B_inv = _basis_change(G, E, p, basis)
    # c = sum_i t_i B[i]  =>  t = c B^-1
    t = field.combine(np.asarray(c, dtype=np.int64), B_inv.reshape(E.rank, 1, E.rank))[0]
    coords = np.zeros(rb.size, dtype=np.int64)
    for h, v in zip(basis, t):
        coords[rb.position[h]] = v
    return pi_point(G, E, p, field, coords)


def fibration_homotopy(G, xi, p, s, basis=None):
    """
        s_E(p_E(a)) + s * (a - s_E(p_E(a))): s = 1 is the identity, s = 0 is s_E o p_E.
    """
    F = xi.field
    base = section_sE(G, xi.E, p, F, project_pE(G, xi.E, p, F, xi.coords), basis)
    fibre = F.msub(xi.coords.reshape(1, -1), base.coords.reshape(1, -1))
    moved = F.madd(base.coords.reshape(1, -1), F.scale(int(s), fibre))[0]
    return pi_point(G, xi.E, p, F, moved)


def section_path(G, E, p, field, c, basis, other_basis, s):
    """
        (1 - s) s_E(c) + s s'_E(c) between the sections of two bases; p_E is c all along.
    """
    a = section_sE(G, E, p, field, c, basis).coords.reshape(1, -1)
    b = section_sE(G, E, p, field, c, other_basis).coords.reshape(1, -1)
    one_minus = field.sub(1, int(s))
    coords = field.madd(field.scale(one_minus, a), field.scale(int(s), b))[0]
    return pi_point(G, E, p, field, coords)


def conjugate_point(L, xi, x):
    """
        xi^x: the point sum_g a_g (x g x^-1 - e) of J_{E^x}.
    """
    G, p = L.G, L.p
    image, mapping = L.conjugation_map(xi.E, x)
    image = L.member(L.index(image))
    rb_src = radical_basis(G, xi.E, p)
    rb_dst = radical_basis(G, image, p)
    coords = np.zeros(rb_dst.size, dtype=np.int64)
    for g, a in zip(rb_src.order, xi.coords):
        coords[rb_dst.position[mapping[g]]] = a
    return pi_point(G, image, p, xi.field, coords)


class ThetaOperator:
    """
        Theta_{tau,M}^j as a compatible family of chart matrices, one per maximal member of the lattice.
        `frobenius` is the exponent e of a Frobenius twist x -> x^(p^e) applied to every chart.
    """

    def __init__(self, L, M, j, charts, frobenius=0, check=True):
        self.L = L
        self.M = M
        self.j = j
        self.p = L.p
        self.charts = charts
        self.frobenius = frobenius
        self.degree = j * self.p ** frobenius
        if check:
            bad = [pair for pair, agree in self.check_compatibility() if not agree]
            if bad:
                raise InvariantViolation(f"chart matrices disagree on the intersections {bad}")

    def __repr__(self):
        return f"ThetaOperator({self.M.name}, j={self.j}, charts={len(self.charts)})"

    def chart(self, k):
        return self.charts[k]

    def _intersection_ring(self, c):
        return chart_ring(self.L.G, self.L.member(c), self.p)

    def restrict_chart(self, k, c):
        """
            Chart k restricted to the member c inside it: x_g -> x_g for g in c, 0 otherwise.
        """
        source = self.charts[k].ring
        target = self._intersection_ring(c)
        positions = [target.names.index(n) if n in target.names else None for n in source.names]
        return self.charts[k].relabel(positions, target)

    def check_compatibility(self):
        """
            [((a, b), agree)] over pairs of maximal members with nontrivial intersection.
        """
        out = []
        for (a, b), c in sorted(self.L.intersections.items()):
            if c is None:
                continue
            agree = self.restrict_chart(a, c) == self.restrict_chart(b, c)
            out.append(((a, b), agree))
        return out

    def check_equivariance(self, x):
        """
            For every maximal E: relabel x_g -> x_{x g x^-1} and conjugate by rho(x); must give the chart of E^x.
        """
        if self.frobenius:
            raise ValueError("equivariance is checked on untwisted operators")
        G = self.L.G
        P = self.M.matrix(x)
        P_inv = matrix_inverse(get_field(self.p), P)
        for k, theta in self.charts.items():
            target_k = int(self.L.conjugation[k, x])
            target = self.charts[target_k]
            positions = [target.ring.names.index(f"x_{G.conjugate(x, int(n[2:]))}") for n in theta.ring.names]
            moved = theta.relabel(positions, target.ring).conjugate(P, P_inv)
            if moved != target:
                logger.debug("equivariance fails for x=%d on chart %d", x, k)
                return False
        return True

    def containing_chart(self, E, via=None):
        choices = self.L.containing_maximals(E)
        if not choices:
            raise LatticeError("subgroup lies in no maximal member")
        if via is None:
            return choices[0]
        if via not in choices:
            raise LatticeError(f"maximal member {via} does not contain the subgroup")
        return via

    def specialize(self, xi, via=None):
        """
            The F_q matrix of Theta^j at the pi-point xi, evaluated on a containing maximal chart.
        """
        k = self.containing_chart(xi.E, via)
        theta = self.charts[k]
        rb = radical_basis(self.L.G, xi.E, self.p)
        point = np.zeros(theta.ring.nvars, dtype=np.int64)
        index = {n: i for i, n in enumerate(theta.ring.names)}
        for g, a in zip(rb.order, xi.coords):
            point[index[f"x_{g}"]] = a
        return theta.evaluate(xi.field, point)

    def verify_p_nilpotent(self):
        """
            Symbolic (Theta_{E,M})^p == 0 on every chart.
        """
        if self.j != 1 or self.frobenius:
            raise ValueError("p-nilpotence is verified on the untwisted operator with j = 1")
        return all(theta.power(self.p).is_zero() for theta in self.charts.values())

    def to_json(self):
        charts = []
        for k, theta in sorted(self.charts.items()):
            names = [f"{n}@E{k}" for n in theta.ring.names]
            charts.append({"subgroup": k, "variables": names, "degree": theta.degree, "matrix": theta.to_json()})
        return {"module": self.M.name, "j": self.j, "frobenius": self.frobenius, "charts": charts}


def theta_family(L, M, j=1, check=True):
    if not 1 <= j <= L.p - 1:
        raise ValueError(f"j={j} outside 1..{L.p - 1}")
    charts = {k: theta_chart(M, L.member(k), j) for k in L.maximals}
    logger.debug("theta family for %s: %d charts, j=%d", M.name, len(charts), j)
    return ThetaOperator(L, M, j, charts, check=check)


def specialize(theta, xi, via=None):
    return theta.specialize(xi, via)


def verify_p_nilpotent(theta):
    return theta.verify_p_nilpotent()


def pullback_sE(theta_E, E, basis=None):
    """
        Substitute x_{h_i} -> y_i for the basis h_1..h_r and x_g -> 0 otherwise.
    """
    basis = tuple(basis) if basis is not None else E.basis
    if not basis:
        raise LatticeError("subgroup has no basis")
    ring = theta_E.ring
    target = section_ring(ring.p, len(basis))
    lookup = {f"x_{h}": i for i, h in enumerate(basis)}
    positions = [lookup.get(n) for n in ring.names]
    return theta_E.relabel(positions, target)


def frobenius_twist(theta, e):
    if e == 0:
        return theta
    charts = {k: m.frobenius(e) for k, m in theta.charts.items()}
    return ThetaOperator(theta.L, theta.M, theta.j, charts, frobenius=theta.frobenius + e, check=False)


def restrict_family(theta, sigma):
    """
        Theta over the subgroup sigma (element indices of G): its own lattice, the module restricted,
        and every chart obtained from a containing maximal chart of G by x_g -> 0 for g outside.
        Returns (ThetaOperator over sigma, embedding of sigma into G).
    """
    G, p = theta.L.G, theta.p
    H, embedding = subgroup_table(G, sigma)
    L_sigma = ElabLattice(H, p)
    M_sigma = theta.M.restrict(H, embedding)
    charts = {}
    for k in L_sigma.maximals:
        F_H = L_sigma.member(k)
        F_G = tuple(int(embedding[h]) for h in F_H.elements)
        k_G = theta.containing_chart(F_G)
        source = theta.charts[k_G]
        target = chart_ring(H, F_H, p)
        positions = []
        for n in source.ring.names:
            g = int(n[2:])
            h = np.searchsorted(embedding, g)
            inside = h < len(embedding) and embedding[h] == g and int(h) in F_H.elements
            positions.append(target.names.index(f"x_{int(h)}") if inside else None)
        charts[k] = source.relabel(positions, target)
    restricted = ThetaOperator(L_sigma, M_sigma, theta.j, charts, frobenius=theta.frobenius, check=False)
    return restricted, embedding
