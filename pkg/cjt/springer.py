"""
    Truncated exp / log for unipotent matrix groups tau in GL_n(F_p) with p > n, the map E -> log(E) onto
    elementary subalgebras, the point maps sum a_g (g - e) -> sum a_g log(g) and their Frobenius-graded
    r-tuples, and the comparison of group and Lie ranks at a pi-point.
"""

import logging
from dataclasses import dataclass

import numpy as np

from cjt.errors import NonConstantModuleError, NotUnipotentError
from cjt.jordan import decide_constant_jrank
from cjt.grouplat import ElabLattice, subgroup_table
from cjt.modrep import radical_action, radical_basis
from utils import lie_algebra
from utils.ffield import get_field

logger = logging.getLogger(__name__)


@dataclass
class NilMatrix:
    field: object
    matrix: np.ndarray

    @property
    def nilpotency_class(self):
        return lie_algebra.nilpotency_class(self.field, self.matrix)

    def bracket(self, other):
        return NilMatrix(self.field, lie_algebra.bracket(self.field, self.matrix, other.matrix))

    def commutes_with(self, other):
        return self.field.is_zero(self.bracket(other).matrix)

    def __add__(self, other):
        return NilMatrix(self.field, self.field.madd(self.matrix, other.matrix))

    def __eq__(self, other):
        return isinstance(other, NilMatrix) and np.array_equal(self.matrix, other.matrix)

    def to_json(self):
        return np.asarray(self.matrix).tolist()


def log_unipotent(field, u):
    return NilMatrix(field, lie_algebra.unilog(field, u))


def exp_nilpotent(field, N):
    if isinstance(N, NilMatrix):
        N = N.matrix
    return lie_algebra.nilexp(field, N)


def _require_matrix_group(G, p):
    if G.matrices is None or G.prime != p:
        raise NotUnipotentError(f"{G.name} is not given as a matrix group over GF({p})")
    n = G.matrices.shape[1]
    if p <= n:
        raise NotUnipotentError(f"truncated exp/log needs p > n (p={p}, n={n})")
    return n


def group_logs(G, p):
    """
        log(g) for every p-element g of the matrix group (None elsewhere).
    """
    _require_matrix_group(G, p)
    F = get_field(p)
    logs = {}
    for g in range(G.order):
        if g == 0 or G.orders[g] == p:
            try:
                logs[g] = lie_algebra.unilog(F, G.matrices[g])
            except NotUnipotentError:
                raise NotUnipotentError(f"p-element {g} of {G.name} is not unipotent") from None
    return logs


class EllLattice:
    """
        For each member E of the lattice, the F_p span of log(E) inside gl_n, as flattened row vectors.
    """

    def __init__(self, L):
        self.L = L
        self.G = L.G
        self.p = L.p
        self.n = _require_matrix_group(self.G, self.p)
        self.F = get_field(self.p)
        self.logs = group_logs(self.G, self.p)
        self.algebras = {}
        for k, E in enumerate(L.members):
            rows = np.array([self.logs[g].reshape(-1) for g in E.elements])
            self.algebras[k] = self.F.base.row_space(rows)

    def commuting_check(self):
        """
            g, h of order p commute iff [log g, log h] = 0.
        """
        elems = self.G.elements_of_order(self.p)
        for a in elems:
            for b in elems:
                group_side = bool(self.G.commute(a, b))
                lie_side = self.F.is_zero(lie_algebra.bracket(self.F, self.logs[a], self.logs[b]))
                if group_side != lie_side:
                    return False
        return True

    def elementary_check(self, k):
        """
            log(E) has dimension rank E, zero brackets and zero p-th powers.
        """
        E = self.L.member(k)
        basis = self.algebras[k]
        if basis.shape[0] != E.rank:
            return False
        mats = [row.reshape(self.n, self.n) for row in basis]
        for A in mats:
            for B in mats:
                if not self.F.is_zero(lie_algebra.bracket(self.F, A, B)):
                    return False
        for coeffs in np.ndindex(*([self.p] * E.rank)):
            X = sum(c * A for c, A in zip(coeffs, mats)) % self.p
            if not self.F.is_zero(self.F.power(X, self.p)):
                return False
        return True

    def check_conjugation(self, x):
        """
            log(x E x^-1) == Ad(x) log(E) as subspaces, for every member E.
        """
        X = self.G.matrices[x]
        X_inv = lie_algebra.matrix_inverse(self.F, X)
        for k in range(len(self.L.members)):
            moved = np.array([lie_algebra.adjoint(self.F, X, row.reshape(self.n, self.n), X_inv).reshape(-1)
                              for row in self.algebras[k]])
            target = self.algebras[int(self.L.conjugation[k, x])]
            if not np.array_equal(self.F.base.row_space(moved), target):
                return False
        return True


def ell_lattice(L):
    return EllLattice(L)


def ell_point(G, E, p, field, a):
    """
        sum_g a_g log(g) over F_q, a in J_E basis order.
    """
    logs = group_logs(G, p)
    rb = radical_basis(G, E, p)
    mats = np.array([logs[g] for g in rb.order])
    return NilMatrix(field, field.combine(np.asarray(a, dtype=np.int64), mats))


@dataclass
class OneParamPoint:
    E: object
    coords: np.ndarray
    psi: tuple

    def commuting(self):
        return all(A.commutes_with(B) for A in self.psi for B in self.psi)

    def to_json(self):
        return {"subgroup": list(self.E.elements), "coords": [int(c) for c in self.coords],
                "psi": [N.to_json() for N in self.psi]}


def ell_r_point(G, E, p, field, c, r, basis=None):
    """
        psi_i = sum_j c_j^(p^i) log(h_j), i = 0..r-1, for the basis h_1..h_s of E (default E.basis).
    """
    basis = tuple(basis) if basis is not None else E.basis
    logs = group_logs(G, p)
    mats = np.array([logs[h] for h in basis])
    c = np.asarray(c, dtype=np.int64)
    psi = []
    for i in range(r):
        twisted = np.array([field.frobenius(int(v), i) for v in c], dtype=np.int64)
        psi.append(NilMatrix(field, field.combine(twisted, mats)))
    return OneParamPoint(E, c, tuple(psi))


def module_logs(M, E):
    """
        log(rho_M(g)) for g in the J_E basis order.
    """
    F = get_field(M.p)
    rb = radical_basis(M.G, E, M.p)
    return np.array([lie_algebra.unilog(F, M.matrix(g)) for g in rb.order])


def restricted_constancy(M, E, j, method="exact", config=None):
    """
        Constant j-rank of M restricted to E.
    """
    H, embedding = subgroup_table(M.G, E.elements)
    return decide_constant_jrank(M.restrict(H, embedding), ElabLattice(H, M.p), j, method, config)


def rank_compare(M, xi, j, verdict=None):
    """
        (rank of (sum a_g (rho(g) - I))^j, rank of (sum a_g log rho(g))^j, equal). M restricted to xi.E must
        have constant j-rank; pass a precomputed verdict to skip that decision.
    """
    if verdict is None:
        verdict = restricted_constancy(M, xi.E, j)
    if not verdict.constant:
        raise NonConstantModuleError(f"{M.name} restricted to the subgroup is not of constant {j}-rank")
    F = xi.field
    group_side = F.power(radical_action(M, xi.E, xi.coords, F), j)
    lie_side = F.power(F.combine(xi.coords, module_logs(M, xi.E)), j)
    rank_group, rank_lie = F.rank(group_side), F.rank(lie_side)
    return rank_group, rank_lie, rank_group == rank_lie
