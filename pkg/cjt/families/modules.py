"""
    Builtin kG-modules. Each builder takes (G, p, *params) and returns one F_p matrix per generator of G,
    acting on column vectors.
"""

import numpy as np

from cjt.errors import ModuleSpecError
from utils.ffield import PrimeField
from utils.polynomial import PolyRing



def trivial(G, p):
    return [np.eye(1, dtype=np.int64) for _ in G.generators]


def _regular_matrix(G, g):
    n = G.order
    M = np.zeros((n, n), dtype=np.int64)
    M[G.table[g], np.arange(n)] = 1
    return M


def regular(G, p):
    """
        kG acting on itself by left multiplication, basis e_h: g e_h = e_{gh}.
    """
    return [_regular_matrix(G, g) for g in G.generators]


def natural(G, p):
    if G.matrices is not None:
        if G.prime != p:
            raise ModuleSpecError(f"group matrices are over GF({G.prime}), not GF({p})")
        return [np.array(G.matrices[g], dtype=np.int64) for g in G.generators]
    if G.labels is not None:
        mats = []
        for g in G.generators:
            perm = G.labels[g]
            P = np.zeros((len(perm), len(perm)), dtype=np.int64)
            P[perm, np.arange(len(perm))] = 1
            mats.append(P)
        return mats
    raise ModuleSpecError("natural module needs a matrix or permutation group")


def _quotient(G, p, W):
    """
        Generator matrices of kG / W for a left-invariant subspace W of kG (rows in the e_h basis).
    """
    F = PrimeField(p)
    n = G.order
    R, pivots = F.rref(W) if len(W) else (np.zeros((0, n), dtype=np.int64), [])
    R = R[:len(pivots)]
    free = [c for c in range(n) if c not in pivots]

    def reduce(v):
        v = v % p
        for i, c in enumerate(pivots):
            if v[c]:
                v = (v - v[c] * R[i]) % p
        return v[free]

    mats = []
    for g in G.generators:
        reg = _regular_matrix(G, g)
        Q = np.zeros((len(free), len(free)), dtype=np.int64)
        for col, h in enumerate(free):
            Q[:, col] = reduce(reg[:, h].copy())
        mats.append(Q)
    return mats


def augmentation_power(G, p, j):
    """
        Rows spanning J^j, J the augmentation ideal of kG.
    """
    F = PrimeField(p)
    n = G.order
    J = np.zeros((n - 1, n), dtype=np.int64)
    J[np.arange(n - 1), np.arange(1, n)] = 1
    J[:, 0] = p - 1
    current = F.row_space(J)
    shifts = [(_regular_matrix(G, g) - np.eye(n, dtype=np.int64)) % p for g in range(1, n)]
    for _ in range(j - 1):
        if current.shape[0] == 0:
            break
        products = np.vstack([(S @ current.T).T % p for S in shifts])
        current = F.row_space(products, ncols=n)
    return current


def radical_quotient(G, p, j):
    """
        kG / J^j.
    """
    j = int(j)
    if j < 1:
        raise ModuleSpecError("radical quotient needs j >= 1")
    return _quotient(G, p, augmentation_power(G, p, j))


def cyclic_quotient(G, p, k=1):
    """
        kG / kG(g - e) for g the k-th generator (1-based).
    """
    k = int(k)
    if not 1 <= k <= len(G.generators):
        raise ModuleSpecError(f"generator position {k} out of range 1..{len(G.generators)}")
    g = G.generators[k - 1]
    n = G.order
    W = np.zeros((n, n), dtype=np.int64)
    for h in range(n):
        W[h, G.mul(h, g)] += 1
        W[h, h] -= 1
    return _quotient(G, p, PrimeField(p).row_space(W % p, ncols=n))


def symmetric_power(G, p, m):
    """
        Sym^m of the natural module, basis the degree-m monomials in decreasing grevlex order.
    """
    m = int(m)
    base = natural(G, p)
    n = base[0].shape[0]
    ring = PolyRing(p, [f"e{i}" for i in range(n)])
    monos = ring.monomials(m)
    mats = []
    for A in base:
        images = [ring.linear_form(A[:, i]) for i in range(n)]
        S = np.zeros((len(monos), len(monos)), dtype=np.int64)
        for col, exps in enumerate(monos):
            f = ring.one()
            for i, e in enumerate(exps):
                if e:
                    f = f * images[i] ** e
            S[:, col] = ring.coefficient_vector(f, m)
        mats.append(S)
    return mats
