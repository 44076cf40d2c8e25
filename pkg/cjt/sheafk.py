"""
    Graded kernel / image / cokernel modules of a homogeneous chart matrix, their Hilbert data, splitting
    types on P^1 and classes in K_0(P^(n-1)) = Z[O(0)] + ... + Z[O(n-1)].

    Indexing: for Theta of degree j acting S_d^m -> S_(d+j)^m, Ker_d is in S_d^m, Im_d is the image of S_d^m
    and Coker_d = S_(d+j)^m / Im_d. These are the graded modules of ker in O^m, O^m / ker and O(j)^m / im.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import sympy
from scipy.special import comb

from cjt.errors import (InvariantViolation, NonConstantModuleError, NonIntegralClassError,
                        NonStabilizingError, ResourceLimitError)
from cjt.jordan import decide_constant_jrank
from cjt.theta import pullback_sE, theta_chart
from utils.ffield import PrimeField

logger = logging.getLogger(__name__)

MAX_DEGREE_BOUND = 200
KINDS = ("ker", "im", "coker")

d_symbol = sympy.Symbol("d")


def default_degree_bound(j, m, n):
    return j * m + n + 4


class GradedPieceTable:
    """
        Degreewise exact linear algebra for a homogeneous PolyMatrix; extended lazily with `compute_to`.
    """

    def __init__(self, chart, kind, degree_bound=None, cap=MAX_DEGREE_BOUND):
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if chart.degree is None:
            raise ValueError("chart matrix must be homogeneous")
        self.chart = chart
        self.kind = kind
        self.j = chart.degree
        self.m = chart.cols
        self.ring = chart.ring
        self.nvars = chart.ring.nvars
        self.F = PrimeField(chart.ring.p)
        self.cap = cap
        self.dims = []
        self.bases = []
        self.generator_degrees = []
        D = degree_bound if degree_bound is not None else default_degree_bound(self.j, self.m, self.nvars)
        self.compute_to(D)

    @property
    def degree_bound(self):
        return len(self.dims) - 1

    def source_dim(self, d):
        return self.m * comb(d + self.nvars - 1, self.nvars - 1, exact=True)

    def compute_to(self, D):
        if D > self.cap:
            raise ResourceLimitError("degree_cap", self.cap, f"degree bound {D} exceeds the cap {self.cap}")
        for d in range(len(self.dims), D + 1):
            A = self.chart.degree_map(d, self.j)
            if self.kind == "ker":
                basis = self.F.nullspace(A, ncols=A.shape[1])
                self._count_generators(d, basis)
            elif self.kind == "im":
                basis = self.F.row_space(A.T, ncols=A.shape[0])
            else:
                basis = self.F.nullspace(A.T, ncols=A.shape[0])
            dim = basis.shape[0]
            if self.kind == "coker":
                dim = A.shape[0] - self.F.rank(A)
            self.dims.append(dim)
            self.bases.append(basis)
        logger.debug("graded %s pieces up to degree %d: %s", self.kind, self.degree_bound, self.dims)
        return self

    def _shift_up(self, vectors, d):
        """
            {x_t v} for v in S_d^m coordinates, as vectors in S_(d+1)^m coordinates.
        """
        src = self.ring.monomials(d)
        dst = self.ring.monomial_index(d + 1)
        nsrc, ndst = len(src), len(dst)
        out = []
        for v in vectors:
            for t in range(self.nvars):
                w = np.zeros(self.m * ndst, dtype=np.int64)
                for pos in np.nonzero(v)[0]:
                    i, s = divmod(int(pos), nsrc)
                    mono = list(src[s])
                    mono[t] += 1
                    w[i * ndst + dst[tuple(mono)]] = v[pos]
                out.append(w)
        return np.array(out, dtype=np.int64).reshape(len(out), self.m * ndst)

    def _count_generators(self, d, basis):
        if d == 0:
            new = basis.shape[0]
        else:
            below = self.bases[d - 1]
            generated = self.F.rank(self._shift_up(below, d - 1)) if below.shape[0] else 0
            new = basis.shape[0] - generated
        self.generator_degrees.extend([d] * new)

    def to_json(self):
        out = {"kind": self.kind, "nvars": self.nvars, "j": self.j, "m": self.m, "h": list(self.dims)}
        if self.kind == "ker":
            out["generator_degrees"] = list(self.generator_degrees)
        return out


def graded_pieces(chart, kind, degree_bound=None, cap=MAX_DEGREE_BOUND):
    return GradedPieceTable(chart, kind, degree_bound, cap)


def _binomial_poly(a, n):
    """
        binom(d + a + n - 1, n - 1) as a polynomial in d (the Hilbert polynomial of O(a) on P^(n-1)).
    """
    expr = sympy.Integer(1)
    for k in range(1, n):
        expr *= (d_symbol + a + k)
    return sympy.expand(expr / math.factorial(n - 1))


@dataclass
class HilbertData:
    h: list
    stabilization: int
    polynomial: object
    nvars: int
    k0_rational: tuple = field(repr=False)

    @property
    def coefficients(self):
        """Rational coefficients, constant term first."""
        poly = sympy.Poly(self.polynomial, d_symbol)
        return [sympy.Rational(c) for c in reversed(poly.all_coeffs())]

    @property
    def rank(self):
        return int(sum(self.k0_rational))

    @property
    def degree(self):
        return sum(i * c for i, c in enumerate(self.k0_rational))

    def __call__(self, d):
        return self.polynomial.subs(d_symbol, d)

    def to_json(self):
        return {"h": self.h, "stabilization": self.stabilization,
                "polynomial": [str(c) for c in self.coefficients], "rank": self.rank, "degree": str(self.degree)}


def _solve_k0(poly, n):
    """
        Rational c with sum_i c_i binom(d + i + n - 1, n - 1) = poly(d).
    """
    A = sympy.Matrix(n, n, lambda d, i: comb(d + i + n - 1, n - 1, exact=True))
    b = sympy.Matrix(n, 1, lambda d, _: poly.subs(d_symbol, d))
    c = A.LUsolve(b)
    recon = sum((c[i] * _binomial_poly(i, n) for i in range(n)), sympy.Integer(0))
    if sympy.expand(recon - poly) != 0:
        raise InvariantViolation(f"polynomial {poly} has degree above {n - 1}")
    return tuple(sympy.Rational(v) for v in c)


def hilbert_polynomial(T):
    """
        Fit the polynomial of degree <= n-1 through the last n values and require at least n+1 trailing agreements,
        raising the degree bound (up to the table cap) until that holds.
    """
    n = T.nvars
    while True:
        D = T.degree_bound
        tail = [(d, T.dims[d]) for d in range(D - n + 1, D + 1)]
        poly = sympy.expand(sympy.interpolate(tail, d_symbol)) if n > 1 else sympy.Integer(tail[-1][1])
        d0 = D
        while d0 > 0 and poly.subs(d_symbol, d0 - 1) == T.dims[d0 - 1]:
            d0 -= 1
        if D - d0 + 1 >= n + 1:
            break
        new_bound = D + n + 2
        if new_bound > T.cap:
            raise NonStabilizingError(f"Hilbert function not stable up to degree {D} (cap {T.cap})")
        logger.warning("Hilbert function of %s not yet stable at degree %d; extending to %d", T.kind, D, new_bound)
        T.compute_to(new_bound)
    return HilbertData(list(T.dims), d0, poly, n, _solve_k0(poly, n))


@dataclass(frozen=True)
class K0Vector:
    """
        Class in K_0(P^(n-1)) in the basis [O(0)], ..., [O(n-1)].
    """
    n: int
    coeffs: tuple

    def _check(self, other):
        if not isinstance(other, K0Vector) or other.n != self.n:
            raise ValueError("K0 vectors live on different projective spaces")

    def __add__(self, other):
        self._check(other)
        return K0Vector(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return K0Vector(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return K0Vector(self.n, tuple(-a for a in self.coeffs))

    def __rmul__(self, k):
        return K0Vector(self.n, tuple(int(k) * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        self._check(other)
        out = zero_class(self.n)
        for a, ca in enumerate(self.coeffs):
            for b, cb in enumerate(other.coeffs):
                if ca and cb:
                    out = out + (ca * cb) * line_bundle_class(self.n, a + b)
        return out

    def twist(self, a):
        out = zero_class(self.n)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + c * line_bundle_class(self.n, i + a)
        return out

    @property
    def rank(self):
        return sum(self.coeffs)

    @property
    def degree(self):
        return sum(i * c for i, c in enumerate(self.coeffs)) if self.n > 1 else 0

    def hilbert_polynomial(self):
        return sympy.expand(sum((c * _binomial_poly(i, self.n) for i, c in enumerate(self.coeffs)), sympy.Integer(0)))

    def to_json(self):
        return list(self.coeffs)


def zero_class(n):
    return K0Vector(n, (0,) * n)


def line_bundle_class(n, a):
    """
        [O(a)] for any integer a, reduced with sum_k (-1)^k binom(n, k) [O(i - k)] = 0.
    """
    known = {i: tuple(1 if t == i else 0 for t in range(n)) for i in range(n)}
    signs = [(-1) ** k * comb(n, k, exact=True) for k in range(n + 1)]
    i = n
    while a >= n and i <= a:
        known[i] = tuple(-sum(signs[k] * known[i - k][t] for k in range(1, n + 1)) for t in range(n))
        i += 1
    i = -1
    while a < 0 and i >= a:
        # signs[n] [O(i)] = -sum_{k<n} signs[k] [O(i + n - k)]
        known[i] = tuple(-signs[n] * sum(signs[k] * known[i + n - k][t] for k in range(n)) for t in range(n))
        i -= 1
    return K0Vector(n, known[a])


def k0_class(H):
    if any(c.q != 1 for c in H.k0_rational):
        raise NonIntegralClassError(f"Hilbert polynomial {H.polynomial} has no integral K0 class")
    return K0Vector(H.nvars, tuple(int(c) for c in H.k0_rational))


def k0_restrict(v, n_target):
    if n_target > v.n or n_target < 1:
        raise ValueError(f"cannot restrict from P^{v.n - 1} to P^{n_target - 1}")
    out = zero_class(n_target)
    for i, c in enumerate(v.coeffs):
        if c:
            out = out + c * line_bundle_class(n_target, i)
    return out


def splitting_type_p1(T):
    """
        Kernel on P^1: generator degrees b_i of the (graded free) kernel module; the sheaf is sum O(-b_i).
    """
    if T.nvars != 2 or T.kind != "ker":
        raise ValueError("splitting types are read from kernel tables on a 2-variable chart")
    H = hilbert_polynomial(T)
    while len(T.generator_degrees) < H.rank:
        if T.degree_bound + 2 > T.cap:
            raise NonStabilizingError("kernel generators not found within the degree cap")
        T.compute_to(T.degree_bound + 2)
    if len(T.generator_degrees) != H.rank:
        raise InvariantViolation(f"{len(T.generator_degrees)} kernel generators for a rank {H.rank} kernel")
    return sorted((-b for b in T.generator_degrees), reverse=True)


# ------------------------------------ charts and families ------------------------------------

def sE_chart(M, E, j, basis=None):
    return pullback_sE(theta_chart(M, E, j), E, basis)


def chart_class(chart, kind, degree_bound=None, cap=MAX_DEGREE_BOUND):
    T = graded_pieces(chart, kind, degree_bound, cap)
    H = hilbert_polynomial(T)
    return k0_class(H), H, T


def euler_identities(chart, degree_bound=None, cap=MAX_DEGREE_BOUND):
    """
        [ker] + [im] = m[O] and [im] + [coker] = m[O(j)] on one chart.
    """
    n, m, j = chart.ring.nvars, chart.cols, chart.degree
    classes = {kind: chart_class(chart, kind, degree_bound, cap)[0] for kind in KINDS}
    free = m * line_bundle_class(n, 0)
    free_j = m * line_bundle_class(n, j)
    return {
        "classes": classes,
        "ker_plus_im": classes["ker"] + classes["im"] == free,
        "im_plus_coker": classes["im"] + classes["coker"] == free_j,
    }


@dataclass
class K0Family:
    j: int
    kind: str
    vectors: dict
    hilbert: dict
    compatibility: list

    @property
    def compatible(self):
        return all(entry["agree"] for entry in self.compatibility)

    def to_json(self):
        return {
            "j": self.j,
            "kind": self.kind,
            "vectors": {str(k): v.to_json() for k, v in sorted(self.vectors.items())},
            "hilbert": {str(k): H.to_json() for k, H in sorted(self.hilbert.items())},
            "compatibility": [{"pair": list(e["pair"]), "intersection": e["intersection"],
                               "restricted": [e["restricted"][0].to_json(), e["restricted"][1].to_json()],
                               "agree": e["agree"]} for e in self.compatibility],
            "note": "K0 classes only; isomorphism classes of the bundles are not compared",
        }


def k0_family(L, M, j, kind="ker", verdict=None, method="exact", config=None, degree_bound=None,
              cap=MAX_DEGREE_BOUND):
    """
        Per maximal member E, the class of the s_E-chart sheaf; pairs of maximals are compared after
        restricting both classes to the projective space of their intersection.
    """
    if verdict is None:
        verdict = decide_constant_jrank(M, L, j, method, config)
    if not verdict.constant:
        raise NonConstantModuleError(f"module {M.name} is not of constant {j}-rank ({verdict.status})")
    vectors, hilbert = {}, {}
    for k in L.maximals:
        v, H, _ = chart_class(sE_chart(M, L.member(k), j), kind, degree_bound, cap)
        vectors[k], hilbert[k] = v, H
    compatibility = []
    for (a, b), c in sorted(L.intersections.items()):
        if c is None:
            continue
        n_c = L.member(c).rank
        ra, rb = k0_restrict(vectors[a], n_c), k0_restrict(vectors[b], n_c)
        compatibility.append({"pair": (a, b), "intersection": c, "restricted": (ra, rb), "agree": ra == rb})
    family = K0Family(j, kind, vectors, hilbert, compatibility)
    if not family.compatible:
        raise InvariantViolation("K0 classes disagree on an intersection of maximal charts")
    return family
