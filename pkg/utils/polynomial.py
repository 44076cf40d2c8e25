import functools
import itertools

import numpy as np
from sympy.polys import rings
from sympy.polys.domains import GF
from sympy.polys.orderings import grevlex

"""
    Multivariate polynomials over F_p and matrices of them.

    Polynomials are sympy sparse ring elements (PolyElement, a dict exponent-tuple -> coefficient) in
    graded reverse lexicographic order. PolyRing names the variables and carries the operations that
    move polynomials between rings or out to F_q.
"""


@functools.lru_cache(maxsize=None)
def _base_ring(p, names):
    return rings.PolyRing(names, GF(p, symmetric=False), grevlex)


def total_degree(f):
    return max((sum(e) for e in f.itermonoms()), default=-1)


def is_homogeneous(f, degree=None):
    degrees = {sum(e) for e in f.itermonoms()}
    if not degrees:
        return True
    return len(degrees) == 1 and (degree is None or degree in degrees)


def int_terms(f):
    """
        (exponents, coefficient in 0..p-1) pairs of f.
    """
    return [(e, int(c)) for e, c in f.iterterms()]


class PolyRing:
    """
        F_p[x_0, ..., x_{n-1}] with named variables; elements live in the sympy ring `self.base`.
    """

    def __init__(self, p, names):
        self.p = p
        self.names = tuple(names)
        self.nvars = len(self.names)
        if len(set(self.names)) != self.nvars:
            raise ValueError("variable names must be distinct")
        self.base = _base_ring(p, self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and (self.p, self.names) == (other.p, other.names)

    def __hash__(self):
        return hash((self.p, self.names))

    def __repr__(self):
        return f"GF({self.p})[{', '.join(self.names)}]"

    def zero(self):
        return self.base.zero

    def one(self):
        return self.base.one

    def constant(self, c):
        return self.base.ground_new(int(c) % self.p)

    def gen(self, i):
        return self.base.gens[i]

    def gens(self):
        return list(self.base.gens)

    def index(self, name):
        return self.names.index(name)

    def from_terms(self, terms):
        """
            Polynomial from a dict exponents -> integer coefficient (reduced mod p).
        """
        return self.base.from_dict({e: int(c) % self.p for e, c in terms.items() if int(c) % self.p})

    def linear_form(self, coeffs):
        terms = {}
        for i, c in enumerate(coeffs):
            if int(c) % self.p:
                exps = [0] * self.nvars
                exps[i] = 1
                terms[tuple(exps)] = int(c)
        return self.from_terms(terms)

    def relabel(self, f, positions, target):
        """
            Monomial map x_i -> y_{positions[i]}; positions[i] = None sends x_i to 0.
        """
        terms = {}
        for exps, c in int_terms(f):
            if any(e and positions[i] is None for i, e in enumerate(exps)):
                continue
            new = [0] * target.nvars
            for i, e in enumerate(exps):
                if e:
                    new[positions[i]] += e
            key = tuple(new)
            terms[key] = terms.get(key, 0) + c
        return target.from_terms(terms)

    def frobenius(self, f, e=1):
        """
            x -> x^(p^e) on every variable; F_p coefficients are fixed.
        """
        q = self.p ** e
        return self.from_terms({tuple(k * q for k in exps): c for exps, c in int_terms(f)})

    def evaluate(self, f, field, point):
        """
            Value at a point over F_q (encoded elements, one per variable).
        """
        total = 0
        for exps, c in int_terms(f):
            val = c
            for i, e in enumerate(exps):
                if e:
                    val = field.mul(val, field.pow(int(point[i]), e))
            total = field.add(total, val)
        return total

    def coefficient_vector(self, f, degree):
        """
            Coefficients of the degree-`degree` part in the ring's monomial basis for that degree.
        """
        index = self.monomial_index(degree)
        vec = np.zeros(len(index), dtype=np.int64)
        for exps, c in int_terms(f):
            if sum(exps) == degree:
                vec[index[exps]] = c
        return vec

    def to_json(self, f):
        return [[list(exps), c] for exps, c in sorted(int_terms(f), key=lambda t: grevlex(t[0]), reverse=True)]

    def monomials(self, degree):
        return _monomials(self.nvars, degree)

    def monomial_index(self, degree):
        return _monomial_index(self.nvars, degree)


@functools.lru_cache(maxsize=None)
def _monomials(nvars, degree):
    """
        All exponent tuples of the given total degree, in decreasing grevlex order.
    """
    if nvars == 0:
        return ((),) if degree == 0 else ()
    monos = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        monos.append(tuple(exps))
    monos.sort(key=grevlex, reverse=True)
    return tuple(monos)


@functools.lru_cache(maxsize=None)
def _monomial_index(nvars, degree):
    return {m: i for i, m in enumerate(_monomials(nvars, degree))}


class PolyMatrix:
    """
        rows x cols matrix of polynomials over one PolyRing, with an optional homogeneous-degree tag.
    """

    def __init__(self, ring, entries, degree=None):
        self.ring = ring
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if degree is not None:
            for row in self.entries:
                for f in row:
                    if f and not is_homogeneous(f, degree):
                        raise ValueError(f"entry {f} is not homogeneous of degree {degree}")
        self.degree = degree
        self._coeff_tensor = None

    @classmethod
    def zeros(cls, ring, rows, cols, degree=None):
        return cls(ring, [[ring.zero() for _ in range(cols)] for _ in range(rows)], degree)

    @classmethod
    def from_constant(cls, ring, mat):
        mat = np.asarray(mat, dtype=np.int64)
        return cls(ring, [[ring.constant(int(v)) for v in row] for row in mat], degree=0)

    @classmethod
    def linear_combination(cls, ring, mats):
        """
            sum_i x_i * mats[i] for F_p matrices mats[i], one per variable of the ring.
        """
        mats = np.asarray(mats, dtype=np.int64) % ring.p
        n = mats.shape[1]
        entries = []
        for a in range(n):
            row = []
            for b in range(mats.shape[2]):
                row.append(ring.linear_form(mats[:, a, b]))
            entries.append(row)
        return cls(ring, entries, degree=1)

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols} over {self.ring}, degree={self.degree})"

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def is_zero(self):
        return not any(f for row in self.entries for f in row)

    def map(self, fn, ring=None, degree=None):
        return PolyMatrix(ring or self.ring, [[fn(f) for f in row] for row in self.entries], degree)

    def __add__(self, other):
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
                          self.degree if self.degree == other.degree else None)

    def __sub__(self, other):
        return PolyMatrix(self.ring, [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
                          self.degree if self.degree == other.degree else None)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        p = self.ring.p
        monos_a, Ta = self._tensor()
        monos_b, Tb = other._tensor()
        acc = {}
        for a, ma in enumerate(monos_a):
            A = Ta[:, :, a]
            for b, mb in enumerate(monos_b):
                key = tuple(x + y for x, y in zip(ma, mb))
                prod = A @ Tb[:, :, b]
                acc[key] = (acc[key] + prod) % p if key in acc else prod % p
        terms = [[{} for _ in range(other.cols)] for _ in range(self.rows)]
        for key, mat in acc.items():
            for i, j in zip(*np.nonzero(mat)):
                terms[i][j][key] = int(mat[i, j])
        entries = [[self.ring.from_terms(t) for t in row] for row in terms]
        degree = None
        if self.degree is not None and other.degree is not None:
            degree = self.degree + other.degree
        return PolyMatrix(self.ring, entries, degree)

    def power(self, k):
        if k < 1:
            raise ValueError("power must be >= 1")
        result = self
        for _ in range(k - 1):
            result = result @ self
        return result

    def conjugate(self, P, P_inv):
        """
            P * self * P^{-1} for constant F_p matrices.
        """
        left = PolyMatrix.from_constant(self.ring, P)
        right = PolyMatrix.from_constant(self.ring, P_inv)
        out = left @ self @ right
        return PolyMatrix(self.ring, out.entries, self.degree)

    def relabel(self, positions, target):
        return self.map(lambda f: self.ring.relabel(f, positions, target), ring=target, degree=self.degree)

    def frobenius(self, e=1):
        degree = None if self.degree is None else self.degree * self.ring.p ** e
        return self.map(lambda f: self.ring.frobenius(f, e), degree=degree)

    def nterms(self):
        return max((len(f) for row in self.entries for f in row), default=0)

    def _tensor(self):
        if self._coeff_tensor is None:
            monos = sorted({e for row in self.entries for f in row for e in f.itermonoms()}, key=grevlex)
            index = {m: i for i, m in enumerate(monos)}
            T = np.zeros((self.rows, self.cols, len(monos)), dtype=np.int64)
            for i, row in enumerate(self.entries):
                for j, f in enumerate(row):
                    for e, c in int_terms(f):
                        T[i, j, index[e]] = c
            self._coeff_tensor = (monos, T)
        return self._coeff_tensor

    def evaluate(self, field, point):
        """
            The F_q matrix obtained by substituting the point (encoded elements) for the variables.
        """
        monos, T = self._tensor()
        if not monos:
            return np.zeros((self.rows, self.cols), dtype=np.int64)
        values = []
        for exps in monos:
            val = 1
            for i, e in enumerate(exps):
                if e:
                    val = field.mul(val, field.pow(int(point[i]), e))
            values.append(val)
        digits = field.digits(np.array(values, dtype=np.int64))  # (nmon, d)
        L = np.tensordot(digits.T, np.moveaxis(T, 2, 0), axes=(1, 0)) % field.p
        return field.from_layers(L)

    def degree_map(self, d, extra):
        """
            The F_p matrix of S_d^cols -> S_{d+extra}^rows, v -> self * v, for a homogeneous matrix
            of degree `extra`. Columns are indexed (basis vector, monomial) and rows likewise.
        """
        src = self.ring.monomials(d)
        dst_index = self.ring.monomial_index(d + extra)
        nsrc, ndst = len(src), len(dst_index)
        out = np.zeros((self.rows * ndst, self.cols * nsrc), dtype=np.int64)
        p = self.ring.p
        for i in range(self.rows):
            for j in range(self.cols):
                f = self.entries[i][j]
                if not f:
                    continue
                terms = int_terms(f)
                for s, mono in enumerate(src):
                    for e, c in terms:
                        key = tuple(a + b for a, b in zip(e, mono))
                        r = i * ndst + dst_index[key]
                        out[r, j * nsrc + s] = (out[r, j * nsrc + s] + c) % p
        return out

    def to_json(self):
        return [[self.ring.to_json(f) for f in row] for row in self.entries]
