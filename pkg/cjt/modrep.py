"""
    kG-modules given by generator matrices, augmentation-ideal bases J_E with their radical powers,
    and the action of radical vectors.
"""

import functools
import logging
import threading

import numpy as np

from cjt.errors import ModuleRelationError, ModuleSpecError, SingularMatrixError
from utils.ffield import PrimeField

logger = logging.getLogger(__name__)

RADICAL_CACHE_SIZE = 256


class ModuleRep:
    """
        A finite dimensional kG-module over F_p. Per-element matrices are built on demand along the
        breadth-first factorization of the group and memoized.
    """

    def __init__(self, G, gen_matrices, p, name="module", validate=True):
        self.G = G
        self.p = p
        self.F = PrimeField(p)
        self.name = name
        gen_matrices = [self.F.reduce(A) for A in gen_matrices]
        if len(gen_matrices) != len(G.generators):
            raise ModuleSpecError(f"expected {len(G.generators)} generator matrices, got {len(gen_matrices)}")
        if not gen_matrices:
            raise ModuleSpecError("no generator matrices")
        self.dim = gen_matrices[0].shape[0]
        for A in gen_matrices:
            if A.shape != (self.dim, self.dim):
                raise ModuleSpecError("generator matrices must be square of equal dimension")
            if self.F.rank(A) != self.dim:
                raise SingularMatrixError("generator matrix is singular")
        self.gen_matrices = gen_matrices
        self._memo = {0: np.eye(self.dim, dtype=np.int64)}
        self._lock = threading.Lock()
        self.shift_cache = {}
        if validate:
            self.validate()

    def __repr__(self):
        return f"ModuleRep({self.name}, dim={self.dim}, p={self.p})"

    def matrix(self, g):
        g = int(g)
        with self._lock:
            if g in self._memo:
                return self._memo[g]
            path = []
            cur = g
            while cur not in self._memo:
                parent, pos = self.G.words[cur]
                path.append((cur, pos))
                cur = parent
            for elem, pos in reversed(path):
                parent = self.G.words[elem][0]
                self._memo[elem] = (self._memo[parent] @ self.gen_matrices[pos]) % self.p
            return self._memo[g]

    def cached_shifts(self, key, build):
        """
            shift_cache[key], filled by build() outside the lock; the first stored value wins.
        """
        with self._lock:
            cached = self.shift_cache.get(key)
        if cached is None:
            shifts = build()
            with self._lock:
                cached = self.shift_cache.setdefault(key, shifts)
        return cached

    def all_matrices(self):
        return np.array([self.matrix(g) for g in range(self.G.order)])

    def validate(self):
        """
            rho(g) rho(h) == rho(gh) on the whole table.
        """
        mats = self.all_matrices()
        for g in range(self.G.order):
            prods = np.einsum("ij,hjk->hik", mats[g], mats) % self.p
            bad = np.nonzero((prods != mats[self.G.table[g]]).any(axis=(1, 2)))[0]
            if bad.size:
                raise ModuleRelationError(g, int(bad[0]))

    def restrict(self, H, embedding):
        """
            Restriction to a subgroup H given with its embedding into G.
        """
        mats = [self.matrix(embedding[h]) for h in H.generators]
        return ModuleRep(H, mats, self.p, name=f"{self.name}|{H.name}", validate=False)

    def direct_sum(self, other):
        mats = []
        for A, B in zip(self.gen_matrices, other.gen_matrices):
            S = np.zeros((A.shape[0] + B.shape[0],) * 2, dtype=np.int64)
            S[:A.shape[0], :A.shape[0]] = A
            S[A.shape[0]:, A.shape[0]:] = B
            mats.append(S)
        return ModuleRep(self.G, mats, self.p, name=f"{self.name}+{other.name}", validate=False)

    def to_json(self):
        return {"name": self.name, "dim": self.dim, "prime": self.p,
                "generators": [A.tolist() for A in self.gen_matrices]}


def load_module(G, gen_matrices, p=None, name="module"):
    p = p if p is not None else G.prime
    if p is None:
        raise ModuleSpecError("module needs a prime")
    return ModuleRep(G, gen_matrices, p, name=name)


def builtin_module(G, p, spec):
    """
        Module from a builtin description: "trivial", "regular", "natural", "radical:j", "cyclic:k",
        "sym:m", or several joined by "+".
    """
    from cjt import families
    parts = [s.strip() for s in spec.split("+")]
    result = None
    for part in parts:
        name, *params = part.split(":")
        builder = families.MODULE_FAMILIES.get(name)
        if builder is None:
            raise ModuleSpecError(f"unknown module {name!r}")
        try:
            mats = builder(G, p, *params)
        except (TypeError, ValueError) as e:
            raise ModuleSpecError(f"bad parameters for module {part!r}: {e}") from None
        M = ModuleRep(G, mats, p, name=part, validate=name not in ("trivial", "regular"))
        result = M if result is None else result.direct_sum(M)
    result.name = spec
    return result


class RadicalBasis:
    """
        J_E with basis g - e (g != e) ordered lexicographically by the exponent vector of g in the
        chosen basis of E, the radical powers J_E^j as row spaces in those coordinates, and the
        annihilator of J_E^2 (the coordinate forms of J_E / J_E^2).
    """

    def __init__(self, G, E, p):
        self.G = G
        self.E = E
        self.p = p
        self.F = PrimeField(p)
        self.order = sorted(E.nonidentity(), key=E.exponent)
        self.size = len(self.order)
        self.position = {g: i for i, g in enumerate(self.order)}
        self.nilpotency = E.rank * (p - 1) + 1
        self._powers = {1: np.eye(self.size, dtype=np.int64)}
        self.ann = np.array([[E.exponent(g)[i] for g in self.order] for i in range(E.rank)],
                            dtype=np.int64).reshape(E.rank, self.size)
        idx = {g: k for k, g in enumerate(E.elements)}
        self._table = np.array([[idx[G.mul(g, h)] for h in E.elements] for g in E.elements], dtype=np.int64)

    def to_group_algebra(self, a):
        """
            J coordinates -> vector on E.elements (sum a_g (g - e)).
        """
        v = np.zeros(len(self.E), dtype=np.int64)
        idx = {g: k for k, g in enumerate(self.E.elements)}
        for g, c in zip(self.order, a):
            v[idx[g]] += c
            v[0] -= c
        return v % self.p

    def from_group_algebra(self, v):
        idx = {g: k for k, g in enumerate(self.E.elements)}
        return np.array([v[idx[g]] for g in self.order], dtype=np.int64) % self.p

    def multiply(self, a, b):
        """
            Product in J of two coordinate vectors over F_p.
        """
        u, w = self.to_group_algebra(a), self.to_group_algebra(b)
        out = np.zeros(len(self.E), dtype=np.int64)
        np.add.at(out, self._table.ravel(), np.outer(u, w).ravel())
        return self.from_group_algebra(out % self.p)

    def power(self, j):
        if j < 1:
            raise ValueError("radical power needs j >= 1")
        top = max(k for k in self._powers if k <= j)
        current = self._powers[top]
        for k in range(top + 1, j + 1):
            if current.shape[0] == 0:
                self._powers[k] = current
                continue
            products = [self.multiply(np.eye(self.size, dtype=np.int64)[i], row)
                        for i in range(self.size) for row in current]
            current = self.F.row_space(np.array(products), ncols=self.size)
            self._powers[k] = current
            logger.debug("radical power J^%d of rank-%d subgroup: dim %d", k, self.E.rank, current.shape[0])
        return self._powers[j]

    def dims(self):
        return [self.power(j).shape[0] for j in range(1, self.nilpotency + 1)]

    def quotient_coordinates(self, g):
        """
            Image of g - e in J/J^2 in the basis (g_i - e): the exponent vector of g.
        """
        return np.array(self.E.exponent(g), dtype=np.int64)

    def level(self, a):
        """
            Largest j with a in J^j (a over F_p); 0 gives the nilpotency bound.
        """
        a = self.F.reduce(a)
        if not a.any():
            return self.nilpotency
        j = 1
        while j + 1 <= self.nilpotency and self.F.in_span(self.power(j + 1), a):
            j += 1
        return j

    def shift_matrices(self, M):
        """
            rho(g) - I for g in basis order, as an array (size, m, m).
        """
        def build():
            eye = np.eye(M.dim, dtype=np.int64)
            return np.array([(M.matrix(g) - eye) % self.p for g in self.order]).reshape(self.size, M.dim, M.dim)
        return M.cached_shifts((self.E.elements, self.E.basis), build)


@functools.lru_cache(maxsize=RADICAL_CACHE_SIZE)
def radical_basis(G, E, p):
    return RadicalBasis(G, E, p)


def radical_power_basis(G, E, p, j):
    if j < 1:
        raise ValueError("radical power needs j >= 1")
    return radical_basis(G, E, p).power(j)


def radical_action(M, E, a, field):
    """
        sum_g a_g (rho(g) - I) over F_q, a indexed by the J_E basis order.
    """
    rb = radical_basis(M.G, E, M.p)
    a = np.asarray(a, dtype=np.int64)
    if a.shape != (rb.size,):
        raise ValueError(f"expected {rb.size} coefficients, got shape {a.shape}")
    return field.combine(a, rb.shift_matrices(M))


def radical_level(G, E, p, a):
    return radical_basis(G, E, p).level(a)
