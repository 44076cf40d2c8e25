import functools
from dataclasses import dataclass

import numpy as np

"""
    Exact arithmetic over prime fields F_p and their extensions F_q, q = p^d.

    An element of F_q is encoded as an integer 0 <= a < q whose base-p digits are the
    coefficients of a polynomial in a fixed root alpha of the defining polynomial of F_q.
    F_p sits inside every extension as the integers 0..p-1, so F_p matrices are valid F_q matrices.

    Matrices over F_q are numpy integer arrays of encoded elements. Arithmetic works on
    "layers": the d coefficient matrices over F_p of A = sum_k A_k alpha^k.
"""

SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)
MAX_EXTENSION_DEGREE = 8


def is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def prime_factors(n):
    factors, k = [], 2
    while k * k <= n:
        while n % k == 0:
            if k not in factors:
                factors.append(k)
            n //= k
        k += 1
    if n > 1 and n not in factors:
        factors.append(n)
    return factors


class PrimeField:
    """
        F_p with vectorized row reduction on numpy arrays.
    """

    def __init__(self, p):
        if p not in SUPPORTED_PRIMES:
            raise ValueError(f"prime p={p} not supported; choose one of {SUPPORTED_PRIMES}")
        self.p = p
        self._inverse = np.array([0] + [pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64)

    def __repr__(self):
        return f"GF({self.p})"

    def reduce(self, mat):
        return np.mod(np.asarray(mat, dtype=np.int64), self.p)

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return int(self._inverse[a])

    def rref(self, mat):
        """
            Reduced row echelon form. Returns (R, pivot_cols); rows of R past len(pivot_cols) are zero.
        """
        R = self.reduce(mat)
        if R.ndim != 2:
            raise ValueError("rref expects a 2-dimensional array")
        R = R.copy()
        nrows, ncols = R.shape
        p = self.p
        pivots = []
        row = 0
        for col in range(ncols):
            if row == nrows:
                break
            nz = np.nonzero(R[row:, col])[0]
            if nz.size == 0:
                continue
            piv = row + int(nz[0])
            if piv != row:
                R[[row, piv]] = R[[piv, row]]
            R[row] = (R[row] * self._inverse[R[row, col]]) % p
            factors = R[:, col].copy()
            factors[row] = 0
            if factors.any():
                R = (R - np.outer(factors, R[row])) % p
            pivots.append(col)
            row += 1
        return R, pivots

    def rank(self, mat):
        mat = np.asarray(mat)
        if mat.size == 0:
            return 0
        return len(self.rref(mat)[1])

    def row_space(self, mat, ncols=None):
        """
            Basis (as rows, in reduced echelon form) of the span of the rows of mat.
        """
        mat = np.asarray(mat, dtype=np.int64)
        if mat.size == 0:
            width = ncols if ncols is not None else (mat.shape[1] if mat.ndim == 2 else 0)
            return np.zeros((0, width), dtype=np.int64)
        R, pivots = self.rref(mat)
        return R[:len(pivots)]

    def nullspace(self, mat, ncols=None):
        """
            Basis (as rows) of {v : mat @ v = 0}.
        """
        mat = np.asarray(mat, dtype=np.int64)
        if mat.size == 0:
            n = ncols if ncols is not None else mat.shape[1]
            return np.eye(n, dtype=np.int64)
        R, pivots = self.rref(mat)
        n = R.shape[1]
        free = [c for c in range(n) if c not in pivots]
        basis = np.zeros((len(free), n), dtype=np.int64)
        for k, f in enumerate(free):
            basis[k, f] = 1
            for i, c in enumerate(pivots):
                basis[k, c] = (-R[i, f]) % self.p
        return basis

    def in_span(self, basis, vec):
        basis = np.asarray(basis, dtype=np.int64)
        vec = self.reduce(vec).reshape(1, -1)
        if basis.size == 0:
            return not vec.any()
        return self.rank(np.vstack([basis, vec])) == self.rank(basis)

    def intersection(self, A, B):
        """
            Basis of rowspan(A) intersected with rowspan(B).
        """
        A = self.row_space(A)
        B = self.row_space(B)
        if A.shape[0] == 0 or B.shape[0] == 0:
            return np.zeros((0, max(A.shape[1], B.shape[1])), dtype=np.int64)
        # x A = y B  <=>  (x, y) [A; -B] = 0
        stacked = np.vstack([A, -B]) % self.p
        coeffs = self.nullspace(stacked.T)
        if coeffs.shape[0] == 0:
            return np.zeros((0, A.shape[1]), dtype=np.int64)
        return self.row_space(coeffs[:, :A.shape[0]] @ A)

    def coordinates(self, basis, vec):
        """
            Coordinates of vec in the row basis `basis`; raises ValueError if vec is not in the span.
        """
        basis = np.asarray(basis, dtype=np.int64)
        aug = np.vstack([basis, self.reduce(vec).reshape(1, -1)]).T
        R, pivots = self.rref(aug)
        if basis.shape[0] in pivots:
            raise ValueError("vector is not in the span of the basis")
        coords = np.zeros(basis.shape[0], dtype=np.int64)
        for i, c in enumerate(pivots):
            coords[c] = R[i, -1]
        return coords


# ----------------------------- univariate polynomials over F_p -----------------------------
# Coefficient lists, lowest degree first.

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_mod(a, m, p):
    a = _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _trim(a)
    return a


def _poly_mulmod(a, b, m, p):
    if not a or not b:
        return []
    prod = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)) % p
    return _poly_mod([int(c) for c in prod], m, p)


def _poly_powmod(base, e, m, p):
    result, base = [1], _poly_mod(base, m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _is_irreducible(m, p):
    """
        Rabin's test for a monic polynomial of degree d over F_p.
    """
    d = len(m) - 1
    x = [0, 1]
    frob = [x]
    for _ in range(d):
        frob.append(_poly_powmod(frob[-1], p, m, p))
    if _trim(frob[d]) != _trim(_poly_mod(x, m, p)):
        return False
    for ell in prime_factors(d):
        if len(_poly_gcd(list(m), _poly_sub(frob[d // ell], x, p), p)) != 1:
            return False
    return True


def _is_primitive(m, p):
    d = len(m) - 1
    order = p ** d - 1
    for ell in prime_factors(order):
        if _trim(_poly_powmod([0, 1], order // ell, m, p)) == [1]:
            return False
    return True


@functools.lru_cache(maxsize=None)
def defining_polynomial(p, d):
    """
        The first monic primitive polynomial of degree d over F_p, scanning the lower
        coefficients c_0..c_{d-1} as the base-p digits of 0, 1, 2, ...
    """
    for k in range(p ** d):
        lower = [(k // p ** i) % p for i in range(d)]
        if lower[0] == 0:
            continue
        m = lower + [1]
        if _is_irreducible(m, p) and _is_primitive(m, p):
            return tuple(m)
    raise RuntimeError(f"no primitive polynomial of degree {d} over GF({p})")


class ExtensionField:
    """
        F_q, q = p^d, as F_p[alpha] / (m(alpha)) for the defining polynomial m.
    """

    def __init__(self, p, d=1):
        if not 1 <= d <= MAX_EXTENSION_DEGREE:
            raise ValueError(f"extension degree d={d} outside 1..{MAX_EXTENSION_DEGREE}")
        self.base = PrimeField(p)
        self.p = p
        self.d = d
        self.q = p ** d
        self.modulus = defining_polynomial(p, d)
        self._place = p ** np.arange(d, dtype=np.int64)

        # Coefficients of alpha^k for 0 <= k <= 2d - 2.
        red = np.zeros((2 * d - 1, d), dtype=np.int64)
        cur = [1] + [0] * (d - 1)
        for k in range(2 * d - 1):
            red[k] = cur
            shifted = [0] + cur
            top = shifted.pop()
            cur = [(c - top * self.modulus[i]) % p for i, c in enumerate(shifted)]
        self._reduction = red

        # Multiplication-by-alpha^k matrices acting on coefficient columns.
        self._alpha_mul = np.zeros((d, d, d), dtype=np.int64)
        for k in range(d):
            for col in range(d):
                self._alpha_mul[k, :, col] = red[k + col]

    def __repr__(self):
        return f"GF({self.p}^{self.d})"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (self.p, self.d) == (other.p, other.d)

    def __hash__(self):
        return hash((self.p, self.d))

    # ------------------------------- encoding -------------------------------

    def digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._place) % self.p

    def encode(self, digits):
        digits = np.mod(np.asarray(digits, dtype=np.int64), self.p)
        return (digits * self._place).sum(axis=-1)

    def layers(self, A):
        return np.moveaxis(self.digits(A), -1, 0)

    def from_layers(self, L):
        return self.encode(np.moveaxis(np.asarray(L), 0, -1))

    def element(self, a):
        return FieldElem(self, int(a) % self.q)

    def elements(self):
        return range(self.q)

    # ------------------------------ scalar ops ------------------------------

    def add(self, a, b):
        return int(self.encode(self.digits(a) + self.digits(b)))

    def sub(self, a, b):
        return int(self.encode(self.digits(a) - self.digits(b)))

    def neg(self, a):
        return int(self.encode(-self.digits(a)))

    def mul(self, a, b):
        raw = np.convolve(self.digits(a), self.digits(b)) % self.p
        return int(self.encode(raw @ self._reduction[:len(raw)]))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, int(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if int(a) == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self!r}")
        return self.pow(a, self.q - 2)

    def frobenius(self, a, e=1):
        return self.pow(a, self.p ** e)

    def multiplication_matrix(self, a):
        """
            The d x d matrix over F_p of x -> a x on coefficient columns.
        """
        return np.tensordot(self.digits(a), self._alpha_mul, axes=(0, 0)) % self.p

    def random_elements(self, rng, size, nonzero=False):
        low = 1 if nonzero else 0
        return rng.integers(low, self.q, size=size, dtype=np.int64)

    # ------------------------------ matrix ops ------------------------------

    def reduce(self, A):
        return self.from_layers(self.layers(A))

    def is_zero(self, A):
        return not np.asarray(A).any()

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def madd(self, A, B):
        return self.from_layers((self.layers(A) + self.layers(B)) % self.p)

    def msub(self, A, B):
        return self.from_layers((self.layers(A) - self.layers(B)) % self.p)

    def scale(self, c, A):
        cd = self.digits(c)
        La = self.layers(A)
        raw = np.zeros((2 * self.d - 1,) + La.shape[1:], dtype=np.int64)
        for i in range(self.d):
            raw[i:i + self.d] += cd[i] * La
        out = np.tensordot(self._reduction, raw % self.p, axes=(0, 0)) % self.p
        return self.from_layers(out)

    def matmul(self, A, B):
        La, Lb = self.layers(A), self.layers(B)
        d, p = self.d, self.p
        raw = np.zeros((2 * d - 1, La.shape[1], Lb.shape[2]), dtype=np.int64)
        for i in range(d):
            if not La[i].any():
                continue
            for j in range(d):
                if Lb[j].any():
                    raw[i + j] += La[i] @ Lb[j]
        raw %= p
        out = np.tensordot(self._reduction, raw, axes=(0, 0)) % p
        return self.from_layers(out)

    def power(self, A, k):
        A = np.asarray(A, dtype=np.int64)
        result = self.eye(A.shape[0])
        base = A
        while k:
            if k & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            k >>= 1
        return result

    def combine(self, coeffs, mats):
        """
            sum_g coeffs[g] * mats[g] for F_q coefficients and F_p matrices.
        """
        mats = np.asarray(mats, dtype=np.int64)
        coeff_digits = self.digits(np.asarray(coeffs, dtype=np.int64))  # (k, d)
        L = np.tensordot(coeff_digits.T, mats, axes=(1, 0)) % self.p  # (d, n, m)
        return self.from_layers(L)

    def flatten(self, A):
        """
            The F_p matrix of the F_q-linear map A on F_q^m = F_p^{md}.
        """
        L = self.layers(A)
        blocks = sum(np.kron(L[k], self._alpha_mul[k]) for k in range(self.d))
        return blocks % self.p

    def rank(self, A):
        A = np.asarray(A, dtype=np.int64)
        if A.size == 0:
            return 0
        if self.d == 1:
            return self.base.rank(A)
        return self.base.rank(self.flatten(A)) // self.d


@functools.lru_cache(maxsize=None)
def get_field(p, d=1):
    return ExtensionField(p, d)


@dataclass(frozen=True)
class FieldElem:
    """
        A single element of F_q with operator syntax; bulk work uses ExtensionField directly.
    """
    field: ExtensionField
    value: int

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return int(other) % self.field.p

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.value, self._coerce(other)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __pow__(self, e):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.value))

    def frobenius(self, e=1):
        return FieldElem(self.field, self.field.frobenius(self.value, e))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value
