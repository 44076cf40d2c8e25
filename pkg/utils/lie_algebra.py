import numpy as np

from cjt.errors import NotNilpotentError, NotUnipotentError

"""
    Truncated exponential and logarithm between nilpotent and unipotent matrices over F_q,
    valid while the nilpotency class stays below p.
"""


def _factorial_inverse(k, p):
    f = 1
    for i in range(2, k + 1):
        f = f * i % p
    return pow(f, p - 2, p)


def nilpotency_class(field, N):
    """
        Smallest k with N^k = 0; raises NotNilpotentError if N^n != 0.
    """
    N = np.asarray(N, dtype=np.int64)
    n = N.shape[0]
    if field.is_zero(N):
        return 1 if n else 0
    power = N
    for k in range(2, n + 1):
        power = field.matmul(power, N)
        if field.is_zero(power):
            return k
    raise NotNilpotentError("matrix is not nilpotent")


def bracket(field, A, B):
    return field.msub(field.matmul(A, B), field.matmul(B, A))


def nilexp(field, N):
    """
        Maps nilpotent N --> sum_{k<p} N^k / k!.
    """
    p = field.p
    if nilpotency_class(field, N) > p - 1:
        raise NotNilpotentError(f"nilpotency class of N is not below p={p}")
    N = np.asarray(N, dtype=np.int64)
    result = field.eye(N.shape[0])
    power = result
    for k in range(1, p):
        power = field.matmul(power, N)
        if field.is_zero(power):
            break
        result = field.madd(result, field.scale(_factorial_inverse(k, p), power))
    return result


def unilog(field, u):
    """
        Maps unipotent u --> sum_{0<k<p} (-1)^(k+1) (u - I)^k / k.
    """
    p = field.p
    u = np.asarray(u, dtype=np.int64)
    N = field.msub(u, field.eye(u.shape[0]))
    try:
        cls = nilpotency_class(field, N)
    except NotNilpotentError:
        raise NotUnipotentError("u - I is not nilpotent") from None
    if cls > p - 1:
        raise NotUnipotentError(f"nilpotency class of u - I is not below p={p}")
    result = np.zeros_like(N)
    power = field.eye(u.shape[0])
    for k in range(1, p):
        power = field.matmul(power, N)
        if field.is_zero(power):
            break
        coeff = (pow(k, p - 2, p) * (1 if k % 2 else p - 1)) % p
        result = field.madd(result, field.scale(coeff, power))
    return result


def adjoint(field, x, X, x_inv=None):
    """
        Ad(x)(X) = x X x^-1.
    """
    if x_inv is None:
        x_inv = matrix_inverse(field, x)
    return field.matmul(field.matmul(x, X), x_inv)


def matrix_inverse(field, A):
    """
        Inverse of an F_p matrix by row reduction of [A | I].
    """
    if field.d != 1:
        raise ValueError("matrix_inverse is only needed over the prime field")
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, pivots = field.base.rref(np.hstack([A, np.eye(n, dtype=np.int64)]))
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]
