import functools
import itertools
import logging

from scipy.special import comb

from cjt.errors import ResourceLimitError

"""
    Exact linear algebra over F_p[x_0, ..., x_{n-1}]: fraction-free rank and minors.
"""

logger = logging.getLogger(__name__)

MAX_BAREISS_TERMS = 20_000
MAX_MINORS = 2_000


def generic_rank(m, max_terms=MAX_BAREISS_TERMS):
    """
        Rank of a PolyMatrix over the fraction field of its polynomial ring, by Bareiss elimination.
        After k pivots, entry (i, j) is the minor on pivot rows/cols plus row i and col j, so the division
        by the previous pivot is exact.
    """
    ring = m.ring
    A = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    prev = ring.one()
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = None
        for r in range(rank, nrows):
            if A[r][col]:
                if piv is None or len(A[r][col]) < len(A[piv][col]):
                    piv = r
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        pivot = A[rank][col]
        logger.debug("bareiss: pivot %d at column %d with %d terms", rank, col, len(pivot))
        for i in range(rank + 1, nrows):
            lead = A[i][col]
            for j in range(col + 1, ncols):
                val = pivot * A[i][j]
                if lead and A[rank][j]:
                    val = val - lead * A[rank][j]
                if val:
                    val = val.exquo(prev)
                    if len(val) > max_terms:
                        raise ResourceLimitError("max_terms", max_terms,
                                                 f"Bareiss entry with {len(val)} terms exceeds {max_terms}")
                A[i][j] = val
            A[i][col] = ring.zero()
        prev = pivot
        rank += 1
    return rank


def _laplace(m):
    """
        det(rows, cols) of a PolyMatrix by expansion along the first row, memoized on subminors.
    """
    entries = m.entries
    zero = m.ring.zero()

    @functools.lru_cache(maxsize=None)
    def det(rows, cols):
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        total = zero
        r0, rest = rows[0], rows[1:]
        for k, c in enumerate(cols):
            a = entries[r0][c]
            if not a:
                continue
            sub = det(rest, cols[:k] + cols[k + 1:])
            if sub:
                total = total - a * sub if k % 2 else total + a * sub
        return total

    return det


def minor(m, rows, cols):
    """
        The minor of a PolyMatrix on the given rows and columns (increasing index tuples).
    """
    if len(rows) != len(cols):
        raise ValueError("a minor needs as many rows as columns")
    if not rows:
        return m.ring.one()
    return _laplace(m)(tuple(rows), tuple(cols))


def count_minors(m, size):
    return comb(m.rows, size, exact=True) * comb(m.cols, size, exact=True)


def minors(m, size, max_minors=MAX_MINORS):
    """
        All size x size minors of a PolyMatrix (nonzero ones only). Raises ResourceLimitError when
        binom(rows, size) * binom(cols, size) > max_minors.
    """
    if size == 0:
        return [m.ring.one()]
    if size > min(m.rows, m.cols):
        return []
    count = count_minors(m, size)
    if count > max_minors:
        raise ResourceLimitError("max_minors", max_minors,
                                 f"binom({m.rows}, {size}) * binom({m.cols}, {size}) = {count} minors "
                                 f"exceeds {max_minors}")
    det = _laplace(m)
    out = []
    for rows in itertools.combinations(range(m.rows), size):
        for cols in itertools.combinations(range(m.cols), size):
            d = det(rows, cols)
            if d:
                out.append(d)
    logger.debug("minors: %d nonzero %dx%d minors", len(out), size, size)
    return out
