"""
    Jordan types at pi-points, generic Jordan types on charts, and the decision of constant j-rank
    and constant Jordan type (exact via minors and radical membership, sampled, or exhaustive).
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from cjt.errors import NonFlatPointError, NotNilpotentError, ResourceLimitError
from cjt.modrep import radical_action, radical_basis
from cjt.theta import pi_point, pullback_sE, section_sE, theta_chart
from utils.ffield import get_field
from utils.groebner import MAX_GB_DEGREE, MAX_GB_PAIRS, radical_membership
from utils.linalg import MAX_MINORS, generic_rank, minor, minors

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 200
DEFAULT_EXT_CAP = 3
EXHAUSTIVE_CAP = 20_000
MINOR_SAMPLES = 24
MIN_SAMPLE_FIELD = 8


@dataclass(frozen=True)
class JordanType:
    """
        Block sizes (decreasing, each <= p) and the rank profile r_s = rank(N^s), s = 0..p.
    """
    partition: tuple
    ranks: tuple
    p: int

    @classmethod
    def from_ranks(cls, ranks, p):
        ranks = tuple(int(r) for r in ranks) + (0,) * (p + 2 - len(ranks))
        blocks = []
        for s in range(p, 0, -1):
            mult = ranks[s - 1] - 2 * ranks[s] + ranks[s + 1]
            if mult < 0:
                raise ValueError(f"rank profile {ranks[:p + 1]} is not a Jordan profile")
            blocks.extend([s] * mult)
        return cls(tuple(blocks), ranks[:p + 1], p)

    @property
    def dim(self):
        return sum(self.partition)

    def multiplicities(self):
        return {s: self.partition.count(s) for s in sorted(set(self.partition), reverse=True)}

    def __add__(self, other):
        if self.p != other.p:
            raise ValueError("Jordan types of different primes")
        ranks = tuple(a + b for a, b in zip(self.ranks, other.ranks))
        return JordanType(tuple(sorted(self.partition + other.partition, reverse=True)), ranks, self.p)

    def __str__(self):
        return "[" + ", ".join(f"{s}^{k}" if k > 1 else str(s) for s, k in self.multiplicities().items()) + "]"

    def to_json(self):
        return {"partition": list(self.partition), "ranks": list(self.ranks)}


def rank_profile(field, N, p):
    N = np.asarray(N, dtype=np.int64)
    ranks = [N.shape[0]]
    power = np.eye(N.shape[0], dtype=np.int64)
    for _ in range(p):
        power = field.matmul(power, N)
        ranks.append(field.rank(power))
    return ranks


def jordan_type(field, N, p):
    ranks = rank_profile(field, N, p)
    if ranks[p] != 0:
        raise NotNilpotentError(f"N^{p} != 0")
    return JordanType.from_ranks(ranks, p)


def local_jordan_type(M, xi, require_flat=True):
    if require_flat and not xi.flat:
        raise NonFlatPointError("pi-point lies in J_E^2")
    return jordan_type(xi.field, radical_action(M, xi.E, xi.coords, xi.field), M.p)


def rank_at(M, xi, j):
    N = radical_action(M, xi.E, xi.coords, xi.field)
    return xi.field.rank(xi.field.power(N, j))


def chart_generic_ranks(M, E, via="full", basis=None):
    """
        Generic ranks of Theta_{E,M}^s for s = 1..p-1 on the full chart or the s_E chart.
    """
    theta = theta_chart(M, E, 1)
    if via == "sE":
        theta = pullback_sE(theta, E, basis)
    elif via != "full":
        raise ValueError("via must be 'full' or 'sE'")
    ranks, power = [], theta
    for s in range(1, M.p):
        if s > 1:
            power = power @ theta
        ranks.append(generic_rank(power))
        if ranks[-1] == 0:
            ranks.extend([0] * (M.p - 1 - s))
            break
    return ranks


def generic_jordan_type(M, E, via="full", basis=None):
    ranks = [M.dim] + chart_generic_ranks(M, E, via, basis) + [0]
    return JordanType.from_ranks(ranks, M.p)


# ------------------------------------ points ------------------------------------

def enumerate_flat_points(G, E, p, field, chart="full", projective=False, cap=EXHAUSTIVE_CAP, basis=None):
    """
        All flat points of J_E over F_q (chart "full"), or all s_E-lifts of nonzero vectors of J_E/J_E^2
        (chart "sE"). With projective=True only vectors whose first nonzero coordinate is 1.
    """
    rb = radical_basis(G, E, p)
    n = rb.size if chart == "full" else E.rank
    q = field.q
    count = (q ** n - 1) // (q - 1) if projective else q ** n
    if count > cap:
        raise ResourceLimitError("exhaustive_cap", cap, f"{count} points over {field} exceed the cap {cap}")
    for vec in itertools.product(range(q), repeat=n):
        nz = next((v for v in vec if v), None)
        if nz is None or (projective and nz != 1):
            continue
        if chart == "full":
            xi = pi_point(G, E, p, field, vec)
            if xi.flat:
                yield xi
        else:
            yield section_sE(G, E, p, field, vec, basis)


def random_flat_point(G, E, p, field, rng, chart="full"):
    if chart == "sE":
        while True:
            c = field.random_elements(rng, E.rank)
            if c.any():
                return section_sE(G, E, p, field, c)
    rb = radical_basis(G, E, p)
    while True:
        xi = pi_point(G, E, p, field, field.random_elements(rng, rb.size))
        if xi.flat:
            return xi


# ------------------------------------ verdicts ------------------------------------

@dataclass
class ConstancyVerdict:
    """
        status: "constant", "non_constant" or "unknown"; method: "exact", "sampled" or "exhaustive".
        `rank` is the constant rank, or the generic rank the witness falls short of.
    """
    status: str
    method: str
    j: object = None
    rank: object = None
    jordan_type: object = None
    witness: object = None
    witness_rank: object = None
    chart_ranks: dict = field(default_factory=dict)
    trials: int = 0
    extension_degrees: tuple = ()
    detail: str = ""

    @property
    def constant(self):
        return self.status == "constant"

    def to_json(self):
        out = {"status": self.status, "method": self.method, "j": self.j, "rank": self.rank,
               "chart_ranks": {str(k): v for k, v in sorted(self.chart_ranks.items())}}
        if self.jordan_type is not None:
            out["jordan_type"] = self.jordan_type.to_json()
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["witness_rank"] = self.witness_rank
        if self.method != "exact":
            out["trials"] = self.trials
            out["extension_degrees"] = list(self.extension_degrees)
        if self.detail:
            out["detail"] = self.detail
        return out


def _map(fn, items, jobs):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def find_witness(M, E, j, generic, chart="full", ext_cap=DEFAULT_EXT_CAP, samples=DEFAULT_SAMPLES, seed=0,
                 cap=EXHAUSTIVE_CAP):
    """
        A flat point of E with rank(Theta^j) below the generic rank: exhaustive over small fields,
        random beyond. With chart="sE" only s_E lifts are searched. None if nothing is found.
    """
    G, p = M.G, M.p
    rng = np.random.default_rng(seed)
    for d in range(1, ext_cap + 1):
        F = get_field(p, d)
        try:
            points = enumerate_flat_points(G, E, p, F, chart, projective=True, cap=cap)
            for xi in points:
                if rank_at(M, xi, j) < generic:
                    return xi
            continue
        except ResourceLimitError:
            pass
        for _ in range(samples):
            xi = random_flat_point(G, E, p, F, rng, chart)
            if rank_at(M, xi, j) < generic:
                return xi
    return None


def chart_operator(M, E, j, chart="sE", basis=None):
    """
        (Theta_{E,M}^j, coordinate forms of J_E/J_E^2) on one chart. On the s_E chart the variables
        y_1..y_r are the forms; on the full chart the forms are the rows of ann(J_E^2).
    """
    theta = theta_chart(M, E, 1)
    if chart == "sE":
        op = pullback_sE(theta, E, basis)
        forms = op.ring.gens()
    elif chart == "full":
        op = theta
        forms = [op.ring.linear_form(row) for row in radical_basis(M.G, E, M.p).ann]
    else:
        raise ValueError("chart must be 'full' or 'sE'")
    return (op.power(j) if j > 1 else op), forms


def _sample_field(p):
    d = 1
    while p ** d < MIN_SAMPLE_FIELD:
        d += 1
    return get_field(p, d)


def _pivot_minor(op, g, field, rng):
    """
        (rows, cols) of a g x g minor of op that does not vanish at a random F_q point, or None when the
        point has rank below g.
    """
    A = op.evaluate(field, field.random_elements(rng, op.ring.nvars))
    if field.rank(A) < g:
        return None
    rows = []
    for r in rng.permutation(op.rows):
        if field.rank(A[rows + [int(r)]]) > len(rows):
            rows.append(int(r))
            if len(rows) == g:
                break
    cols = []
    for c in rng.permutation(op.cols):
        if field.rank(A[np.ix_(rows, cols + [int(c)])]) > len(cols):
            cols.append(int(c))
            if len(cols) == g:
                break
    return tuple(sorted(rows)), tuple(sorted(cols))


def prove_constant_rank(op, g, forms, rng, samples=MINOR_SAMPLES, max_degree=MAX_GB_DEGREE,
                        max_pairs=MAX_GB_PAIRS):
    """
        Collect g x g minors that are nonzero at random points until every form lies in the radical of
        the minors found so far. Their zero set contains the rank-drop locus, so success proves constant
        rank g. False when `samples` points did not get there.
    """
    field = _sample_field(op.ring.p)
    seen, ideal = set(), []
    for _ in range(samples):
        key = _pivot_minor(op, g, field, rng)
        if key is None or key in seen:
            continue
        seen.add(key)
        ideal.append(minor(op, *key))
        if len(ideal) < op.ring.nvars:
            continue
        try:
            if all(radical_membership(f, ideal, max_degree=max_degree, max_pairs=max_pairs) for f in forms):
                logger.debug("rank %d is constant: %d minors suffice", g, len(ideal))
                return True
        except ResourceLimitError as e:
            logger.debug("minor sampling stopped at %s=%s", e.limit, e.value)
            return False
    return False


def decide_chart_jrank(M, E, j, chart="sE", max_minors=MAX_MINORS, max_degree=MAX_GB_DEGREE,
                       max_pairs=MAX_GB_PAIRS):
    """
        (generic rank g, constant?) on U_E: constant iff every coordinate form of J_E/J_E^2 lies in the
        radical of the g x g minors of Theta_{E,M}^j, all of them enumerated.
    """
    op, forms = chart_operator(M, E, j, chart)
    g = generic_rank(op)
    if g == 0:
        return g, True
    ideal = minors(op, g, max_minors=max_minors)
    for form in forms:
        if not radical_membership(form, ideal, max_degree=max_degree, max_pairs=max_pairs):
            return g, False
    return g, True


def _decide_chart(M, E, j, seed, config):
    """
        (g, constant?, witness) for one maximal chart: sampled minors first, then a witness search,
        then every minor.
    """
    chart = config.get("chart", "sE")
    max_degree = config.get("max_gb_degree", MAX_GB_DEGREE)
    max_pairs = config.get("max_gb_pairs", MAX_GB_PAIRS)
    op, forms = chart_operator(M, E, j, chart)
    g = generic_rank(op)
    if g == 0:
        return g, True, None
    rng = np.random.default_rng(seed)
    if prove_constant_rank(op, g, forms, rng, config.get("minor_samples", MINOR_SAMPLES), max_degree, max_pairs):
        return g, True, None
    xi = find_witness(M, E, j, g, chart=chart, ext_cap=config.get("ext_cap", DEFAULT_EXT_CAP),
                      samples=config.get("samples", DEFAULT_SAMPLES), seed=config.get("seed", 0),
                      cap=config.get("exhaustive_cap", EXHAUSTIVE_CAP))
    if xi is not None:
        return g, False, xi
    _, constant = decide_chart_jrank(M, E, j, chart, max_minors=config.get("minors_cap", MAX_MINORS),
                                     max_degree=max_degree, max_pairs=max_pairs)
    return g, constant, None


def _decide_exact(M, L, j, config):
    seed = config.get("seed", 0)
    results = dict(zip(L.maximals, _map(lambda k: _decide_chart(M, L.member(k), j, (seed, k), config),
                                        L.maximals, config.get("jobs", 1))))
    chart_ranks = {k: g for k, (g, _, _) in results.items()}
    for k, (g, ok, xi) in results.items():
        if not ok:
            detail = "" if xi is not None else "rank drops on U_E but no witness was found in the searched fields"
            if xi is None:
                logger.warning("no witness found for chart %d at j=%d", k, j)
            return ConstancyVerdict("non_constant", "exact", j, g, witness=xi,
                                    witness_rank=rank_at(M, xi, j) if xi is not None else None,
                                    chart_ranks=chart_ranks, detail=detail)
    ranks = sorted(set(chart_ranks.values()))
    if len(ranks) > 1:
        reference = chart_ranks[L.maximals[0]]
        k = next(k for k in L.maximals if chart_ranks[k] != reference)
        E = L.member(k)
        c = np.zeros(E.rank, dtype=np.int64)
        c[0] = 1
        xi = section_sE(M.G, E, M.p, get_field(M.p), c)
        return ConstancyVerdict("non_constant", "exact", j, reference, witness=xi, witness_rank=rank_at(M, xi, j),
                                chart_ranks=chart_ranks, detail="maximal charts have different constant ranks")
    return ConstancyVerdict("constant", "exact", j, ranks[0], chart_ranks=chart_ranks)


def _decide_sampled(M, L, j, config):
    samples = config.get("samples", DEFAULT_SAMPLES)
    ext_cap = config.get("ext_cap", DEFAULT_EXT_CAP)
    rng = np.random.default_rng(config.get("seed", 0))
    points = []
    for t in range(samples):
        F = get_field(M.p, 1 + t % ext_cap)
        k = L.maximals[t % len(L.maximals)]
        points.append((k, random_flat_point(M.G, L.member(k), M.p, F, rng)))
    ranks = _map(lambda item: rank_at(M, item[1], j), points, config.get("jobs", 1))
    return _verdict_from_ranks(M, L, j, points, ranks, "sampled", tuple(range(1, ext_cap + 1)))


def _decide_exhaustive(M, L, j, config):
    ext_cap = config.get("ext_cap", 2)
    cap = config.get("exhaustive_cap", EXHAUSTIVE_CAP)
    chart = config.get("chart", "full")
    points = []
    for d in range(1, ext_cap + 1):
        F = get_field(M.p, d)
        for k in L.maximals:
            points.extend((k, xi) for xi in enumerate_flat_points(M.G, L.member(k), M.p, F, chart,
                                                                  projective=True, cap=cap))
    ranks = _map(lambda item: rank_at(M, item[1], j), points, config.get("jobs", 1))
    return _verdict_from_ranks(M, L, j, points, ranks, "exhaustive", tuple(range(1, ext_cap + 1)))


def _verdict_from_ranks(M, L, j, points, ranks, method, degrees):
    top = max(ranks)
    chart_ranks = {}
    for (k, _), r in zip(points, ranks):
        chart_ranks[k] = max(chart_ranks.get(k, 0), r)
    for (k, xi), r in zip(points, ranks):
        if r < top:
            return ConstancyVerdict("non_constant", method, j, top, witness=xi, witness_rank=r,
                                    chart_ranks=chart_ranks, trials=len(points), extension_degrees=degrees)
    return ConstancyVerdict("constant", method, j, top, chart_ranks=chart_ranks, trials=len(points),
                            extension_degrees=degrees)


def decide_constant_jrank(M, L, j, method="exact", config=None):
    """
        Constant j-rank of M over every flat pi-point. The exact method falls back to sampling when a
        resource cap is hit (config["fallback"], default True); otherwise the verdict is "unknown".
    """
    config = dict(config or {})
    if not 1 <= j <= M.p - 1:
        raise ValueError(f"j={j} outside 1..{M.p - 1}")
    try:
        if method == "exact":
            return _decide_exact(M, L, j, config)
        if method == "sampled":
            return _decide_sampled(M, L, j, config)
        if method == "exhaustive":
            return _decide_exhaustive(M, L, j, config)
    except ResourceLimitError as e:
        if method == "exact" and config.get("fallback", True):
            logger.warning("exact decision at j=%d hit %s=%s; falling back to sampling", j, e.limit, e.value)
            verdict = _decide_sampled(M, L, j, config)
            verdict.detail = f"exact method exceeded {e.limit}={e.value}"
            return verdict
        return ConstancyVerdict("unknown", method, j, detail=str(e))
    raise ValueError(f"unknown method {method!r}")


def decide_constant_jordan_type(M, L, method="exact", config=None):
    verdicts = [decide_constant_jrank(M, L, j, method, config) for j in range(1, M.p)]
    unknown = [v for v in verdicts if v.status == "unknown"]
    if unknown:
        return ConstancyVerdict("unknown", method, detail=unknown[0].detail)
    for v in verdicts:
        if v.status == "non_constant":
            return v
    ranks = [M.dim] + [v.rank for v in verdicts] + [0]
    methods = {v.method for v in verdicts}
    return ConstancyVerdict("constant", methods.pop() if len(methods) == 1 else "mixed",
                            rank=ranks[1], jordan_type=JordanType.from_ranks(ranks, M.p),
                            trials=sum(v.trials for v in verdicts),
                            extension_degrees=verdicts[0].extension_degrees)


def check_stratum_ranks(M, L, samples=20, ext_cap=2, seed=0):
    """
        For every member E and every j: ranks of u acting on M for random u in J_E^j minus J_E^(j+1).
        Returns {(member, j): sorted list of observed ranks}.
    """
    rng = np.random.default_rng(seed)
    report = {}
    for k, E in enumerate(L.members):
        rb = radical_basis(M.G, E, M.p)
        for j in range(1, rb.nilpotency):
            span, deeper = rb.power(j), rb.power(j + 1)
            if span.shape[0] == 0:
                continue
            seen = set()
            for t in range(samples):
                F = get_field(M.p, 1 + t % ext_cap)
                while True:
                    c = F.random_elements(rng, span.shape[0])
                    u = F.combine(c, span.reshape(span.shape[0], 1, -1))[0]
                    if F.rank(np.vstack([deeper, u])) > F.rank(deeper):
                        break
                seen.add(F.rank(radical_action(M, E, u, F)))
            report[(k, j)] = sorted(seen)
    return report
