"""
    Command-line front end: builds the group, lattice and module from a job description, runs one
    command and writes a JSON report (stdout or --out). A summary table goes to stderr.

    Exit status: 0 ok, 1 a checked property failed, 2 bad input, 3 a decision stayed unknown.
"""

import argparse
import dataclasses
import json
import logging
import sys

import numpy as np
import sympy
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from cjt import sheafk, springer
from cjt.errors import (InputError, InvariantViolation, LatticeError, NonConstantModuleError, NonIntegralClassError,
                        NonStabilizingError, NotNilpotentError, NotUnipotentError, ResourceLimitError)
from cjt.grouplat import ElabLattice, build_group, subgroup_table
from cjt.jordan import (DEFAULT_EXT_CAP, DEFAULT_SAMPLES, EXHAUSTIVE_CAP, JordanType,
                        decide_constant_jrank, enumerate_flat_points, generic_jordan_type,
                        local_jordan_type, random_flat_point, rank_at)
from cjt.modrep import builtin_module, load_module, radical_action, radical_basis
from cjt.theta import pi_point, restrict_family, section_sE, theta_family
from utils.ffield import get_field, is_prime
from utils.linalg import MAX_MINORS
from utils.read_input import parse_group_arg, parse_module_arg, read_config

logger = logging.getLogger(__name__)

SCHEMA = 1
COMMANDS = ("lattice", "theta", "jordan", "cjt", "bundle", "springer", "verify")
METHODS = ("exact", "sampled", "exhaustive")

CHECK_REFERENCES = {
    "lattice.conjugation_preserves_rank": "conjugation permutes the elementary abelian subgroups of each rank",
    "lattice.flat_point_gluing": "a flat point of a subgroup stays flat in every larger member",
    "radical.quotient_map": "g - e maps to sum_i c_i (g_i - e) in J_E / J_E^2",
    "theta.chart_compatibility": "chart operators agree on the intersections of maximal members",
    "theta.p_nilpotent": "the universal operator is p-nilpotent on every chart",
    "theta.equivariance": "relabelling by x and conjugating by rho(x) permutes the charts",
    "theta.specialization": "the operator specialized at a pi-point is the action of that point",
    "theta.naturality": "restriction to a subgroup equals the operator built for the subgroup",
    "jordan.local_below_generic": "ranks at a point are bounded by the generic ranks of its chart",
    "cjt.witness_rank_drop": "a witness point has rank below the generic rank",
    "bundle.constant_jrank": "graded pieces are vector bundles only for constant j-rank",
    "sheaf.euler_additivity": "[ker] + [im] and [im] + [coker] are multiples of the free class",
    "sheaf.k0_reconstructs_hilbert": "the K0 class determines the Hilbert polynomial",
    "sheaf.splitting_matches_hilbert": "splitting type on P^1 gives the rank and degree of the kernel",
    "sheaf.basis_independence": "the K0 class does not depend on the basis of E",
    "sheaf.family_compatible": "chart classes agree after restriction to the intersections",
    "sheaf.k0_integral": "the class of a bundle in K0 has integer coordinates",
    "springer.exp_log_inverse": "exp and log are inverse on unipotent elements",
    "springer.commuting_logs": "logs of commuting elements commute",
    "springer.elementary_subalgebras": "log carries elementary abelian subgroups to elementary subalgebras",
    "springer.conjugation": "log commutes with conjugation",
    "springer.kills_radical_square": "the linearization kills J_E^2",
    "springer.ell_r_commuting": "the components of a truncated point commute",
    "springer.ell_r_truncation": "truncating a point keeps its lower components",
    "springer.ell_r_axis": "on a basis axis the components are Frobenius twists of one log",
    "springer.rank_compare": "group and Lie ranks agree for constant j-rank modules",
    "invariant": "a guaranteed property of the construction",
}

# exceptions that mean a checked property failed, with the property they report
FAILED_PROPERTY = (
    (InvariantViolation, "invariant"),
    (NonIntegralClassError, "sheaf.k0_integral"),
    (NotNilpotentError, "theta.p_nilpotent"),
    (NonConstantModuleError, "bundle.constant_jrank"),
)


@dataclasses.dataclass
class JobConfig:
    command: str
    group: str
    module: str = "regular"
    prime: int = None
    j: int = 1
    method: str = "exact"
    degree_bound: int = None
    samples: int = DEFAULT_SAMPLES
    ext_cap: int = DEFAULT_EXT_CAP
    seed: int = 0
    out: str = None
    jobs: int = 1
    minors_cap: int = MAX_MINORS
    degree_cap: int = sheafk.MAX_DEGREE_BOUND
    exhaustive_cap: int = EXHAUSTIVE_CAP

    def validate(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.method not in METHODS:
            raise InputError(f"method must be one of {METHODS}")
        if self.prime is not None and not is_prime(self.prime):
            raise InputError(f"{self.prime} is not prime")
        for name in ("samples", "ext_cap", "jobs", "minors_cap", "degree_cap", "exhaustive_cap"):
            if getattr(self, name) < 1:
                raise InputError(f"{name} must be positive")
        if self.degree_bound is not None and not 0 <= self.degree_bound <= self.degree_cap:
            raise InputError(f"degree bound must lie in 0..{self.degree_cap}")
        return self

    def decision_config(self):
        return {"jobs": self.jobs, "minors_cap": self.minors_cap, "ext_cap": self.ext_cap,
                "samples": self.samples, "seed": self.seed, "exhaustive_cap": self.exhaustive_cap}

    def to_json(self):
        return dataclasses.asdict(self)


class Report:
    def __init__(self, command, job):
        self.command = command
        self.job = job
        self.result = {}
        self.checks = []
        self.unknown = False

    def check(self, prop, passed, detail=""):
        passed = bool(passed)
        self.checks.append({"property": prop, "passed": passed, "detail": detail,
                            "reference": CHECK_REFERENCES.get(prop, "")})
        if not passed:
            logger.warning("check %s failed %s", prop, detail)
        return passed

    @property
    def failed(self):
        return any(not c["passed"] for c in self.checks)

    def status(self):
        if self.failed:
            return 1
        return 3 if self.unknown else 0

    def to_json(self):
        return {"schema": SCHEMA, "command": self.command, "config": self.job.to_json(),
                "seed": self.job.seed, "result": self.result, "checks": self.checks}


# ------------------------------------ setup ------------------------------------

def load_job(job):
    """
        (G, L, M) for a validated job; the prime defaults to the matrix group's prime.
    """
    try:
        G = build_group(parse_group_arg(job.group))
    except ValueError as e:
        raise InputError(str(e)) from None
    p = job.prime if job.prime is not None else G.prime
    if p is None:
        raise InputError(f"group {G.name} has no prime of its own; pass --prime")
    job.prime = p
    if not 1 <= job.j <= p - 1:
        raise InputError(f"j={job.j} outside 1..{p - 1}")
    try:
        L = ElabLattice(G, p)
    except LatticeError as e:
        raise InputError(str(e)) from None
    try:
        spec = parse_module_arg(job.module)
    except ValueError as e:
        raise InputError(str(e)) from None
    if "builtin" in spec:
        M = builtin_module(G, p, spec["builtin"])
    else:
        if spec["prime"] is not None and spec["prime"] != p:
            raise InputError(f"module file is over GF({spec['prime']}), job is over GF({p})")
        M = load_module(G, spec["generators"], p, name=spec["name"])
    logger.info("%s: order %d, %d lattice members; module %s of dimension %d",
                G.name, G.order, len(L.members), M.name, M.dim)
    return G, L, M


def random_points(G, L, p, job, rng, count):
    points = []
    for t in range(count):
        F = get_field(p, 1 + t % job.ext_cap)
        k = L.maximals[t % len(L.maximals)]
        points.append(random_flat_point(G, L.member(k), p, F, rng))
    return points


def alternative_bases(G, E, p):
    """
        Up to three bases of E: its own, reversed, and with the second element replaced by the product of
        the first two (or the first squared when E is cyclic and p > 2).
    """
    b = list(E.basis)
    out = [tuple(b)]
    if len(b) > 1:
        out.append(tuple(reversed(b)))
        sheared = list(b)
        sheared[1] = G.mul(b[0], b[1])
        out.append(tuple(sheared))
    elif p > 2:
        out.append((G.power(b[0], 2),))
    return out


# ------------------------------------ commands ------------------------------------

def cmd_lattice(job, G, L, M, report):
    p = job.prime
    ranks = sorted({E.rank for E in L.members})
    result = L.to_json()
    result["counts"] = {str(r): len(L.rank_members(r)) for r in ranks}
    for x in G.generators:
        report.check("lattice.conjugation_preserves_rank",
                     all(L.member(int(L.conjugation[k, x])).rank == E.rank for k, E in enumerate(L.members)),
                     f"x={x}")
    F = get_field(p)
    for small, big in sorted(L.graph.edges):
        E_small, E_big = L.member(small), L.member(big)
        c = np.zeros(E_small.rank, dtype=np.int64)
        c[0] = 1
        xi = section_sE(G, E_small, p, F, c)
        rb_small, rb_big = radical_basis(G, E_small, p), radical_basis(G, E_big, p)
        coords = np.zeros(rb_big.size, dtype=np.int64)
        for g, a in zip(rb_small.order, xi.coords):
            coords[rb_big.position[g]] = a
        report.check("lattice.flat_point_gluing", pi_point(G, E_big, p, F, coords).flat, f"{small} -> {big}")
    for k in L.maximals:
        E = L.member(k)
        rb = radical_basis(G, E, p)
        square = rb.power(2)
        ok = True
        for g in E.nonidentity():
            a = np.zeros(rb.size, dtype=np.int64)
            a[rb.position[g]] = 1
            for b, c in zip(E.basis, rb.quotient_coordinates(g)):
                a[rb.position[b]] -= c
            ok &= bool(rb.F.in_span(square, a % p))
        report.check("radical.quotient_map", ok, f"chart {k}")
    logger.info("lattice: %s by rank, maximals %s", result["counts"], L.maximals)
    return result


def cmd_theta(job, G, L, M, report):
    p = job.prime
    theta = theta_family(L, M, job.j, check=False)
    result = theta.to_json()
    pairs = theta.check_compatibility()
    report.check("theta.chart_compatibility", all(agree for _, agree in pairs),
                 f"{sum(agree for _, agree in pairs)}/{len(pairs)} intersections agree")
    base = theta if job.j == 1 else theta_family(L, M, 1, check=False)
    report.check("theta.p_nilpotent", base.verify_p_nilpotent())
    for x in G.generators:
        report.check("theta.equivariance", base.check_equivariance(x), f"x={x}")
    rng = np.random.default_rng(job.seed)
    agree = 0
    points = random_points(G, L, p, job, rng, min(job.samples, 100))
    for xi in points:
        expected = xi.field.power(radical_action(M, xi.E, xi.coords, xi.field), job.j)
        agree += bool(np.array_equal(theta.specialize(xi), expected))
    report.check("theta.specialization", agree == len(points), f"{agree}/{len(points)} points")
    for k, E in enumerate(L.members):
        restricted, embedding = restrict_family(theta, E.elements)
        H, _ = subgroup_table(G, E.elements)
        direct = theta_family(ElabLattice(H, p), M.restrict(H, embedding), job.j, check=False)
        report.check("theta.naturality", restricted.charts == direct.charts, f"subgroup {k}")
    return result


def cmd_jordan(job, G, L, M, report):
    p = job.prime
    result = {"generic": {}, "local": {}}
    generic = {}
    for k in L.maximals:
        try:
            generic[k] = generic_jordan_type(M, L.member(k))
            result["generic"][str(k)] = generic[k].to_json()
        except ResourceLimitError as e:
            logger.warning("generic Jordan type of chart %d: %s", k, e)
            result["generic"][str(k)] = {"status": "unknown", "detail": str(e)}
            report.unknown = True
    rng = np.random.default_rng(job.seed)
    counts = {}
    below = True
    for xi in random_points(G, L, p, job, rng, job.samples):
        jt = local_jordan_type(M, xi)
        counts[str(jt)] = counts.get(str(jt), 0) + 1
        k = L.containing_maximals(xi.E)[0]
        if k in generic:
            below &= all(a <= b for a, b in zip(jt.ranks, generic[k].ranks))
    result["local"] = dict(sorted(counts.items()))
    report.check("jordan.local_below_generic", below)
    return result


def _verify_witness(M, verdict, report):
    if verdict.status == "non_constant" and verdict.witness is not None:
        r = rank_at(M, verdict.witness, verdict.j)
        report.check("cjt.witness_rank_drop", r != verdict.rank, f"j={verdict.j}: {r} vs {verdict.rank}")


def cmd_cjt(job, G, L, M, report):
    verdicts = {}
    for j in range(1, job.prime):
        v = decide_constant_jrank(M, L, j, job.method, job.decision_config())
        verdicts[j] = v
        _verify_witness(M, v, report)
        if v.status == "unknown":
            report.unknown = True
        logger.info("j=%d: %s (%s)", j, v.status, v.method)
    result = {"verdicts": {str(j): v.to_json() for j, v in verdicts.items()}}
    if all(v.constant for v in verdicts.values()):
        ranks = [M.dim] + [verdicts[j].rank for j in range(1, job.prime)] + [0]
        result["jordan_type"] = JordanType.from_ranks(ranks, job.prime).to_json()
    result["constant_jordan_type"] = all(v.constant for v in verdicts.values())
    return result


def cmd_bundle(job, G, L, M, report):
    p, j = job.prime, job.j
    verdict = decide_constant_jrank(M, L, j, job.method, job.decision_config())
    result = {"verdict": verdict.to_json()}
    if verdict.status == "unknown":
        report.unknown = True
        return result
    if not report.check("bundle.constant_jrank", verdict.constant, f"{verdict.status} at j={j}"):
        return result
    charts = []
    for k in L.maximals:
        E = L.member(k)
        chart = sheafk.sE_chart(M, E, j)
        ident = sheafk.euler_identities(chart, job.degree_bound, job.degree_cap)
        report.check("sheaf.euler_additivity", ident["ker_plus_im"] and ident["im_plus_coker"], f"chart {k}")
        v, H, T = sheafk.chart_class(chart, "ker", job.degree_bound, job.degree_cap)
        entry = {"chart": k, "subgroup": E.to_json(), "h": T.dims, "hilbert": H.to_json(), "rank": H.rank,
                 "degree": str(H.degree), "k0": {kind: c.to_json() for kind, c in ident["classes"].items()}}
        report.check("sheaf.k0_reconstructs_hilbert",
                     sympy.expand(v.hilbert_polynomial() - H.polynomial) == 0, f"chart {k}")
        if E.rank == 2:
            split = sheafk.splitting_type_p1(T)
            entry["splitting_type"] = split
            report.check("sheaf.splitting_matches_hilbert",
                         len(split) == H.rank and sum(split) == H.degree, f"chart {k}: {split}")
        classes = [sheafk.chart_class(sheafk.sE_chart(M, E, j, basis), "ker", job.degree_bound, job.degree_cap)[0]
                   for basis in alternative_bases(G, E, p)]
        report.check("sheaf.basis_independence", all(c == classes[0] for c in classes), f"chart {k}")
        charts.append(entry)
    result["charts"] = charts
    try:
        family = sheafk.k0_family(L, M, j, verdict=verdict, degree_bound=job.degree_bound, cap=job.degree_cap)
        result["family"] = family.to_json()
        report.check("sheaf.family_compatible", family.compatible)
    except (InvariantViolation, NonConstantModuleError) as e:
        report.check("sheaf.family_compatible", False, str(e))
    return result


def cmd_springer(job, G, L, M, report):
    p = job.prime
    ell = springer.ell_lattice(L)
    F = get_field(p)
    result = {"algebras": {str(k): A.tolist() for k, A in sorted(ell.algebras.items())}}
    inverse = all(np.array_equal(springer.exp_nilpotent(F, log_g), G.matrices[g] % p)
                  for g, log_g in ell.logs.items())
    report.check("springer.exp_log_inverse", inverse)
    report.check("springer.commuting_logs", ell.commuting_check())
    report.check("springer.elementary_subalgebras", all(ell.elementary_check(k) for k in range(len(L.members))))
    for x in G.generators:
        report.check("springer.conjugation", ell.check_conjugation(x), f"x={x}")
    rng = np.random.default_rng(job.seed)
    for k in L.maximals:
        E = L.member(k)
        rb = radical_basis(G, E, p)
        square = rb.power(2)
        killed = all(F.is_zero(springer.ell_point(G, E, p, F, row).matrix) for row in square)
        report.check("springer.kills_radical_square", killed, f"chart {k}")
        Fr = get_field(p, 2)
        c = Fr.random_elements(rng, E.rank, nonzero=True)
        point = springer.ell_r_point(G, E, p, Fr, c, 3)
        shorter = springer.ell_r_point(G, E, p, Fr, c, 2)
        report.check("springer.ell_r_commuting", point.commuting(), f"chart {k}")
        report.check("springer.ell_r_truncation", point.psi[:2] == shorter.psi, f"chart {k}")
        a = int(c[0])
        axis = springer.ell_r_point(G, E, p, Fr, [a] + [0] * (E.rank - 1), 3)
        log_b = springer.log_unipotent(Fr, G.matrices[E.basis[0]])
        axis_ok = all(np.array_equal(psi.matrix, Fr.scale(Fr.frobenius(a, i), log_b.matrix))
                      for i, psi in enumerate(axis.psi))
        report.check("springer.ell_r_axis", axis_ok, f"chart {k}")
    result["rank_compare"] = _rank_compare_sweep(job, G, L, M, report, rng)
    return result


def _rank_compare_sweep(job, G, L, M, report, rng):
    """
        Group vs Lie ranks on every chart where the restricted module has constant j-rank: all s_E points
        over F_p plus random full-chart points.
    """
    p = job.prime
    F = get_field(p)
    out = {}
    for k in L.maximals:
        E = L.member(k)
        verdict = springer.restricted_constancy(M, E, job.j, job.method, job.decision_config())
        if not verdict.constant:
            logger.warning("chart %d: restricted module not of constant %d-rank; rank comparison skipped", k, job.j)
            out[str(k)] = {"skipped": verdict.status}
            continue
        points = list(enumerate_flat_points(G, E, p, F, "sE", projective=True, cap=job.exhaustive_cap))
        points += [random_flat_point(G, E, p, F, rng) for _ in range(min(job.samples, 50))]
        try:
            compared = [springer.rank_compare(M, xi, job.j, verdict=verdict) for xi in points]
        except (NotUnipotentError, NonConstantModuleError) as e:
            logger.warning("chart %d: %s", k, e)
            out[str(k)] = {"skipped": str(e)}
            continue
        equal = sum(eq for _, _, eq in compared)
        out[str(k)] = {"points": len(points), "equal": equal, "rank": int(compared[0][0])}
        report.check("springer.rank_compare", equal == len(points), f"chart {k}: {equal}/{len(points)}")
    return out


def cmd_verify(job, G, L, M, report):
    result = {"lattice": cmd_lattice(job, G, L, M, report),
              "theta": cmd_theta(job, G, L, M, report),
              "jordan": cmd_jordan(job, G, L, M, report),
              "cjt": cmd_cjt(job, G, L, M, report)}
    if result["cjt"]["verdicts"][str(job.j)]["status"] == "constant":
        result["bundle"] = cmd_bundle(job, G, L, M, report)
    else:
        logger.warning("module not of constant %d-rank; bundle checks skipped", job.j)
    if G.matrices is not None and G.prime == job.prime and job.prime > G.matrices.shape[1]:
        result["springer"] = cmd_springer(job, G, L, M, report)
    return result


COMMAND_TABLE = {
    "lattice": cmd_lattice,
    "theta": cmd_theta,
    "jordan": cmd_jordan,
    "cjt": cmd_cjt,
    "bundle": cmd_bundle,
    "springer": cmd_springer,
    "verify": cmd_verify,
}


def run(command, job):
    """
        (exit status, report) for one command. Input problems raise InputError.
    """
    job.command = command
    job.validate()
    G, L, M = load_job(job)
    report = Report(command, job)
    try:
        report.result = COMMAND_TABLE[command](job, G, L, M, report)
    except NotUnipotentError as e:
        raise InputError(str(e)) from None
    except (ResourceLimitError, NonStabilizingError) as e:
        logger.warning("undecided: %s", e)
        report.result["error"] = str(e)
        report.unknown = True
    except tuple(kind for kind, _ in FAILED_PROPERTY) as e:
        prop = next(name for kind, name in FAILED_PROPERTY if isinstance(e, kind))
        report.check(prop, False, str(e))
    return report.status(), report.to_json()


# ------------------------------------ entry point ------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="TOML job file; flags given here override it.")
    common.add_argument("--group", default=None,
                        help="Builtin group (klein4, heisenberg:3, elementary_abelian:3:2, dihedral:4, ...) "
                             "or a JSON/TOML group file.")
    common.add_argument("--module", default=None,
                        help="Builtin module (trivial, regular, natural, radical:j, cyclic:k, sym:m, joined by +) "
                             "or a JSON module file.")
    common.add_argument("--prime", type=int, default=None, help="Prime p (defaults to a matrix group's prime).")
    common.add_argument("-j", type=int, default=None, help="Power j of the operator, 1 <= j <= p-1.")
    common.add_argument("--method", choices=METHODS, default=None, help="Constancy decision method.")
    common.add_argument("--degree-bound", type=int, default=None, help="Initial degree bound for graded pieces.")
    common.add_argument("--samples", type=int, default=None, help="Number of random pi-points.")
    common.add_argument("--ext-cap", type=int, default=None, help="Largest extension degree d of GF(p^d) sampled.")
    common.add_argument("--seed", type=int, default=None, help="Seed of every random choice.")
    common.add_argument("--jobs", type=int, default=None, help="Worker threads for per-chart / per-point work.")
    common.add_argument("--out", default=None, help="Write the JSON report here instead of stdout.")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging.")
    common.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only.")

    parser = argparse.ArgumentParser(prog="cjt", description="Constant j-rank modules and their bundles.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "lattice": "Elementary abelian p-subgroups and conjugation.",
        "theta": "The universal p-nilpotent operator and its checks.",
        "jordan": "Generic and local Jordan types.",
        "cjt": "Constant j-rank and constant Jordan type verdicts.",
        "bundle": "Graded pieces, Hilbert data, splitting types and K0 classes.",
        "springer": "exp / log comparison checks for unipotent matrix groups.",
        "verify": "Run every applicable check.",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def job_from_args(args):
    configs = {}
    if args.config is not None:
        try:
            configs.update(read_config(args.config))
        except (OSError, ValueError) as e:
            raise InputError(f"cannot read {args.config}: {e}") from None
    flags = {"group": args.group, "module": args.module, "prime": args.prime, "j": args.j,
             "method": args.method, "degree_bound": args.degree_bound, "samples": args.samples,
             "ext_cap": args.ext_cap, "seed": args.seed, "jobs": args.jobs, "out": args.out}
    configs.update({k: v for k, v in flags.items() if v is not None})
    configs["command"] = args.command
    known = {f.name for f in dataclasses.fields(JobConfig)}
    unknown = sorted(set(configs) - known)
    if unknown:
        raise InputError(f"unknown configuration keys {unknown}")
    if "group" not in configs:
        raise InputError("a group is required (--group or 'group' in the config file)")
    return JobConfig(**configs).validate()


def setup_logging(verbose=False, quiet=False):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    logging.basicConfig(level=level, format="%(message)s", datefmt="[%X]", handlers=[handler], force=True)


def print_summary(report, status):
    table = Table(title=f"cjt {report['command']} (exit {status})")
    table.add_column("property")
    table.add_column("passed")
    table.add_column("detail")
    for c in report["checks"]:
        table.add_row(c["property"], "[green]yes[/green]" if c["passed"] else "[red]no[/red]", c["detail"])
    Console(stderr=True).print(table)


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose, args.quiet)
    try:
        job = job_from_args(args)
        status, report = run(job.command, job)
    except InputError as e:
        logger.error("%s", e)
        return 2
    except ResourceLimitError as e:
        logger.error("%s", e)
        return 3
    text = json.dumps(report, sort_keys=True, indent=2)
    if job.out:
        with open(job.out, "w") as f:
            f.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    print_summary(report, status)
    return status


if __name__ == "__main__":
    sys.exit(main())
