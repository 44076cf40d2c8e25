import json
from pathlib import Path

import pytest

from cjt import cli, sheafk
from cjt.cli import JobConfig, alternative_bases, build_parser, job_from_args, main, run
from cjt.errors import (InputError, NonConstantModuleError, NonIntegralClassError, NonStabilizingError,
                        NotNilpotentError)

DATA = Path(__file__).resolve().parent.parent / "data"


def run_main(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, json.loads(out) if out.strip() else None


def test_verify_regular_klein4(capsys):
    status, report = run_main(capsys, "verify", "--group", "klein4", "--module", "regular", "--samples", "30")
    assert status == 0
    assert report["schema"] == 1
    assert report["command"] == "verify"
    assert report["config"]["prime"] == 2
    result = report["result"]
    assert set(result) == {"lattice", "theta", "jordan", "cjt", "bundle"}
    assert result["cjt"]["constant_jordan_type"]
    assert result["cjt"]["jordan_type"]["partition"] == [2, 2]
    assert result["bundle"]["charts"][0]["splitting_type"] == [0, -1]
    assert all(c["passed"] for c in report["checks"])
    props = {c["property"] for c in report["checks"]}
    assert {"theta.equivariance", "sheaf.euler_additivity", "sheaf.basis_independence"} <= props
    assert all(c["reference"] for c in report["checks"])


def test_cyclic_module_from_files(capsys):
    status, report = run_main(capsys, "cjt", "--group", str(DATA / "klein4_table.json"),
                              "--module", str(DATA / "klein4_cyclic_module.json"), "--prime", "2")
    assert status == 0
    verdict = report["result"]["verdicts"]["1"]
    assert verdict["status"] == "non_constant"
    assert verdict["witness_rank"] == 0
    assert verdict["witness"]["flat"]
    assert not report["result"]["constant_jordan_type"]
    assert [c["property"] for c in report["checks"]] == ["cjt.witness_rank_drop"]


def test_bundle_on_non_constant_module_fails(capsys):
    status, report = run_main(capsys, "bundle", "--group", "klein4", "--module", "cyclic:1")
    assert status == 1
    assert report["checks"][0]["property"] == "bundle.constant_jrank"
    assert "charts" not in report["result"]


def test_lattice_of_heisenberg3(capsys):
    status, report = run_main(capsys, "lattice", "--group", "heisenberg:3")
    assert status == 0
    result = report["result"]
    assert result["counts"] == {"1": 13, "2": 4}
    assert len(result["maximals"]) == 4
    assert result["prime"] == 3


def test_reports_are_reproducible(tmp_path, capsys):
    path = tmp_path / "report.json"
    runs = []
    for _ in range(2):
        status = main(["jordan", "--group", "elementary_abelian:3:2", "--module", "radical:2",
                       "--samples", "20", "--seed", "7", "--out", str(path)])
        assert status == 0
        runs.append(path.read_bytes())
    assert runs[0] == runs[1]
    report = json.loads(runs[0])
    assert report["seed"] == 7
    assert report["result"]["local"] == {"[2, 1]": 20}
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("argv", [
    ["lattice", "--group", "monster"],
    ["lattice", "--group", "klein4", "--prime", "3"],
    ["cjt", "--group", "klein4", "-j", "2"],
    ["cjt", "--group", "symmetric:3"],
    ["cjt", "--group", "klein4", "--module", "adjoint"],
    ["cjt", "--group", "klein4", "--prime", "4"],
    ["springer", "--group", "klein4"],
])
def test_bad_input_exits_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().out == ""


def test_config_layering(tmp_path):
    config = tmp_path / "job.toml"
    config.write_text('group = "klein4"\nmodule = "cyclic:1"\nsamples = 5\nseed = 3\n')
    args = build_parser().parse_args(["cjt", "--config", str(config), "--module", "regular"])
    job = job_from_args(args)
    assert job.group == "klein4"
    assert job.module == "regular"
    assert job.samples == 5
    assert job.seed == 3
    assert job.command == "cjt"

    config.write_text('group = "klein4"\ncolour = "blue"\n')
    with pytest.raises(InputError):
        job_from_args(build_parser().parse_args(["cjt", "--config", str(config)]))
    with pytest.raises(InputError):
        job_from_args(build_parser().parse_args(["cjt"]))


def test_job_validation():
    with pytest.raises(InputError):
        JobConfig("cjt", "klein4", method="guess").validate()
    with pytest.raises(InputError):
        JobConfig("cjt", "klein4", samples=0).validate()
    with pytest.raises(InputError):
        JobConfig("cjt", "klein4", degree_bound=500).validate()
    status, report = run("cjt", JobConfig("cjt", "klein4"))
    assert status == 0
    assert report["result"]["constant_jordan_type"]


def test_alternative_bases(heisenberg3_lattice, klein4_lattice):
    G = klein4_lattice.G
    E = klein4_lattice.member(klein4_lattice.maximals[0])
    assert alternative_bases(G, E, 2) == [(1, 2), (2, 1), (1, 3)]
    H = heisenberg3_lattice
    line = H.member(H.rank_members(1)[0])
    b = line.basis[0]
    assert alternative_bases(H.G, line, 3) == [(b,), (H.G.power(b, 2),)]


def _raise(error):
    def fail(*args, **kwargs):
        raise error
    return fail


def test_unstable_hilbert_function_is_undecided(monkeypatch, capsys):
    monkeypatch.setattr(sheafk, "euler_identities", _raise(NonStabilizingError("not stable up to degree 4")))
    status, report = run_main(capsys, "bundle", "--group", "klein4", "--module", "regular")
    assert status == 3
    assert "not stable" in report["result"]["error"]
    assert all(c["passed"] for c in report["checks"])


def test_non_integral_class_fails_a_check(monkeypatch, capsys):
    monkeypatch.setattr(sheafk, "euler_identities", _raise(NonIntegralClassError("no integral K0 class")))
    status, report = run_main(capsys, "bundle", "--group", "klein4", "--module", "regular")
    assert status == 1
    failed = [c for c in report["checks"] if not c["passed"]]
    assert [c["property"] for c in failed] == ["sheaf.k0_integral"]
    assert failed[0]["reference"]


def test_non_nilpotent_point_fails_a_check(monkeypatch, capsys):
    monkeypatch.setattr(cli, "local_jordan_type", _raise(NotNilpotentError("N^2 != 0")))
    status, report = run_main(capsys, "jordan", "--group", "klein4", "--module", "regular", "--samples", "4")
    assert status == 1
    assert report["checks"][-1] == {"property": "theta.p_nilpotent", "passed": False, "detail": "N^2 != 0",
                                    "reference": cli.CHECK_REFERENCES["theta.p_nilpotent"]}


def test_non_constant_family_is_a_failed_check(monkeypatch, capsys):
    monkeypatch.setattr(sheafk, "k0_family", _raise(NonConstantModuleError("not of constant 1-rank")))
    status, report = run_main(capsys, "bundle", "--group", "klein4", "--module", "regular")
    assert status == 1
    failed = [c for c in report["checks"] if not c["passed"]]
    assert [c["property"] for c in failed] == ["sheaf.family_compatible"]
