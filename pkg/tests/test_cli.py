import csv
import io
import json
import subprocess
import sys

import pytest

from unipotent_strata import cli
from unipotent_strata.coxeter import GradedRep, coxeter_graded
from unipotent_strata.exactq import RatPoly
from unipotent_strata.hc import SymbolMultiset
from unipotent_strata.symbols import Symbol, enumerate_symbols


def invoke(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_symbols_json(capsys):
    code, out, _ = invoke(capsys, "symbols", "--rank", "2", "--format", "json")
    assert code == 0
    assert [Symbol.from_json(x) for x in json.loads(out)] == enumerate_symbols(2)


def test_degree_value(capsys):
    code, out, err = invoke(capsys, "degree", "--symbol", '{"X":[0,1],"Y":[1]}', "--at", "3")
    assert (code, out, err) == (0, "3\n", "")


def test_degree_polynomial_json(capsys):
    code, out, _ = invoke(capsys, "degree", "--symbol", '{"X":[0,1,2],"Y":[]}', "--format", "json")
    data = json.loads(out)
    assert RatPoly.from_json(data["degree"]) == RatPoly([0, "1/2", -1, "1/2"])


def test_non_prime_power_warns(capsys):
    code, out, err = invoke(capsys, "degree", "--symbol", '{"X":[0,1],"Y":[1]}', "--at", "4")
    assert code == 0 and out == "4\n"
    assert "not a power of an odd prime" in err


def test_nu(capsys):
    assert invoke(capsys, "nu", "--n", "3", "--p", "5")[:2] == (0, "5\n")
    assert invoke(capsys, "nu", "--n", "4", "--case", "even-nonsplit", "--p", "5")[1] == "25\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["degree", "--symbol", "{bad"],
        ["degree", "--symbol", '{"X":[0,1],"Y":[]}'],
        ["symbols", "--rank", "-1"],
        ["symbols"],
        ["symbols", "--rank", "2", "--bogus"],
        ["restrict", "--symbol", '{"X":[1],"Y":[]}', "--by", "2"],
        ["count", "--kind", "symplectic", "--dim", "4", "--r", "3", "--p", "3"],
        ["count", "--kind", "symplectic", "--dim", "4", "--r", "1", "--p", "9"],
        ["nu", "--n", "4", "--p", "3"],
        ["nu", "--n", "5", "--p", "3"],
        ["incidence", "--n", "3", "--p", "3", "--theta", "2", "--theta-prime", "0", "--direction", "below"],
        ["degree", "--symbol", '{"X":[1],"Y":[]}', "--at", "1"],
    ],
)
def test_validation_errors_exit_one(capsys, argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_coxeter_verify_sweep(capsys):
    code, out, _ = invoke(capsys, "coxeter", "--k", "6", "--verify", "--sweep", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and len(data["reports"]) == 7


def test_coxeter_verify_parallel_matches_serial(capsys):
    serial = invoke(capsys, "coxeter", "--k", "5", "--verify", "--sweep", "--format", "json")
    parallel = invoke(capsys, "coxeter", "--k", "5", "--verify", "--sweep", "--jobs", "2", "--format", "json")
    assert serial == parallel


def test_verification_failure_exit_two(capsys, monkeypatch):
    monkeypatch.setattr(cli.counting, "count_isotropic", lambda space, r, p: 41)
    code, out, _ = invoke(capsys, "count", "--kind", "symplectic", "--dim", "4", "--r", "1", "--p", "3",
                          "--brute", "--format", "csv")
    assert code == 2
    row = list(csv.DictReader(io.StringIO(out)))[0]
    assert row["match"] == "false"


def test_count_csv(capsys):
    code, out, _ = invoke(capsys, "count", "--kind", "orthogonal-even-split", "--dim", "2", "--r", "1",
                          "--p", "5", "--brute", "--format", "csv")
    assert code == 0
    assert out == "kind,d,r,p,formula,brute_force,match\northogonal-even-split,2,1,5,2,2,true\n"


def test_coxeter_json_roundtrip(capsys):
    code, out, _ = invoke(capsys, "coxeter", "--k", "3", "--format", "json")
    assert GradedRep.from_json(json.loads(out)).to_json() == coxeter_graded(3).to_json()


def test_induce_json_roundtrip(capsys):
    code, out, _ = invoke(capsys, "induce", "--symbol", '{"X":[0,3],"Y":[1]}', "--by", "3", "--format", "json")
    result = SymbolMultiset.from_json(json.loads(out)["result"])
    assert len(result) == 8


def test_weight_table_csv(capsys):
    code, out, _ = invoke(capsys, "weight-table", "--theta", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    top = [r for r in rows if r["k"] == "4"][0]
    assert (top["eigenvalue"], top["min_dim"], top["max_dim"], top["exact"]) == ("+q^2", "1", "1", "true")


def test_stratum_bounds_flags(capsys):
    _, sharp, _ = invoke(capsys, "stratum-bounds", "--theta", "1", "--format", "json")
    _, loose, _ = invoke(capsys, "stratum-bounds", "--theta", "1", "--no-sharpen", "--format", "json")
    assert json.loads(sharp)["sharpened"] and not json.loads(loose)["sharpened"]
    assert sharp != loose


def test_rz_page_pretty(capsys):
    code, out, _ = invoke(capsys, "rz-page", "--n", "2", "--case", "even-split", "--p", "3")
    assert code == 0
    assert out.splitlines()[0] == "b=2: (c-Ind J0)^1[+p^1]  (c-Ind J1)^1[+p^1]"


def test_incidence(capsys):
    code, out, _ = invoke(capsys, "incidence", "--n", "4", "--case", "even-nonsplit", "--p", "3",
                          "--theta", "0", "--theta-prime", "1", "--direction", "above")
    assert (code, out) == (0, "10\n")


ALL_COMMANDS = [
    ["symbols", "--rank", "3"],
    ["degree", "--symbol", '{"X":[0,1,2],"Y":[1,2]}', "--at", "5"],
    ["induce", "--symbol", '{"X":[0],"Y":[]}', "--by", "2"],
    ["restrict", "--symbol", '{"X":[0,1,3],"Y":[1,2]}', "--by", "1"],
    ["coxeter", "--k", "3"],
    ["stratum-page", "--theta", "3"],
    ["stratum-bounds", "--theta", "3"],
    ["weight-table", "--theta", "3"],
    ["count", "--kind", "orthogonal-odd", "--dim", "5", "--r", "2", "--p", "3", "--brute"],
    ["incidence", "--n", "3", "--p", "5", "--theta", "0", "--theta-prime", "1", "--direction", "above"],
    ["nu", "--n", "2", "--case", "even-split", "--p", "7"],
    ["rz-page", "--n", "3", "--p", "3"],
]


@pytest.mark.parametrize("argv", ALL_COMMANDS, ids=lambda a: a[0])
@pytest.mark.parametrize("fmt", ["json", "csv", "pretty"])
def test_every_command_is_deterministic(capsys, argv, fmt):
    first = invoke(capsys, *argv, "--format", fmt)
    second = invoke(capsys, *argv, "--format", fmt)
    assert first[0] == 0
    assert first == second
    if fmt == "json":
        json.loads(first[1])
    if fmt == "csv":
        assert len(list(csv.reader(io.StringIO(first[1])))) >= 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "unipotent_strata.cli", "nu", "--n", "3", "--p", "7"],
        capture_output=True, text=True, check=False,
    )
    assert (proc.returncode, proc.stdout) == (0, "7\n")
