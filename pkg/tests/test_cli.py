import dataclasses
import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest
from mpmath import mp, mpf

from mtzeta.cli import golden_payload, output_digits, report_record

GOLDEN = Path(__file__).parent / "golden"
SCHEMA = json.loads(resources.files("mtzeta").joinpath("schema/output.schema.json").read_text())


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "mtzeta", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def run_json(*args):
    code, out, err = run(*args, "--json")
    assert code == 0, err
    rec = json.loads(out)
    jsonschema.validate(rec, SCHEMA)
    return rec


def value_of(rec):
    with mp.workprec(rec["prec"] + 16):
        return mpf(rec["result"]["value"]["re"])


# --- coeff -------------------------------------------------------------------


def test_coeff_tables():
    code, out, _ = run("coeff", "--k", "1", "--count", "3")
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert rows == [["0", "1", "1"], ["1", "-1", "2"], ["2", "1", "6"], ["3", "0", "1"]]
    assert run("coeff", "--k", "1,1", "--count", "1")[1].splitlines()[0] == "0\t0\t1"
    assert run("coeff", "--k", "2", "--count", "1")[1].splitlines()[0] == "0\t1\t1"


def test_coeff_formats():
    code, out, _ = run("coeff", "--k", "1", "--count", "2", "--csv")
    assert code == 0 and out.splitlines()[0] == "m,numerator,denominator"
    rec = run_json("coeff", "--k", "1,2", "--count", "4")
    assert rec["command"] == "coeff" and len(rec["result"]) == 5


# --- eval --------------------------------------------------------------------


def test_eval_mt_example():
    rec = run_json("eval", "mt", "--exponents", "2,1,1", "--last", "1", "--prec", "256")
    with mp.workprec(300):
        want = 2 * mp.zeta(2) * mp.zeta(3) - mp.zeta(5)
        assert abs(value_of(rec) - want) < mpf(10) ** -70
    assert rec["result"]["rigorous"] and rec["result"]["digits"] == output_digits(256)
    assert "elapsed_ms" in rec


def test_eval_xi_lambda_zeta2():
    rec = run_json("eval", "xi", "--k", "1", "--s", "2")
    with mp.workprec(300):
        assert abs(value_of(rec) - 2 * mp.zeta(3)) < mpf(10) ** -70
    rec = run_json("eval", "lambda", "--k", "1,1", "--z", "0.5", "--prec", "128")
    with mp.workprec(150):
        assert abs(value_of(rec) - mp.polylog(2, mpf(1) / 2)) < mpf(10) ** -34
    rec = run_json("eval", "zeta2", "--a", "1", "--b", "2")
    with mp.workprec(300):
        assert abs(value_of(rec) - mp.zeta(3)) < mpf(10) ** -70
    rec = run_json("eval", "xig", "--k", "1,1", "--k", "1,1", "--s", "2", "--prec", "128")
    assert rec["command"] == "eval xig"


def test_eval_complex_and_oracle():
    rec = run_json("eval", "mt", "--exponents", "1", "--last", "2+1i", "--prec", "128")
    assert rec["result"]["value"]["im"] != "0"
    rec = run_json("eval", "mt", "--exponents", "2,2", "--last", "2", "--method", "oracle", "--prec", "64")
    assert rec["result"]["digits"] <= output_digits(64)


def test_decimal_output_round_trips():
    # re-parsing the printed digits and printing again at the same precision is stable
    rec = run_json("eval", "xi", "--k", "2,1", "--s", "3", "--prec", "192")
    text = rec["result"]["value"]["re"]
    digits = rec["result"]["digits"]
    with mp.workprec(192):
        assert mp.nstr(mpf(text), digits, strip_zeros=False, min_fixed=-4, max_fixed=digits) == text


def test_eval_is_bit_identical_apart_from_timing():
    a = run_json("eval", "mt", "--exponents", "0,2", "--last", "3", "--prec", "128")
    b = run_json("eval", "mt", "--exponents", "0,2", "--last", "3", "--prec", "128")
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b


def test_human_readable_output():
    code, out, _ = run("eval", "xi", "--k", "1", "--s", "2", "--prec", "64")
    assert code == 0 and out.startswith("value")


# --- exit codes --------------------------------------------------------------


@pytest.mark.parametrize(
    "args",
    [
        ("coeff", "--k", "0"),
        ("coeff", "--k", "a,b"),
        ("coeff",),
        ("eval", "nope"),
        ("eval", "mt", "--exponents", "1", "--last", "2", "--prec", "8"),
        ("eval", "xi", "--k", "1", "--s", "3+"),
        ("verify", "nope"),
        ("verify", "mr3", "--grid", "k"),
        ("frobnicate",),
    ],
)
def test_usage_errors_exit_1(args):
    code, _, err = run(*args)
    assert code == 1, err
    assert "error" in err


@pytest.mark.parametrize(
    "args",
    [
        ("eval", "mt", "--exponents", "0,0", "--last", "2"),
        ("eval", "xi", "--k", "1", "--s", "0"),
        ("eval", "lambda", "--k", "1,1", "--z", "1"),
        ("eval", "zeta2", "--a", "2", "--b", "2", "--closed-form"),
        ("eval", "mt", "--exponents", "2,1", "--last", "2", "--mmax", "3"),
    ],
)
def test_domain_errors_exit_2(args):
    code, _, err = run(*args)
    assert code == 2, err
    assert err.strip()


def test_failed_check_exits_2(monkeypatch, capsys):
    from mtzeta import identities
    from mtzeta.cli import main
    from mtzeta.numerics import ValueWithError

    def broken(m, prec, slack):
        rep = identities.check_mtval(m, prec=prec, slack=slack)
        return dataclasses.replace(rep, rhs=ValueWithError.exact(rep.rhs.estimate + 1))

    monkeypatch.setitem(identities.SUITES, "mtval", broken)
    assert main(["verify", "mtval", "--prec", "64"]) == 2
    assert "0/4 asserted checks passed" in capsys.readouterr().out


def test_reported_only_instances_do_not_fail_the_run():
    code, out, _ = run("verify", "mr2_display", "--grid", "m=1", "--json")
    assert code == 0
    assert json.loads(out)["summary"]["asserted"] == 0


# --- verify ------------------------------------------------------------------


def test_verify_mtval_and_grid():
    code, out, _ = run("verify", "mtval", "--prec", "256")
    assert code == 0 and "4/4 asserted checks passed" in out
    rec = run_json("verify", "mr3", "--grid", "k=1")
    assert len(rec["reports"]) == 1 and rec["reports"][0]["parameters"] == {"k": 1}
    assert rec["summary"]["all_pass"]


def strip_timing(payload):
    payload = dict(payload)
    payload.pop("elapsed_ms", None)
    return payload


@pytest.mark.parametrize("suite", ["mtval", "mr3", "euler", "eq75", "mr2_display"])
def test_verify_matches_golden_via_cli(suite):
    rec = run_json("verify", suite)
    golden = json.loads((GOLDEN / f"verify_{suite}.json").read_text())
    assert golden_payload(suite, rec["reports"], rec["prec"], mpf(1e-10)) == golden


def test_every_suite_matches_golden(suite_256):
    for name, reps in suite_256.items():
        golden = json.loads((GOLDEN / f"verify_{name}.json").read_text())
        recs = json.loads(json.dumps([report_record(r) for r in reps]))
        assert golden_payload(name, recs, 256, mpf(1e-10)) == golden, name


def test_update_golden_writes_files(tmp_path):
    code, _, err = run("verify", "mtval", "--update-golden", str(tmp_path))
    assert code == 0
    written = json.loads((tmp_path / "verify_mtval.json").read_text())
    assert written == json.loads((GOLDEN / "verify_mtval.json").read_text())
