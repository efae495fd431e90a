import io
import json
from fractions import Fraction

import pytest

from rmtcharpoly.cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_moment_value():
    code, out, _ = call("moment", "--ensemble", "gue", "-N", "2", "-p", "2", "--t", "0")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["value"] == "3/4"
    assert Fraction(data["value"]) == Fraction(3, 4)


def test_moment_coefficients_csv():
    code, out, _ = call("moment", "--ensemble", "lue", "--gamma", "1/2", "-N", "2", "-p", "1", "--format", "csv")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "k,coefficient"
    assert lines[-1] == "2,1"


def test_float_output():
    _, out, _ = call("moment", "-N", "2", "-p", "2", "--t", "0", "--float")
    assert json.loads(out)["value"] == 0.75


def test_semicircle():
    code, out, _ = call("semicircle", "--p", "1", "--t-order", "10")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["coefficients"] == ["1", "-1/8", "-1/128", "-1/1024", "-5/32768", "-7/262144"]
    assert data["ok"]


def test_order_starvation_exit():
    code, _, err = call("semicircle", "--p", "1", "--t-order", "10", "--n-order", "5")
    assert code == EXIT_DOMAIN
    assert "order 9" in err
    assert len(err.strip().splitlines()) == 1


def test_secular_and_unsupported():
    code, out, _ = call("secular", "-N", "2", "--lambda", "2,2")
    assert json.loads(out)["value"] == "3/4"
    code, _, err = call("secular", "--ensemble", "jue", "-N", "3", "--lambda", "1,1")
    assert code == EXIT_DOMAIN


def test_expansion_csv():
    code, out, _ = call("expansion", "-N", "2", "-p", "2", "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "lambda,nu,value"


def test_asymptotics():
    code, out, _ = call("asymptotics", "-p", "1", "--n-order", "2")
    data = json.loads(out)
    assert data["even"]["coefficients"] == ["1", "5/6", "-11/72"]
    assert data["averaged"]["coefficients"][1] == "7/12"
    code, out, _ = call("asymptotics", "-p", "2", "--n-order", "3", "--parity", "odd", "--generated", "--format", "csv")
    assert out.splitlines()[0] == "parity,k,coefficient"


def test_correlation():
    code, out, _ = call("correlation", "--ensemble", "jue", "--gamma1", "1", "-N", "2", "--points", "1/2,1/3")
    assert code == EXIT_OK and "value" in json.loads(out)
    code, out, _ = call("correlation", "-N", "3", "--points", "1/2", "--density")
    assert code == EXIT_OK and json.loads(out)["value_float"] > 0


def test_mc():
    code, out, _ = call("mc", "-N", "2", "-p", "2", "--t", "0", "--samples", "5000", "--seed", "3")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["exact"] == "3/4"
    assert {"mean", "stderr", "z_score", "seed"} <= set(data)


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("RMT_CHARPOLY_BUDGET", "small")
    code, _, err = call("mc", "-N", "2", "--samples", str(10**7))
    assert code == EXIT_DOMAIN
    code, _, _ = call("expansion", "-N", "12", "-p", "12")
    assert code == EXIT_DOMAIN


@pytest.mark.parametrize(
    "argv",
    [["bogus"], ["moment", "-N", "2"], ["moment", "-N", "2", "-p", "1", "--t", "pi"], ["validate", "--suite", "nope"], []],
)
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == EXIT_USAGE
    assert err


def test_domain_errors():
    assert call("moment", "-N", "0", "-p", "1")[0] == EXIT_DOMAIN
    assert call("moment", "--ensemble", "lue", "--gamma", "-1", "-N", "2", "-p", "1")[0] == EXIT_DOMAIN


def test_validate_small():
    code, out, _ = call("validate", "--suite", "combinatorics,secular", "--budget", "small")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["failed"] == 0 and data["passed"] > 0


def test_validate_failure_exit(monkeypatch):
    from rmtcharpoly import validation

    monkeypatch.setitem(validation.SUITES, "exact", lambda budget: [("always_fails", lambda: False)])
    code, out, _ = call("validate", "--suite", "exact")
    assert code == 1
    assert json.loads(out)["failed"] == 1
