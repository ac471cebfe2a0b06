import json
import subprocess
import sys

import pytest

from jetfol.cli import main, run


def _run(*argv):
    code, doc, _ = run(list(argv))
    return code, doc


def test_jets_scheme_example():
    code, doc = _run("jets", "scheme", "--ideal", "[x*y]", "--order", "2", "--point", "(0,0)")
    assert code == 0
    assert list(doc) == ["command", "inputs", "result", "diagnostics"]
    assert doc["result"]["generators"] == ["a_1_1*a_2_1"]


def test_saturate_example():
    code, doc = _run("saturate", "--form", "(x^2*v^2 - x^2*v)*d(x) + (-x^3)*d(v)")
    assert code == 0 and doc["result"]["factor"] == "x^2"


def test_classify_example():
    code, doc = _run("classify", "--form", "y*d(x) + x*d(y)", "--point", "(0,0)")
    assert doc["result"]["tag"] == "Reduced"


def test_tangency_and_failure_report():
    code, doc = _run("tangency", "--mode", "strong", "--ideal", "[x*y*(y-x)]", "--form", "y*d(x)-x*d(y)",
                     "--order", "4", "--containment", "set")
    assert code == 0
    assert doc["result"]["result"] is False
    assert doc["result"]["first_failure"]["order"] == 3


def test_blowup_resolve_probe_check():
    assert _run("blowup", "--form", "y^2*d(x)-x^2*d(y)", "--chart", "1")[1]["result"]["factor"] == "x^2"
    assert _run("resolve", "--form", "y^2*d(x)-x^2*d(y)", "--max-depth", "2")[1]["result"]["verdict"] == "DicriticalDetected"
    assert _run("probe", "dicritical", "--form", "y*d(x)-x*d(y)", "--max-depth", "1")[1]["result"]["dicritical"]
    r = _run("probe", "jets-vs-nc", "--form", "y*d(x)-x*d(y)", "--t", "2", "--order", "2")[1]["result"]
    assert r["verdict"] == "SchemeStrictlyLarger"
    r = _run("check", "order-criterion", "--form", "y*d(x)+x*d(y)", "--g", "x*y", "--point", "(0,0)")[1]["result"]
    assert r["holds"] and r["order_g"] == 2


def test_integrable_and_singular():
    r = _run("integrable", "--form", "y*d(x) + d(z)")[1]["result"]
    assert r["integrable"] is False
    code, doc = _run("singular", "--form", "x*y*d(x)")
    assert code == 0 and doc["diagnostics"][0]["kind"] == "UnsaturatedFormWarning"
    r = _run("singular", "--form", "(v^2 - v)*d(x) - x*d(v)")[1]["result"]
    assert r["rational_points"] == ["(0, 0)", "(0, 1)"]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["saturate", "--form", "x*d("], 2),
        (["classify", "--form", "y*d(x)", "--point", "(0,0,0)"], 2),
        (["bogus"], 2),
        (["tangency", "--ideal", "[x*y - z^2, y*z - x^2, x*z - y^2 + 1]", "--form", "d(x)", "--budget", "1"], 3),
        (["check", "order-criterion", "--form", "y*d(x)", "--g", "x", "--point", "(0,0)", "--vars", "x"], 2),
    ],
)
def test_exit_codes(argv, code):
    got, doc = _run(*argv)
    assert got == code
    assert doc["diagnostics"][-1]["level"] == "error"


def test_unsupported_exit_code(monkeypatch):
    import jetfol.cli as cli
    from jetfol.errors import UnsupportedError

    def refuse(form):
        raise UnsupportedError("not handled")

    monkeypatch.setattr(cli, "saturate_form", refuse)
    code, doc = _run("saturate", "--form", "x*d(y)")
    assert code == 4
    assert doc["diagnostics"][-1]["kind"] == "UnsupportedError"


def test_byte_stable_output(capsys):
    argv = ["resolve", "--form", "y^2*d(x)-x^2*d(y)", "--max-depth", "2"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
    json.loads(first)


def test_text_format(capsys):
    assert main(["classify", "--form", "y*d(x) - x*d(y)", "--format", "text"]) == 0
    assert "tag: PreSimpleA_Resonant" in capsys.readouterr().out


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "jetfol.cli", "saturate", "--form", "x*y*d(x) + x^2*d(y)"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["result"]["factor"] == "x"
