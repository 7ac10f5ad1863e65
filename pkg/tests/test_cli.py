import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from kittab.cli import build_parser, cmd_run, main
from kittab.ideals import Ideal, ideal_equal
from kittab.ring import PolyRing, QQ
from kittab.session import SessionError, parse_session, run

SESSIONS = Path(__file__).parent / "sessions"
GOLDEN = ["generic_two", "quartic", "linkage", "errors"]


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    args = build_parser().parse_args(["run", *argv])
    code = cmd_run(args, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


# -- parsing ---------------------------------------------------------------------

def test_three_statement_session():
    sess = parse_session("ring R = QQ[x,y]; ideal I = x^2+y, x^5; generic_kitt 2 I;")
    assert [s.kind for s in sess.statements] == ["ring", "ideal", "command"]


def test_prime_field_ring_header():
    sess = parse_session("ring R = ZZ/32003[x0,x1,x2,x3];")
    assert sess.ring.field.characteristic == 32003
    assert sess.ring.variables == ("x0", "x1", "x2", "x3")


@pytest.mark.parametrize("text,message,line,col", [
    ("ideal I = x;", "no ring declared", 1, 1),
    ("ring R = QQ[x];\nring S = QQ[y];", "ring", 2, 1),
    ("ring R = QQ[x,y];\nideal I = x;\ncolon I J;", "unknown identifier 'J'", 3, 9),
    ("ring R = QQ[x,y];\nideal I = x + q;", "q", 2, 15),
    ("ring R = QQ[x,y];\nideal I = x\n", "';'", 2, 1),
    ("ring R = QQ[x,y];\nscalar s = 2;\ngb s;", "ideal", 3, 4),
    ("ring R = QQ[x,y];\nfrobnicate;", "frobnicate", 2, 1),
    ("ring R = ZZ/15[x];", "15", 1, 13),
])
def test_parse_errors_carry_locations(text, message, line, col):
    with pytest.raises(SessionError) as err:
        parse_session(text)
    assert message in err.value.message
    assert (err.value.line, err.value.col) == (line, col)


def test_comments_and_matrices():
    sess = parse_session("# header\nring R = QQ[x,y]; # trailing\nmatrix M = [[x, 0], [1, y^2]];")
    kind, M = sess.values["M"]
    assert kind == "matrix" and (M.nrows, M.ncols) == (2, 2)
    assert str(M[1, 1]) == "y^2"


# -- golden files -------------------------------------------------------------------

@pytest.mark.parametrize("name", GOLDEN)
def test_golden_text_output(name):
    code, out, _ = run_cli(str(SESSIONS / f"{name}.kt"))
    assert out == (SESSIONS / f"{name}.out").read_text()
    assert code == (1 if name == "errors" else 0)


def test_parse_error_exit_code_and_message():
    code, out, err = run_cli(str(SESSIONS / "bad_parse.kt"))
    assert code == 2 and out == ""
    assert err == (SESSIONS / "bad_parse.err").read_text().replace("bad_parse.kt", str(SESSIONS / "bad_parse.kt"))


def test_missing_file_exit_code():
    code, _, err = run_cli(str(SESSIONS / "does_not_exist.kt"))
    assert code == 2 and "cannot read" in err


def test_printed_ideals_round_trip():
    sess = parse_session((SESSIONS / "generic_two.kt").read_text())
    outputs = run(sess)
    for out in outputs:
        ring = PolyRing(QQ, out.ring[out.ring.index("[") + 1:-1].split(","))
        from kittab.generic import generic_kitt
        I = sess.values["I" if out.command.endswith("I") else "J"][1]
        K = generic_kitt(list(I.gens), 2)
        assert ideal_equal(Ideal.parse(ring, out.generators), K.with_ring(ring))


def test_deterministic_output():
    first = run_cli(str(SESSIONS / "linkage.kt"))
    second = run_cli(str(SESSIONS / "linkage.kt"))
    assert first == second


# -- JSON -----------------------------------------------------------------------------

def test_json_objects():
    code, out, _ = run_cli("--json", str(SESSIONS / "linkage.kt"))
    assert code == 0
    objs = [json.loads(line) for line in out.splitlines()]
    assert len(objs) == 6
    assert {"command", "inputs", "generators", "millis"} <= set(objs[0])
    assert objs[0]["generators"] == ["x^2", "y^2", "x*y"]
    deform = objs[3]
    assert deform["command"] == "verify_deformation a I s"
    assert deform["report"]["overall"] == "pass"
    assert "millis" in deform


def test_json_without_timings_is_stable():
    from kittab.session import execute
    sess = parse_session((SESSIONS / "linkage.kt").read_text())
    a = [execute(st).to_dict(timings=False) for st in sess.commands]
    b = [execute(st).to_dict(timings=False) for st in sess.commands]
    assert a == b


def test_json_structured_precondition_failure():
    code, out, _ = run_cli("--json", str(SESSIONS / "errors.kt"))
    assert code == 1
    first = json.loads(out.splitlines()[0])
    assert first["error"]["kind"] == "precondition"


def test_json_parse_error():
    code, out, _ = run_cli("--json", str(SESSIONS / "bad_parse.kt"))
    assert code == 2
    err = json.loads(out)["error"]
    assert (err["line"], err["column"]) == (3, 9)


def test_timeout_exit_code(tmp_path):
    session = tmp_path / "slow.kt"
    session.write_text(
        "ring R = QQ[a,b,c,d,e];\n"
        "ideal I = a^3+b^3+c^3+d^3+e^3, a*b*c*d*e-1, a^2*b+b^2*c+c^2*d+d^2*e+e^2*a, a^4-b*c*d*e;\n"
        "ideal m = a, b, c, d, e;\n"
        "colon I m;\ngb I;\n"
    )
    code, _, err = run_cli("--timeout-secs", "1", str(session))
    assert code == 3 and "timed out" in err


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "kittab.cli", "run", str(SESSIONS / "quartic.kt")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == (SESSIONS / "quartic.out").read_text()


def test_selftest_fast_tier(capsys):
    code = main(["selftest"])
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 8
    assert all(line.startswith("criterion ") for line in out)
    assert "[SKIP]" in out[2] and "[SKIP]" in out[3]
    # the literal display for f' cannot be reproduced, so criterion 1 fails honestly
    assert "[FAIL]" in out[0]
    assert code == 1
