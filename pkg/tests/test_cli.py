import io as stdio
import json

import pytest

from tamewild import io
from tamewild.cli import run
from tamewild.endomorphism import Endomorphism
from tamewild.euclid_ring import ZZ
from tamewild.fixtures import anick_delta, anick_delta_inverse
from tamewild.free_algebra import FreeAlgebra


def call(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write_endo(tmp_path, name, phi):
    p = tmp_path / name
    p.write_text(io.dumps(io.endomorphism_document(phi)), encoding="utf-8")
    return str(p)


def test_decide_delta_wild():
    code, out, _ = call("decide", "--ring", "Z", "--fixture", "anick-delta", "--z", "2")
    assert code == 0
    assert out.startswith("verdict: WILD\n")
    assert "automorphism check: VERIFIED" in out
    assert "-2*c1 = -1" in out and "status: fraction_only" in out


def test_decide_delta_polynomial_ring_structured():
    code, out, _ = call("decide", "--ring", "Q[t]", "--fixture", "anick-delta", "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "WILD"
    assert doc["witness"]["equations"] == ["-t*c1 = -1"]
    assert doc["automorphism_check"]["status"] == "VERIFIED"


def test_decide_unit_z_tame():
    code, out, _ = call("decide", "--fixture", "anick-delta", "--z", "1")
    assert code == 0 and out.startswith("verdict: TAME")
    assert "linear_finish" in out and "factorization (8 elementary" in out


def test_dims():
    code, out, _ = call("dims", "--rank", "3", "--mode", "lie", "--max-degree", "5")
    assert code == 0
    rows = [line.split() for line in out.strip().splitlines()]
    assert rows[0] == ["degree", "basis", "witt"]
    assert [int(r[1]) for r in rows[1:]] == [3, 3, 8, 18, 48]
    assert all(r[1] == r[2] for r in rows[1:])
    _, out, _ = call("dims", "--mode", "anti", "--max-degree", "4")
    assert [int(r.split()[1]) for r in out.strip().splitlines()[1:]] == [3, 3, 9, 30]


def test_compose_delta_with_inverse(tmp_path):
    A = FreeAlgebra(3, ZZ)
    f = write_endo(tmp_path, "delta.json", anick_delta(A, 2))
    g = write_endo(tmp_path, "inv.json", anick_delta_inverse(A, 2))
    assert call("compose", f, g)[1] == "id\n"
    assert call("compose", f, "anick-delta-inverse")[1] == "id\n"
    code, out, _ = call("compose", f)
    assert code == 0 and out.startswith("x1 -> ")


def test_normalize_bracket_apply():
    assert call("normalize", "[x2, x1]")[1] == "-[x1,x2]\n"
    assert call("normalize", "[x1, x1]")[1] == "0\n"
    assert call("bracket", "x2", "x1 + x3")[1] == "-[x1,x2] + [x2,x3]\n"
    code, out, _ = call("apply", "--fixture", "anick-delta", "x3")
    assert code == 0 and out == "x3\n"


def test_fixture_file_round_trip(tmp_path):
    code, out, _ = call("fixture", "anick-delta", "--format", "structured")
    p = tmp_path / "d.json"
    p.write_text(out, encoding="utf-8")
    code, out2, _ = call("decide", "--input", str(p), "--format", "structured")
    assert code == 0 and json.loads(out2)["verdict"] == "WILD"
    A = FreeAlgebra(3, ZZ)
    assert io.load_endomorphism(str(p)) == anick_delta(A, 2)


def test_chain_fixture():
    code, out, _ = call("fixture", "anick-chain")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 5


def test_determinism():
    argv = ("random-tame", "--seed", "7", "--factors", "4", "--format", "structured")
    assert call(*argv) == call(*argv)
    a = call("decide", "--fixture", "anick-delta", "--z", "1", "--format", "structured")
    assert a == call("decide", "--fixture", "anick-delta", "--z", "1", "--format", "structured")


def test_replay(tmp_path):
    _, out, _ = call("random-tame", "--seed", "3", "--factors", "4", "--format", "structured")
    src = tmp_path / "phi.json"
    src.write_text(out, encoding="utf-8")
    code, trace, _ = call("decide", "--input", str(src), "--format", "structured")
    assert code == 0 and json.loads(trace)["verdict"] == "TAME"
    tp = tmp_path / "trace.json"
    tp.write_text(trace, encoding="utf-8")
    code, out, _ = call("replay", str(tp))
    assert code == 0 and out.endswith(": ok\n")
    doc = json.loads(trace)
    doc["factorization"] = doc["factorization"][1:]
    tp.write_text(json.dumps(doc), encoding="utf-8")
    assert call("replay", str(tp))[0] == 4


def test_normal_form_command():
    code, out, _ = call("normal-form", "--fixture", "anick-delta", "--z", "1")
    assert code == 0 and out.startswith("k = 2\n")
    code, _, err = call("normal-form", "--fixture", "anick-delta")
    assert code == 4 and "WILD" in err


def test_verify_auto_command(tmp_path):
    code, out, _ = call("verify-auto", "--fixture", "anick-delta")
    assert code == 0 and out.startswith("VERIFIED")
    A = FreeAlgebra(3, ZZ)
    f = write_endo(tmp_path, "bad.json", Endomorphism(A, [A.gen(1).scale(2), A.gen(2), A.gen(3)]))
    assert call("verify-auto", "--input", f)[0] == 5
    assert call("decide", "--input", f)[0] == 5


@pytest.mark.parametrize(
    "argv,code",
    [
        (("normalize", "[x1, x2"), 3),
        (("normalize", "x4"), 3),
        (("decide", "--fixture", "anick-delta", "--rank", "2"), 4),
        (("decide",), 4),
        (("decide", "--fixture", "nope"), 4),
        (("dims", "--max-degree", "0"), 2),
        (("bogus",), 2),
        (("decide", "--fixture", "anick-delta", "--z", "1", "--step-budget", "1", "--no-verify"), 6),
    ],
)
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_parse_error_reports_position():
    code, _, err = call("normalize", "x1 + ?")
    assert code == 3 and "?" in err


def test_flag_mismatch_with_input(tmp_path):
    A = FreeAlgebra(3, ZZ)
    f = write_endo(tmp_path, "d.json", anick_delta(A, 2))
    code, _, err = call("decide", "--input", f, "--ring", "Q[t]")
    assert code == 4 and "disagrees" in err
