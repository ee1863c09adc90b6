import json
import subprocess
import sys

import numpy as np
import pytest

from sucalc import jsonio
from sucalc.cli import main
from sucalc.matrix import make_commuting_tuple, matrix_from_json

MOTZKIN = "t1^4*t2^2 + t1^2*t2^4 - 3*t1^2*t2^2 + 1"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text if isinstance(text, str) else jsonio.dumps(text))
        return str(path)

    return _write


def test_certify_and_verify(write, tmp_path, capsys):
    pi = write("motzkin.txt", MOTZKIN)
    cert = str(tmp_path / "cert.json")
    assert main(["certify", pi, "--out", cert]) == 0
    data = json.loads(open(cert).read())
    assert data["n"] == 2 and data["m"] >= 0 and len(data["samples"]) == 10
    assert main(["verify", cert, pi]) == 0
    out = capsys.readouterr().out
    for name in ("COEFF", "ALGEBRA", "IDENTITY"):
        assert f"{name}" in out and "FAIL" not in out


@pytest.mark.parametrize("eps", ["1", "1/2"])
def test_certify_negative_constant(write, capsys, eps):
    assert main(["certify", write("neg.txt", "-1"), "--epsilon", eps]) == 2
    assert "negative coefficient -1" in capsys.readouterr().err


def test_certify_exhausted(write, capsys):
    # negative near t1 = 1 only at second order; small m_max cannot certify
    pi = write("p.txt", "t1^2 - 2*t1 + 1")
    code = main(["certify", pi, "--epsilon", "1/1000", "--m-max", "2"])
    assert code == 2
    assert "most negative coefficient" in capsys.readouterr().err


def test_certify_malformed(write):
    assert main(["certify", write("bad.txt", "t1 ** 2")]) == 1
    assert main(["certify", "/nonexistent/file.txt"]) == 1
    assert main(["certify", write("cplx.txt", "(0+1 i)*t1")]) == 1


def test_verify_tampered(write, tmp_path, capsys):
    pi = write("motzkin.txt", MOTZKIN)
    cert = str(tmp_path / "cert.json")
    main(["certify", pi, "--out", cert])
    data = json.loads(open(cert).read())
    data["sigma"][0][1] = "-" + data["sigma"][0][1]
    bad = write("bad.json", data)
    capsys.readouterr()
    assert main(["verify", bad, pi]) == 3
    assert "COEFF     FAIL" in capsys.readouterr().out
    other = write("other.txt", "t1^4*t2^2 + t1^2*t2^4 - 2*t1^2*t2^2 + 1")
    assert main(["verify", cert, other]) == 3
    assert "IDENTITY  FAIL" in capsys.readouterr().out
    assert main(["verify", write("junk.json", "{"), pi]) == 1


def test_spectrum(write, capsys):
    t = write("t.json", make_commuting_tuple(None, [[1, 2, 3]]).to_json())
    assert main(["spectrum", t]) == 0
    assert capsys.readouterr().out.strip() == "[[[1.0],1],[[2.0],1],[[3.0],1]]"


def test_calc(write, capsys):
    t = write("t.json", make_commuting_tuple(None, [[4, 9]]).to_json())
    assert main(["calc", t, "(sqrt (pr 1))"]) == 0
    m = matrix_from_json(json.loads(capsys.readouterr().out))
    assert np.allclose(m, np.diag([2, 3]))
    t = write("neg.json", make_commuting_tuple(None, [[-4, 9]]).to_json())
    assert main(["calc", t, "(sqrt (pr 1))"]) == 5
    assert main(["calc", t, "(sqrt (pr 1)"]) == 1


def test_noncommuting(write, capsys):
    data = {"n": 2, "matrices": [
        {"dim": 2, "entries": [[[1, 0], [0, 0]], [[0, 0], [2, 0]]]},
        {"dim": 2, "entries": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]},
    ]}
    assert main(["spectrum", write("nc.json", data)]) == 4
    assert "commutator" in capsys.readouterr().err


def test_props_and_gen(tmp_path, capsys):
    assert main(["props", "--seed", "1", "--cases", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["seed"] == 1 and len(data["suites"]) == 10
    assert all(s["failed"] == 0 for s in data["suites"])
    out = str(tmp_path / "g.json")
    assert main(["gen", "--seed", "4", "--dim", "5", "--n", "2", "--out", out]) == 0
    assert len(json.loads(open(out).read())["matrices"]) == 2


def test_byte_identical_output(write, tmp_path):
    runs = []
    for k in range(2):
        path = str(tmp_path / f"p{k}.json")
        main(["props", "--seed", "7", "--cases", "3", "--out", path])
        runs.append(open(path, "rb").read())
    assert runs[0] == runs[1]


def test_module_entry_point(write):
    t = write("t.json", make_commuting_tuple(3, [[1, 1, 2]]).to_json())
    outs = [
        subprocess.run([sys.executable, "-m", "sucalc", "spectrum", t],
                       capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1]
    assert json.loads(outs[0])[0][1] == 2
