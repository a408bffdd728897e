import io
import json
import subprocess
import sys

import pytest

from qgcount.cli import run
from qgcount.specfile import corpus_paths
from qgcount.verify import parse

CORPUS_FILES = {p.stem: str(p) for p in corpus_paths()}
EXAMPLE = CORPUS_FILES["example"]


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(p)


def test_count_example():
    assert call("count", EXAMPLE, "--xi", "1,1", "--k", "4") == (0, "11\n")
    assert call("count", EXAMPLE, "--xi", "1,1", "--k", "4", "--strategy", "bbox") == (0, "11\n")


def test_count_table():
    code, out = call("count", EXAMPLE, "--xi", "1,1", "--k", "4", "--table")
    assert code == 0
    assert out.splitlines() == ["k,count", "0,1", "1,2", "2,4", "3,7", "4,11"]


def test_verify_example_default_xi(tmp_path):
    path = tmp_path / "r.json"
    code, out = call("verify", EXAMPLE, "--kmax", "60", "--json", str(path))
    assert code == 0
    assert "xi = (0, 1) (reeb-certified)" in out
    assert "b2 = 3/2, b1 = 5/2, b0 = 1" in out
    r = parse(path.read_text())
    assert r.xi == (0, 1) and r.xi_source == "reeb-certified"
    assert [str(c) for c in r.coefficients[0]] == ["1", "5/2", "3/2"]
    assert r.reeb is not None and r.reeb.rational_xi == (0, 1)


def test_verify_given_xi():
    code, out = call("verify", EXAMPLE, "--xi", "1,1")
    assert code == 0 and "period = 4" in out and "(given)" in out


def test_reeb_example():
    code, out = call("reeb", EXAMPLE)
    assert code == 0
    assert "direction (0, 1) (certified" in out
    assert "xi_c = (0.000000000000e+00, 3.000000000000e+00)" in out


def test_reeb_irrational_candidates():
    code, out = call("reeb", CORPUS_FILES["dp1"])
    assert code == 0 and "no rational direction certified" in out
    assert "  (-1, 0, 8)" in out


def test_check_example():
    code, out = call("check", EXAMPLE)
    assert code == 0 and "lambda = (-3, -2), l = 3" in out and "smooth facets: yes" in out


def test_ehrhart_example():
    code, out = call("ehrhart", EXAMPLE, "--xi", "1,1")
    assert code == 0
    assert "degree 2, period 4" in out
    assert "k = 1 mod 4: b2 = 3/8, b1 = 1, b0 = 5/8" in out


def test_deterministic_json(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert call("verify", CORPUS_FILES["dp1"], "--json", str(a))[0] == 0
    assert call("--threads", "2", "verify", CORPUS_FILES["dp1"], "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_json_to_stdout():
    code, out = call("verify", EXAMPLE, "--xi", "1,1", "--json", "-")
    assert code == 0
    doc = json.loads(out[out.index("\n{") + 1:])
    assert doc["period"] == 4 and doc["vol"] == "3/8"


@pytest.mark.parametrize("name", sorted(CORPUS_FILES))
def test_corpus_gate(name):
    code, out = call("verify", CORPUS_FILES[name])
    assert code == 0, out


def test_exit_code_matches_verdict():
    for path in CORPUS_FILES.values():
        code, out = call("verify", path)
        verdict = out.splitlines()[-1]
        assert (code, verdict) in ((0, "PASS"), (1, "FAIL"))


def test_malformed_file(tmp_path, capsys):
    p = write(tmp_path, "bad.json", '{"dim": 2, "rays": [[1, 0], [1]]}')
    assert call("check", p)[0] == 2
    assert "rays[1]" in capsys.readouterr().err
    p = write(tmp_path, "bad2.json", '{"dim": 2,')
    assert call("verify", p)[0] == 2
    assert "bad2.json:1:" in capsys.readouterr().err


def test_hypothesis_failures(tmp_path, capsys):
    p = write(tmp_path, "ng.json", {"dim": 3, "rays": [[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 2]]})
    assert call("verify", p)[0] == 2
    assert "NotGorenstein" in capsys.readouterr().err
    p = write(tmp_path, "ns.json", {"dim": 3, "rays": [[0, 1, 0], [0, 0, 1], [2, -1, 0]]})
    assert call("check", p)[0] == 2
    assert "NotSmooth" in capsys.readouterr().err
    assert call("verify", p, "--xi", "1,1,1")[0] == 2
    p = write(tmp_path, "np.json", {"dim": 2, "rays": [[1, 0], [-1, 0], [0, 1]]})
    assert call("check", p)[0] == 2
    assert "NotPointed" in capsys.readouterr().err


def test_bad_xi(capsys):
    assert call("verify", EXAMPLE, "--xi", "1,0")[0] == 2
    assert "interior" in capsys.readouterr().err
    assert call("verify", EXAMPLE, "--xi", "2,2")[0] == 2
    assert "primitive" in capsys.readouterr().err
    assert call("count", EXAMPLE, "--xi", "a,b", "--k", "2")[0] == 2
    assert call("count", EXAMPLE, "--k", "2")[0] == 2


def test_usage_errors():
    assert call()[0] == 2
    assert call("frobnicate", EXAMPLE)[0] == 2
    assert call("--threads", "0", "check", EXAMPLE)[0] == 2


def test_polytope_file(tmp_path):
    p = write(tmp_path, "p2.json", {"name": "P2", "dim": 2,
                                    "polytope_vertices": [[-1, -1], [2, -1], [-1, 2]]})
    code, out = call("verify", p)
    assert code == 0 and "margin = 0" in out
    assert call("count", p, "--k", "1") == (0, "10\n")
    code, out = call("count", p, "--k", "3", "--xi", "0,0,1")
    assert out == f"{1 + 10 + 28 + 55}\n"
    code, out = call("ehrhart", p)
    assert "b2 = 9/2, b1 = 9/2, b0 = 1" in out
    q = write(tmp_path, "off.json", {"dim": 2, "polytope_vertices": [[0, 0], [1, 0], [0, 1]]})
    assert call("verify", q)[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qgcount", "count", EXAMPLE, "--xi", "1,1", "--k", "4"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "11\n"
