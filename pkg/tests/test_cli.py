import io
import json
import subprocess
import sys

import pytest

from torus_torsion.cli import build_parser, run


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def _run(argv):
    buf = io.StringIO()
    code = run(argv, buf)
    return code, (json.loads(buf.getvalue()) if buf.getvalue() else None)


def _uni(*terms):
    return {"vars": 1, "polys": [{"terms": [{"coeff": str(c), "exp": str(e)} for c, e in terms]}]}


EX1 = _uni((1, 0), (1, 1), (1, 2), (-1, 2501941), (-1, 6088721), (-1, 6282199))


def test_cyclo_example(tmp_path):
    code, out = _run(["cyclo", _write(tmp_path, "f.json", EX1)])
    assert code == 0
    assert [(p["m"], p["e"]) for p in out["pairs"]] == [
        ("1", "7"), ("1", "11"), ("1", "13"), ("1", "17"), ("1", "19"), ("1", "23"), ("2", "2")
    ]


def test_cyclo_expand_and_raw(tmp_path):
    f = _write(tmp_path, "f.json", _uni((1, 6), (-1, 0)))
    code, out = _run(["cyclo", f, "--expand"])
    assert code == 0 and out["expanded"] == ["1", "2", "3", "6"]
    code, raw = _run(["cyclo", f, "--raw"])
    assert code == 0 and len(raw["pairs"]) >= len(out["pairs"])


def test_cyclo_zero_polynomial(tmp_path):
    code, out = _run(["cyclo", _write(tmp_path, "z.json", _uni((1, 3), (-1, 3)))])
    assert code == 0 and out == {"pairs": [], "whole_torus": True}


def test_cyclo_rejects_multivariate(tmp_path):
    doc = {"vars": 2, "polys": [{"terms": [{"coeff": "1", "exp": ["1", "1"]}]}]}
    assert _run(["cyclo", _write(tmp_path, "f.json", doc)])[0] == 1


@pytest.mark.parametrize(
    "doc",
    [
        "not json",
        {"vars": 1},
        {"vars": 1, "polys": []},
        {"vars": 1, "polys": [{"terms": [{"coeff": "x", "exp": "1"}]}]},
        {"vars": 1, "polys": [{"terms": [{"coeff": "1", "exp": "-1"}]}]},
        {"vars": 2, "polys": [{"terms": [{"coeff": "1", "exp": ["1"]}]}]},
        {"vars": 1, "polys": [{"terms": [{"coeff": 1.5, "exp": "1"}]}]},
    ],
)
def test_bad_input_exit_code(tmp_path, doc):
    assert _run(["cyclo", _write(tmp_path, "bad.json", doc)])[0] == 1


def test_incomplete_factorization_exit_code(tmp_path):
    # X^e - 1 with e = 1000003 * 1000033 needs factoring e
    f = _write(tmp_path, "f.json", _uni((1, 1000003 * 1000033), (-1, 0)))
    assert _run(["cyclo", f, "--expand", "--factor-bound", "100"])[0] == 3
    pairs = _write(tmp_path, "p.json", {"pairs": [{"m": "1", "e": str(1000003 * 1000033)}]})
    assert _run(["expand", pairs, "--factor-bound", "100"])[0] == 3


def test_expand(tmp_path):
    pairs = _write(tmp_path, "p.json", {"pairs": [{"m": "1", "e": "22"}, {"m": "3", "e": "6"}]})
    code, out = _run(["expand", pairs])
    assert code == 0 and out["expanded"] == ["1", "2", "9", "11", "18", "22"]
    bad = _write(tmp_path, "b.json", {"pairs": [{"m": "4", "e": "1"}]})
    assert _run(["expand", bad])[0] == 1


def test_cosets_variety(tmp_path):
    doc = {
        "vars": 2,
        "polys": [
            {"terms": [{"coeff": "1", "exp": ["1", "1"]}, {"coeff": "-1", "exp": ["0", "0"]}]},
            {"terms": [{"coeff": "1", "exp": ["1", "0"]}, {"coeff": "-1", "exp": ["0", "1"]}]},
        ],
    }
    code, out = _run(["cosets", _write(tmp_path, "v.json", doc)])
    assert code == 0
    assert out == {"cosets": [{"L": [["1", "1"], ["0", "2"]], "omega": {"residues": ["0", "0"], "modulus": "1"}}]}


def test_build_worstcase_and_roundtrip(tmp_path):
    code, doc = _run(["build-worstcase", "--n", "2", "--primes", "5,7"])
    assert code == 0 and doc["exponents"] == ["0", "1", "15", "21"]
    f = _write(tmp_path, "w.json", doc)
    code, out = _run(["cyclo", f])
    r = _write(tmp_path, "r.json", out)
    code, rep = _run(["verify", f, r, "--max-order", "40"])
    assert code == 0 and rep["ok"]
    assert _run(["build-worstcase", "--n", "2", "--primes", "5,5"])[0] == 1


def test_qn():
    code, out = _run(["qn", "--n", "5"])
    assert code == 0 and out == ["1", "2", "3", "5", "6", "10"]
    assert _run(["qn", "--n", "-1"])[0] == 1


def test_verify_detects_mismatch(tmp_path):
    f = _write(tmp_path, "f.json", _uni((1, 6), (-1, 0)))
    wrong = _write(tmp_path, "r.json", {"pairs": [{"m": "1", "e": "3"}]})
    code, rep = _run(["verify", f, wrong])
    assert code == 4 and not rep["ok"] and rep["missing"] == ["2", "6"]

    g = _write(tmp_path, "g.json", {"vars": 2, "polys": [{"terms": [
        {"coeff": "1", "exp": ["1", "1"]}, {"coeff": "-1", "exp": ["0", "0"]}]}]})
    code, out = _run(["cosets", g])
    ok = _write(tmp_path, "ok.json", out)
    assert _run(["verify", g, ok, "--max-order", "12"])[0] == 0
    assert _run(["verify", g, _write(tmp_path, "e.json", {"cosets": []})])[0] == 4


def test_output_is_deterministic(tmp_path):
    f = _write(tmp_path, "f.json", EX1)
    outs = set()
    for threads in ("1", "2"):
        buf = io.StringIO()
        run(["cyclo", f, "--threads", threads], buf)
        outs.add(buf.getvalue())
    assert len(outs) == 1


def test_threads_env_default(monkeypatch):
    monkeypatch.setenv("TORUS_TORSION_THREADS", "3")
    args = build_parser().parse_args(["cosets", "x.json"])
    assert args.threads == 3


def test_stats_go_to_stderr(tmp_path, capsys):
    f = _write(tmp_path, "f.json", EX1)
    buf = io.StringIO()
    assert run(["cyclo", f, "--stats"], buf) == 0
    stats = json.loads(capsys.readouterr().err)["stats"]
    assert stats["partitions"] > 0 and stats["terms"] == [6]
    assert "pairs" in json.loads(buf.getvalue())


def test_console_entry_point(tmp_path):
    f = _write(tmp_path, "f.json", _uni((1, 2), (1, 1), (1, 0)))
    proc = subprocess.run(
        [sys.executable, "-m", "torus_torsion", "cyclo", f], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pairs"] == [{"m": "3", "e": "1"}]
