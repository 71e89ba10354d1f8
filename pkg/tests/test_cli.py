import io
import json
import subprocess
import sys

import pytest

from graphentropy.cli import run

C5 = "nodes 5\n0 <-> 1\n1 <-> 2\n2 <-> 3\n3 <-> 4\n4 <-> 0\n"
RELAY = "nodes 3\n0 -> 1\n1 -> 2\npair 0 2\n"
BOTTLENECK = "nodes 5\n0 -> 2\n1 -> 2\n2 -> 3\n2 -> 4\npair 0 3\npair 1 4\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in (("c5.g", C5), ("relay.n", RELAY), ("bott.n", BOTTLENECK)):
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    return paths


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    text = out.getvalue()
    return code, (json.loads(text) if "--format" not in argv or "json" in argv else text)


def test_entropy_pentagon(files):
    code, rep = call("entropy", "--graph", files["c5.g"], "--ineq", "shannon")
    assert code == 0 and rep["status"] == "ok"
    v = rep["results"]["value"]
    assert (v["num"], v["den"]) == (5, 2)
    assert rep["command"][0] == "entropy" and files["c5.g"] in rep["inputs"]
    assert len(rep["inputs"][files["c5.g"]]) == 64 and rep["wall_time_ms"] >= 0


def test_guess_pentagon(files):
    code, rep = call("guess", "--graph", files["c5.g"], "--s", "2", "--mode", "exact")
    v = rep["results"]["value"]
    assert code == 0 and (v["count"], v["base"]) == (5, 2)
    assert len(rep["results"]["code"]["words"]) == 5 and rep["results"]["code_valid"]


def test_guess_sandwich(files):
    code, rep = call("guess", "--graph", files["c5.g"], "--s", "4", "--mode", "sandwich")
    assert code == 0 and rep["results"]["closed"]
    assert (rep["results"]["value"]["num"], rep["results"]["value"]["den"]) == (5, 2)
    code, rep = call("guess", "--graph", files["c5.g"], "--s", "2", "--mode", "sandwich")
    assert code == 0 and rep["status"] == "bounds" and "value" not in rep["results"]


def test_tournaments():
    code, rep = call("tournaments", "--n", "5")
    assert code == 0 and rep["results"]["classes"] == 12


def test_tournaments_entropy_report():
    code, rep = call("tournaments", "--n", "4", "--report-entropy", "--s", "2")
    rows = rep["results"]["tournaments"]
    assert len(rows) == 4 and all(r["guess_le_entropy"] for r in rows)


def test_index_commands(files):
    code, rep = call("index-bound", "--graph", files["c5.g"], "--ineq", "zy")
    assert code == 0 and rep["results"]["value"]["num"] == 5
    code, rep = call("index-code", "--graph", files["c5.g"], "--s", "4", "--mode", "construct")
    assert code == 0 and rep["results"]["messages"] == 32 and rep["status"] == "upper-bound"
    code, rep = call("index-code", "--graph", files["c5.g"], "--s", "2", "--witness")
    assert code == 0 and rep["results"]["exact"] and rep["results"]["messages"] >= 7
    assert len(rep["results"]["coloring"]["colours"]) == 32


def test_index_code_with_supplied_colouring(files, tmp_path):
    colours = {format(x, "05b"): x for x in range(32)}
    p = tmp_path / "col.json"
    p.write_text(json.dumps({"colours": colours}))
    code, rep = call("index-code", "--graph", files["c5.g"], "--s", "2", "--mode", "construct",
                     "--coloring", str(p))
    assert code == 0 and rep["results"]["valid"]


def test_network_commands(files, tmp_path):
    code, rep = call("identify", "--network", files["relay.n"])
    assert rep["results"]["edges"] == [[0, 1], [1, 0]]
    code, rep = call("solve", "--network", files["bott.n"], "--s", "2")
    assert code == 0 and rep["results"]["solvable"] is False
    code, rep = call("capacity11", "--network", files["relay.n"], "--ineq", "shannon")
    assert rep["results"]["capacity11"] is True
    code, rep = call("split", "--graph", files["c5.g"])
    assert rep["results"]["k"] == 3 and rep["results"]["minimal"]
    p = tmp_path / "asg.json"
    p.write_text(json.dumps({"s": 2, "tables": {"1": [0, 1], "2": [0, 1]}}))
    code, rep = call("solve", "--network", files["relay.n"], "--s", "2", "--assignment", str(p))
    assert rep["results"]["assignment_solves"] and rep["results"]["solvable"]


def test_custom_inequality_file(files, tmp_path):
    p = tmp_path / "zy.ineq"
    from graphentropy.entropic import ZY_TEMPLATE_TEXT
    p.write_text(ZY_TEMPLATE_TEXT)
    code, rep = call("entropy", "--graph", files["c5.g"], "--ineq", f"file:{p}")
    assert code == 0 and rep["results"]["value"]["num"] == 5 and str(p) in rep["inputs"]
    bad = tmp_path / "bad.ineq"
    bad.write_text("# ok\nf(A) f(B) >= 0\n")
    code, rep = call("entropy", "--graph", files["c5.g"], "--ineq", f"file:{bad}")
    assert code == 2 and "line 2" in rep["error"]


def test_error_exit_codes(files, tmp_path):
    code, rep = call("entropy", "--graph", str(tmp_path / "missing.g"))
    assert code == 2 and rep["status"] == "input-error"
    bad = tmp_path / "bad.g"
    bad.write_text("nodes 2\n0 -> 1\n0 -> 7\n")
    code, rep = call("entropy", "--graph", str(bad))
    assert code == 2 and "line 3" in rep["error"]
    code, rep = call("entropy", "--graph", files["c5.g"], "--bogus")
    assert code == 2
    big = tmp_path / "big.g"
    big.write_text("nodes 16\n" + "".join(f"{i} <-> {j}\n" for i in range(16)
                                          for j in range(i + 1, 16)))
    code, rep = call("guess", "--graph", str(big), "--s", "2")
    assert code == 3 and rep["status"] == "budget"


def test_text_format(files):
    code, text = call("entropy", "--graph", files["c5.g"], "--format", "text")
    assert code == 0 and "value: 5/2 (2.5)" in text


def test_format_before_subcommand(files):
    code, text = call("--format", "text", "entropy", "--graph", files["c5.g"])
    assert code == 0 and "value: 5/2 (2.5)" in text
    code, rep = call("--format", "text", "entropy", "--graph", files["c5.g"], "--format", "json")
    assert code == 0 and rep["status"] == "ok"


def test_json_is_stably_ordered(files):
    _, a = call("entropy", "--graph", files["c5.g"])
    out = io.StringIO()
    run(["entropy", "--graph", files["c5.g"]], out=out)
    keys = list(json.loads(out.getvalue()))
    assert keys == sorted(keys)


def test_console_script(files):
    proc = subprocess.run([sys.executable, "-m", "graphentropy.cli", "tournaments", "--n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["results"]["classes"] == 4
