import io
import json
import subprocess
import sys

import pytest

from pte_designs.cli import run
from pte_designs.ellipse import DesignSet, shell_points
from pte_designs.families import gen_alpers_tijdeman, gen_borwein1d, gen_chernick, gen_hexagon_pte1d
from pte_designs.pte import PteSolution


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def report(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


@pytest.fixture
def files(tmp_path):
    paths = {}

    def put(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj), encoding="utf-8")
        paths[name] = str(p)

    put("hexagon.json", shell_points(3, 1).to_json())
    put("at11.json", gen_alpers_tijdeman(1, 1).to_json())
    put("borwein.json", gen_borwein1d(2, 4).to_json())
    put("hex1d.json", gen_hexagon_pte1d(0, 2).to_json())
    put("chernick.json", gen_chernick(1, 2).to_json())
    put("bad.json", {"dimension": 1})
    put("bad_rat.json", {"D": 3, "r": "1", "points": [["1.5", "0"]]})
    (tmp_path / "garbage.json").write_text("{not json", encoding="utf-8")
    paths["garbage.json"] = str(tmp_path / "garbage.json")
    return paths


def test_verify_design_ok(files):
    code, rep = report("verify", "design", "--file", files["hexagon.json"], "--degree", "5")
    assert code == 0 and rep["outcome"] == "ok"


def test_verify_design_names_failing_k(files):
    code, rep = report("verify", "design", "--file", files["hexagon.json"], "--degree", "6")
    assert code == 1 and rep["outcome"] == "invalid"
    assert rep["diagnostics"]["first_failing_k"] == 6


def test_verify_T_shell(files):
    code, rep = report("verify", "design", "--file", files["hexagon.json"], "--degree", "12", "--T-shell")
    assert code == 0


def test_verify_pte_at11(files):
    code, rep = report("verify", "pte", "--file", files["at11.json"])
    assert code == 0 and rep["diagnostics"]["max_valid_degree"] == 5
    code, rep = report("verify", "pte", "--file", files["at11.json"], "--degree", "6")
    assert code == 1 and rep["diagnostics"]["first_failure"] is not None


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "borwein1d", "--param", "m=2", "--param", "n=4"],
        ["gen", "hexagon-design", "--param", "t=2"],
        ["gen", "bessel2", "--param", "z1=-2", "--param", "z2=0"],
        ["gen", "mlsu", "--samples", "5"],
        ["shell", "--D", "3", "--norm", "1"],
        ["shell", "--D", "3", "--norm", "3/4"],
        ["orbit", "--D", "3", "--point", "1,0"],
    ],
)
def test_ok_commands(argv):
    code, rep = report(*argv)
    assert code == 0, rep


def test_gen_payload_roundtrip():
    code, rep = report("gen", "borwein1d", "--param", "m=2", "--param", "n=4")
    s = PteSolution.from_json(rep["payload"])
    assert s == gen_borwein1d(2, 4)
    assert PteSolution.from_json(json.loads(json.dumps(s.to_json()))) == s
    code, rep = report("shell", "--D", "3", "--norm", "1")
    assert DesignSet.from_json(rep["payload"]) == shell_points(3, 1)


def test_bessel_roundtrip():
    code, rep = report("gen", "bessel2", "--param", "z1=-2", "--param", "z2=0")
    s = PteSolution.from_json(rep["payload"])
    assert PteSolution.from_json(s.to_json()) == s


def test_samples_are_seeded():
    a = call("--seed", "3", "gen", "chernick", "--samples", "3")
    b = call("--seed", "3", "gen", "chernick", "--samples", "3")
    c = call("--seed", "4", "gen", "chernick", "--samples", "3")
    assert a == b and a != c


def test_equiv(files):
    code, rep = report("equiv", "--left", files["borwein.json"], "--right", files["hex1d.json"])
    assert code == 0
    assert rep["payload"]["obstruction"] == {"obstructed": True, "ratio": "1/133"}
    assert rep["payload"]["equivalent"] is False
    code, rep = report("equiv", "--left", files["chernick.json"], "--right", files["chernick.json"], "--obstruction-only")
    assert code == 0 and rep["payload"]["obstruction"]["obstructed"] is False


def test_search_lines():
    code, text = call("search", "pte", "--dim", "1", "--degree", "1", "--size", "2", "--bound", "3")
    lines = [json.loads(x) for x in text.splitlines()]
    assert code == 0 and lines[-1]["summary"] and lines[-1]["count"] == len(lines) - 1
    code, text = call("search", "stroud", "--D", "3", "--norm", "1", "--degree", "5")
    assert code == 0 and json.loads(text.splitlines()[-1]) == {"summary": True, "count": 0, "states": 62}


def test_rotate_and_lift(files):
    code, rep = report("rotate", "--D", "3", "--t", "2", "--file", files["hexagon.json"])
    assert code == 0 and len(rep["payload"]["points"]) == 6
    code, rep = report("lift", "--file", files["borwein.json"])
    assert code == 0 and rep["payload"]["dimension"] == 2
    code, rep = report("lift", "--file", files["at11.json"])
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        ["verify", "design", "--file", "/nonexistent.json", "--degree", "5"],
        ["verify", "design", "--file", "{garbage.json}", "--degree", "5"],
        ["verify", "design", "--file", "{bad_rat.json}", "--degree", "5"],
        ["verify", "pte", "--file", "{bad.json}"],
        ["verify", "design", "--file", "{hexagon.json}"],
        ["gen", "borwein1d", "--param", "m=1.5", "--param", "n=1"],
        ["gen", "borwein1d", "--param", "m=1"],
        ["shell", "--D", "4", "--norm", "1"],
        ["shell", "--D", "3", "--norm", "1/0"],
        ["orbit", "--D", "2", "--point", "1,0"],
        ["orbit", "--D", "3", "--point", "1"],
        ["search", "pte", "--dim", "2", "--degree", "5", "--size", "6", "--bound", "10", "--budget", "100"],
        ["equiv", "--left", "{at11.json}", "--right", "{borwein.json}"],
        ["rotate", "--D", "1", "--t", "2", "--file", "{hexagon.json}"],
    ],
)
def test_usage_errors(files, argv):
    argv = [files[a[1:-1]] if a.startswith("{") else a for a in argv]
    code, _ = call(*argv)
    assert code == 2


def test_thread_cap_env(monkeypatch):
    monkeypatch.setenv("PTE_DESIGNS_THREADS", "2")
    assert call("shell", "--D", "3", "--norm", "1")[0] == 0
    monkeypatch.setenv("PTE_DESIGNS_THREADS", "zero")
    assert call("shell", "--D", "3", "--norm", "1")[0] == 2


def test_deterministic_output(files):
    assert call("verify", "pte", "--file", files["at11.json"]) == call("verify", "pte", "--file", files["at11.json"])


def test_console_script(files):
    proc = subprocess.run(
        [sys.executable, "-m", "pte_designs.cli", "verify", "design", "--file", files["hexagon.json"], "--degree", "6"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["diagnostics"]["first_failing_k"] == 6


def test_reports_chain_as_inputs(tmp_path):
    code, text = call("gen", "borwein1d", "--param", "m=2", "--param", "n=4")
    path = tmp_path / "b24.json"
    path.write_text(text, encoding="utf-8")
    code, rep = report("lift", "--file", str(path))
    assert code == 0 and rep["diagnostics"]["max_valid_degree"] == 5
