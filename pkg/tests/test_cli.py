import json
import subprocess
import sys
from pathlib import Path

import pytest

from ellsurf.beauville import get_entry, named_models, pencil_to_weierstrass
from ellsurf.cli import main
from ellsurf.kodaira import InconsistencyError
from ellsurf.report import SurfaceReport, analyze, analyze_model, dumps, run_table
from ellsurf.weierstrass import WeierstrassModel

MODELS = Path(__file__).resolve().parent.parent / "models"


def _write(tmp_path, model, name="m.json"):
    p = tmp_path / name
    p.write_text(dumps(model.to_json()))
    return str(p)


def _run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


# --- shipped model files --------------------------------------------------------


@pytest.mark.parametrize(
    "fname,model",
    [
        ("s_j_line.json", lambda: named_models()["S_j"]),
        ("named_S.json", lambda: named_models()["S"]),
        ("named_S_prime.json", lambda: named_models()["S'"]),
        ("hesse.json", lambda: pencil_to_weierstrass(get_entry("Gamma(3)"))),
    ],
)
def test_model_files_are_regenerable(fname, model):
    on_disk = WeierstrassModel.from_json(json.loads((MODELS / fname).read_text()))
    assert on_disk == model()


# --- report -------------------------------------------------------------------------


def test_analyze_s_j_line():
    rep = analyze(str(MODELS / "s_j_line.json"))
    assert [(r["type"], r["place"]) for r in rep.configuration] == [("II", "t=0"), ("III*", "t=1728"), ("I1", "inf")]
    assert rep.euler == 12
    assert rep.trivial_lattice == {"rank": 9, "disc": 2}
    assert rep.mordell_weil["rank"] == 1 and rep.mordell_weil["group"] is None
    assert rep.delta["constant"] == "1"


def test_analyze_hesse():
    rep = analyze(str(MODELS / "hesse.json"))
    assert rep.mordell_weil["group_name"] == "(Z/3)^2"
    assert rep.trivial_lattice["disc"] == -81
    assert rep.flags == {"extremal": True, "semistable": True, "van_geemen_sarti": False}


def test_report_round_trip():
    rep = analyze(str(MODELS / "named_S.json"))
    data = json.loads(rep.dumps())
    assert SurfaceReport.from_json(data) == rep
    assert SurfaceReport.from_json(data).dumps() == rep.dumps()


def test_tampered_report_is_rejected():
    data = analyze(str(MODELS / "hesse.json")).to_json()
    data["trivial_lattice"]["disc"] = -9
    with pytest.raises(InconsistencyError):
        SurfaceReport.from_json(data)


def test_analyze_wrong_chi_is_inconsistent():
    with pytest.raises(InconsistencyError):
        analyze_model(named_models()["S"], chi=2)


def test_tables_structure():
    for which in ("mw", "mwl", "subgroups"):
        t = run_table(which)
        assert len(t["rows"]) == 6
        assert all(r["pipeline_passed"] for r in t["rows"])
    assert all(r["agrees"] for r in run_table("mw")["rows"])
    assert run_table("mwl")["reference_det_list"] == [8, 9, 18, 25, 108, 162]
    with pytest.raises(ValueError):
        run_table("bogus")


# --- CLI --------------------------------------------------------------------------------


def test_cli_analyze_text_and_json(capsys):
    rc, out, _ = _run(capsys, "analyze", "--model", str(MODELS / "named_S.json"), "--text")
    assert rc == 0
    assert "fibers: I3@t=0, I1@t=1/27, IV*@inf" in out
    rc, out, _ = _run(capsys, "analyze", "--model", str(MODELS / "named_S.json"), "--json")
    assert rc == 0
    assert json.loads(out)["mordell_weil"]["group"] == [3]


def test_cli_json_is_byte_identical(capsys):
    outs = []
    for _ in range(2):
        rc, out, _ = _run(capsys, "analyze", "--model", str(MODELS / "hesse.json"), "--json")
        assert rc == 0
        outs.append(out)
    assert outs[0] == outs[1]
    assert outs[0].strip() == dumps(json.loads(outs[0]))


def test_cli_malformed_json_exit_1(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    rc, _, err = _run(capsys, "analyze", "--model", str(p))
    assert rc == 1 and err


def test_cli_missing_file_exit_1(tmp_path, capsys):
    rc, _, _ = _run(capsys, "analyze", "--model", str(tmp_path / "nope.json"))
    assert rc == 1


def test_cli_singular_model_exit_1(tmp_path, capsys):
    path = _write(tmp_path, WeierstrassModel.from_coeffs(a6=0))
    rc, _, _ = _run(capsys, "analyze", "--model", path)
    assert rc == 1


def test_cli_inconsistency_exit_2(capsys):
    rc, _, err = _run(capsys, "analyze", "--model", str(MODELS / "named_S.json"), "--chi", "2")
    assert rc == 2 and err


def test_cli_rho_changes_rank(capsys):
    rc, out, _ = _run(capsys, "analyze", "--model", str(MODELS / "s_j_line.json"), "--json", "--rho", "9")
    assert rc == 0 and json.loads(out)["mordell_weil"]["rank"] == 0


def test_cli_beauville(capsys):
    rc, out, _ = _run(capsys, "beauville", "--entry", "all", "--json")
    assert rc == 0
    data = json.loads(out)
    assert len(data) == 6 and all(d["passed"] for d in data)
    rc, out, _ = _run(capsys, "beauville", "--entry", "Gamma1(5)", "--json")
    assert json.loads(out)["label"] == "Gamma1(5)"
    rc, _, _ = _run(capsys, "beauville", "--entry", "Gamma(7)")
    assert rc == 1


def test_cli_bielliptic(capsys):
    rc, out, _ = _run(capsys, "bielliptic", "--t1", "2", "--t2", "3", "--json")
    assert rc == 0
    data = json.loads(out)
    assert data["genus_two"] is True
    assert all(data["verified"].values())
    assert data["newsetting"]["parity_rule_holds"] is True
    rc, _, _ = _run(capsys, "bielliptic", "--t1", "1", "--t2", "3")
    assert rc == 1
    rc, _, _ = _run(capsys, "bielliptic", "--t1", "x", "--t2", "3")
    assert rc == 1


def test_cli_lattice(capsys):
    rc, out, _ = _run(capsys, "lattice", "--name", "T(1,1,2)")
    assert rc == 0 and json.loads(out)["disc"] == -4
    rc, out, _ = _run(capsys, "lattice", "--name", "U3-embed:3")
    data = json.loads(out)
    assert rc == 0 and data["primitive"] and data["gram_preserved"]
    rc, _, _ = _run(capsys, "lattice", "--name", "Q7")
    assert rc == 1


def test_cli_tables(capsys):
    for which in ("mw", "mwl", "subgroups"):
        rc, out, _ = _run(capsys, "table", which)
        assert rc == 0
        assert "h(P)=2-3.5/9=1/3" in out and "DISCREPANCY" in out
    rc, _, _ = _run(capsys, "table", "nope")
    assert rc == 1


def test_cli_search_bound_env(monkeypatch, capsys):
    monkeypatch.setenv("ELLSURF_SEARCH_BOUND", "-1")
    rc, _, _ = _run(capsys, "beauville", "--entry", "Gamma(3)")
    assert rc == 1


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "ellsurf", "table", "mw", "--json"], capture_output=True, text=True, check=False
    )
    assert r.returncode == 0
    assert json.loads(r.stdout)["table"] == "mw"
    r = subprocess.run([sys.executable, "-m", "ellsurf"], capture_output=True, text=True, check=False)
    assert r.returncode == 1
