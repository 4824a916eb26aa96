import json
import os

import pytest

from ittp import cli
from ittp.construct import orient_pairwise, shuffled_rr_prefix, zero_break_haps
from ittp.heuristic import gm_constructive
from ittp.instance import generate, load, write
from ittp.schedule import Timetable, validate


def _lines(capsys):
    return [json.loads(ln) for ln in capsys.readouterr().out.splitlines() if ln.startswith("{")]


@pytest.fixture()
def circ8(tmp_path):
    path = tmp_path / "CIRC8.ittp"
    write(generate("CIRC", 8, 4, 3), path)
    return path


def test_gen_then_load(tmp_path, capsys):
    out = tmp_path / "CON6.ittp"
    assert cli.main(["gen", "--family", "CON", "--n", "6", "--out", str(out)]) == 0
    inst = load(out, r=2, lam=1)
    assert inst.n == 6 and inst.d(0, 1) == 1
    assert _lines(capsys)[0]["written"] == str(out)


def test_validate_feasible_and_infeasible(circ8, tmp_path, capsys):
    inst = load(circ8, r=4, lam=3)
    good = tmp_path / "good.tt"
    gm_constructive(inst, zero_break_haps(8, 4)).best_timetable.write(good)
    assert cli.main(["validate", str(circ8), "--r", "4", "--lambda", "3", str(good)]) == 0
    payload = _lines(capsys)[-1]
    assert payload["feasible"] is True
    assert payload["total_legs"] == 16 + payload["trips"]

    bad = tmp_path / "bad.tt"
    tt = Timetable.read(good)
    swapped = Timetable((tt.rounds[0],) + tt.rounds[:3])  # duplicate pairings
    swapped.write(bad)
    assert cli.main(["validate", str(circ8), "--r", "4", "--lambda", "3", str(bad)]) == 1


def test_lb_methods(circ8, capsys):
    assert cli.main(["lb", str(circ8), "--r", "4", "--lambda", "3", "--method", "ilb"]) == 0
    report = _lines(capsys)[-1]
    assert report["method"] == "ILB" and report["status"] == "optimal"
    assert report["instance"] == "CIRC8-4"

    assert cli.main(["lb", str(circ8), "--r", "4", "--lambda", "3", "--method", "dlb"]) == 0
    assert _lines(capsys)[-1]["value"] >= report["value"]

    assert cli.main(["lb", str(circ8), "--r", "4", "--lambda", "3", "--method", "minlegs"]) == 0
    assert _lines(capsys)[-1]["value"] == 8 * 4 // 2 + 8 * 1


def test_solve_gm_iterative(circ8, tmp_path, capsys):
    out = tmp_path / "best.tt"
    code = cli.main([
        "solve", str(circ8), "--r", "4", "--lambda", "3", "--algo", "gm-it",
        "--seeds", "3", "--streak", "150", "--out", str(out),
    ])
    assert code == 0
    lines = _lines(capsys)
    per_seed = [l for l in lines if "aggregate" not in l]
    agg = [l for l in lines if l.get("aggregate")][0]
    assert len(per_seed) == 3
    assert agg["best"] == min(l["best_value"] for l in per_seed)
    assert agg["best"] <= agg["mean"]
    inst = load(circ8, r=4, lam=3)
    assert validate(inst, Timetable.read(out)) == []


def test_solve_exact(tmp_path, capsys):
    path = tmp_path / "CON6.ittp"
    write(generate("CON", 6, 2, 1), path)
    code = cli.main(["solve", str(path), "--r", "2", "--lambda", "1", "--algo", "exact",
                     "--out", str(tmp_path / "t.tt")])
    assert code == 0
    report = [l for l in _lines(capsys) if l.get("algo") == "exact"][0]
    assert report["status"] == "optimal" and report["best_value"] == 12


def test_solve_gm_constructive(circ8, tmp_path, capsys):
    code = cli.main([
        "solve", str(circ8), "--r", "4", "--lambda", "3", "--algo", "gm-c",
        "--seeds", "2", "--out", str(tmp_path / "c.tt"),
    ])
    assert code == 0
    lines = _lines(capsys)
    assert len([l for l in lines if not l.get("aggregate")]) == 2


def test_export_models(circ8, tmp_path, capsys):
    for model in ("f1", "dlb", "dlb-1f", "dlb-minleg", "f2"):
        code = cli.main([
            "export", str(circ8), "--r", "4", "--lambda", "3",
            "--model", model, "--out-dir", str(tmp_path),
        ])
        assert code == 0, model
    names = {p.name for p in tmp_path.glob("*.lp")}
    assert names == {
        "CIRC8-4_F1.lp", "CIRC8-4_DLB.lp", "CIRC8-4_DLB_1F.lp",
        "CIRC8-4_DLB_MINLEG.lp", "CIRC8-4_F2.lp",
    }


def test_export_f2_hap_from_timetable(circ8, tmp_path, capsys):
    tt_path = tmp_path / "src.tt"
    orient_pairwise(shuffled_rr_prefix(8, 4, seed=1)).write(tt_path)
    code = cli.main([
        "export", str(circ8), "--r", "4", "--lambda", "3", "--model", "f2-hap",
        "--timetable", str(tt_path), "--out-dir", str(tmp_path),
    ])
    assert code == 0
    assert (tmp_path / "CIRC8-4_F2_HAP.lp").exists()


def test_bench_table(circ8, capsys):
    code = cli.main([
        "bench", str(circ8), "--r", "4", "--lambda", "3",
        "--seeds", "2", "--streak", "100",
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "Instance" in out and "CIRC8-4" in out
    row = json.loads(out.splitlines()[0])
    assert row["ub"] >= row["lb"]
    assert row["gap_percent"] == pytest.approx((row["ub"] - row["lb"]) / row["ub"] * 100)


def test_missing_file_is_usage_error(capsys):
    assert cli.main(["lb", "/nonexistent.ittp", "--r", "4", "--lambda", "3"]) == 2


def test_unknown_flag_exits_2(circ8):
    with pytest.raises(SystemExit) as exc:
        cli.main(["lb", str(circ8), "--r", "4", "--nope"])
    assert exc.value.code == 2


def test_threads_env(circ8, tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ITTP_THREADS", "2")
    code = cli.main([
        "solve", str(circ8), "--r", "4", "--lambda", "3", "--algo", "gm-it",
        "--seeds", "2", "--streak", "60", "--out", str(tmp_path / "p.tt"),
    ])
    assert code == 0
    lines = [l for l in _lines(capsys) if not l.get("aggregate")]
    assert {l["seed"] for l in lines} == {1, 2}