import json
import subprocess
import sys
from pathlib import Path

import pytest

from sepvol.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def star3(tmp_path):
    f = tmp_path / "star3.txt"
    f.write_text("# star with center 1\n1 2\n1 3\n1 4\n")
    return str(f)


def test_vertices_k3(capsys):
    code, out, _ = run(capsys, "vertices", "--complete", "3")
    assert code == 0
    assert len(json.loads(out)) == 6


def test_vertices_star3_file(capsys, star3):
    code, out, _ = run(capsys, "vertices", "--graph", star3)
    verts = json.loads(out)
    assert code == 0 and len(verts) == 6
    assert ["1", "-1", "0", "0"] in verts and ["-1", "0", "0", "1"] in verts


def test_malformed_file_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 two\n")
    code, _, err = run(capsys, "vertices", "--graph", str(bad))
    assert code == 2
    assert "malformed" in err


def test_missing_file_exits_2(capsys, tmp_path):
    code, _, _ = run(capsys, "vertices", "--graph", str(tmp_path / "nope.txt"))
    assert code == 2


def test_edgeless_exits_3(capsys, tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("n 3\n")
    code, _, _ = run(capsys, "vertices", "--graph", str(f))
    assert code == 3


def test_fixed_matches_golden(capsys):
    code, out, _ = run(capsys, "fixed", "--complete", "4", "--perm", "(1 2)")
    assert code == 0
    assert out == (GOLDEN / "fixed_k4_12.json").read_text()
    doc = json.loads(out)
    assert (len(doc["vertices"]), doc["dimension"], doc["facet_count"]) == (6, 2, 6)


def test_fixed_four_cycle_is_origin(capsys):
    code, out, _ = run(capsys, "fixed", "--complete", "4", "--perm", "(1 2 3 4)")
    doc = json.loads(out)
    assert code == 0
    assert doc["vertices"] == [["0", "0", "0", "0"]] and doc["dimension"] == 0


def test_fixed_non_automorphism_exits_4(capsys, star3):
    code, _, err = run(capsys, "fixed", "--graph", star3, "--perm", "(1 2)")
    assert code == 4
    assert "graph side" in err and "polytope side" in err


def test_bad_permutation_exits_2(capsys):
    code, _, _ = run(capsys, "fixed", "--complete", "4", "--perm", "(1 1)")
    assert code == 2


def test_rvol_all_channels_golden(capsys):
    code, out, _ = run(capsys, "rvol", "--complete", "4", "--perm", "(1 2)", "--method", "all")
    assert code == 0
    assert json.loads(out) == {"formula": "3/2", "hull": "3/2", "ehrhart": "3/2", "agree": True}
    assert out == (GOLDEN / "rvol_k4_12.json").read_text()


@pytest.mark.parametrize("n, value", [(2, "2"), (3, "3"), (4, "10/3")])
def test_rvol_kn(capsys, n, value):
    code, out, _ = run(capsys, "rvol", "--complete", str(n), "--method", "hull")
    assert code == 0 and json.loads(out) == {"hull": value}


def test_rvol_disconnected_disagreement_exits_5(capsys, tmp_path):
    f = tmp_path / "two.txt"
    f.write_text("1 2\n3 4\n")
    code, out, err = run(capsys, "rvol", "--graph", str(f), "--perm", "(1 2)")
    assert code == 5
    assert "disconnected" in err
    assert json.loads(out)["agree"] is False


def test_ehrhart_counts(capsys):
    code, out, _ = run(capsys, "ehrhart", "--complete", "3")
    assert code == 0
    assert json.loads(out) == [{"t": 1, "count": 7}, {"t": 2, "count": 19}, {"t": 3, "count": 37}]


def test_ehrhart_dimension_cap_exits_3(capsys):
    code, _, _ = run(capsys, "ehrhart", "--complete", "6")
    assert code == 3


def test_hull_golden(capsys):
    code, out, _ = run(capsys, "hull", "--complete", "3")
    assert code == 0
    assert out == (GOLDEN / "hull_k3.json").read_text()


def test_csv_output(capsys):
    code, out, _ = run(capsys, "rvol", "--complete", "3", "--method", "hull", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["key,value", "hull,3"]


def test_out_file(capsys, tmp_path):
    target = tmp_path / "v.json"
    code, out, _ = run(capsys, "vertices", "--complete", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text()) == [["-1", "1"], ["1", "-1"]]


def test_verify_auto_census(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "auto-census", "--nmax", "5")
    report = json.loads(out)
    assert code == 0
    counts = [c["checks"][0]["actual"] for c in report["cases"]]
    assert counts == ["2", "12", "48", "240"]


def test_verify_thm_sub_vol_complete_graphs(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "thm-sub-vol", "--nmax", "5", "--families", "complete")
    assert code == 0
    assert json.loads(out)["summary"]["pass"]


def test_verify_facets(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "facets-kn", "--nmax", "5", "--families", "complete")
    assert code == 0


def test_verify_bad_family_exits_2(capsys):
    code, _, _ = run(capsys, "verify", "--families", "wheel")
    assert code == 2


def test_unknown_subcommand_exits_2(capsys):
    assert main(["explode"]) == 2


def test_output_is_deterministic_across_processes():
    cmd = [sys.executable, "-m", "sepvol.cli", "verify", "--suite", "vert-desc", "--nmax", "4",
           "--random-count", "3", "--seed", "11"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True, env={"SEP_THREADS": "1", "PATH": ""}).stdout
    assert a == b and a


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "sepvol.cli", "rvol", "--complete", "3"], capture_output=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["agree"] is True
