import json
import xml.etree.ElementTree as ET

import pytest

from taxostrat.cli import main
from taxostrat.data import fixture_path

TAXONOMY = str(fixture_path("data_analysis_taxonomy.txt"))
MAPPINGS = str(fixture_path("scientist_mappings.csv"))
CRITERIA = str(fixture_path("eight_researchers_criteria.csv"))
THEMES = str(fixture_path("themes_contingency.csv"))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# top level


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert out.startswith("taxostrat ")


def test_missing_subcommand(capsys):
    code, _, err = run(capsys)
    assert code == 2
    assert "usage" in err


def test_unknown_flag(capsys):
    code, _, _ = run(capsys, "rank", TAXONOMY, MAPPINGS, "--frobnicate")
    assert code == 2


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/taxonomy.txt")
    assert code == 2
    assert "error:" in err


# ---------------------------------------------------------------------------
# validate


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", TAXONOMY)
    assert code == 0
    assert out == "OK: 144 taxons\n"


def test_validate_reports_violations(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1. Root\n1.1 Child\n1.1 Child again\n2.5 Stray\n", encoding="utf-8")
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1
    assert "duplicate taxon 1.1" in out
    assert "orphan taxon 2.5" in out


def test_validate_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("not a taxonomy line\n", encoding="utf-8")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2
    assert "error:" in err


# ---------------------------------------------------------------------------
# rank


def test_rank_csv_golden_rows(capsys):
    code, out, err = run(capsys, "rank", TAXONOMY, MAPPINGS)
    assert code == 0
    assert err == ""
    lines = out.splitlines()
    assert lines[0] == "researcher_id,layers,base_rank,tr,trn,stratum"
    assert len(lines) == 31
    assert lines[1] == "S1,4 5 5,4,3.88,73,1"
    assert "S2,4 4 4 4 4,4,3.50,100,1" in lines
    assert "S4,4,4,3.90,71,1" in lines
    assert "S19,5 5 6 5,5,4.69,15,3" in lines
    assert "S30,6 6 5,5,4.88,1,3" in lines


def test_rank_json(capsys):
    code, out, _ = run(capsys, "rank", TAXONOMY, MAPPINGS, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    records = payload["records"]
    assert len(records) == 30
    s19 = next(r for r in records if r["researcher_id"] == "S19")
    assert s19 == {
        "researcher_id": "S19",
        "layers": [5, 5, 6, 5],
        "base_rank": 5,
        "tr": 4.69,
        "trn": 15,
        "stratum": 3,
    }


def test_rank_strict_unknown_taxon(capsys, tmp_path):
    taxonomy = tmp_path / "t.txt"
    taxonomy.write_text("1. Root\n1.1 Child\n", encoding="utf-8")
    mappings = tmp_path / "m.csv"
    mappings.write_text("researcher_id,taxon_path\nX,1.1\nY,9.9\n", encoding="utf-8")
    code, out, err = run(capsys, "rank", str(taxonomy), str(mappings))
    assert code == 3
    assert out == ""
    assert "unknown taxon 9.9" in err
    assert "Y" in err


def test_rank_no_strict_warns_and_scores(capsys, tmp_path):
    taxonomy = tmp_path / "t.txt"
    taxonomy.write_text("1. Root\n1.1 Child\n", encoding="utf-8")
    mappings = tmp_path / "m.csv"
    mappings.write_text("researcher_id,taxon_path\nX,1.1\nY,9.9\n", encoding="utf-8")
    code, out, err = run(capsys, "rank", str(taxonomy), str(mappings), "--no-strict")
    assert code == 0
    assert "warning: unknown taxon 9.9 (researcher Y)" in err
    assert len(out.splitlines()) == 3


def test_rank_bad_mapping_csv(capsys, tmp_path):
    mappings = tmp_path / "m.csv"
    mappings.write_text("wrong,header\nX,1.1\n", encoding="utf-8")
    code, _, err = run(capsys, "rank", TAXONOMY, str(mappings))
    assert code == 2
    assert "researcher_id" in err


# ---------------------------------------------------------------------------
# stratify


def test_stratify_csv_blocks(capsys):
    code, out, _ = run(capsys, "stratify", CRITERIA)
    assert code == 0
    blocks = out.split("\n\n")
    assert blocks[0].splitlines()[0] == "objective,iterations,restarts"
    objective, iterations, restarts = blocks[0].splitlines()[1].split(",")
    assert float(objective) < 1e-9
    assert int(iterations) >= 1
    assert int(restarts) == 20
    assert blocks[1].splitlines() == ["criterion,weight", "output,0.3333", "impact,0.6667"]
    assert blocks[2].splitlines() == [
        "stratum,centre",
        "1,0.6667",
        "2,2.0000",
        "3,2.6667",
    ]
    assert blocks[3].splitlines() == [
        "id,score,stratum",
        "C1,0.6667,1",
        "C2,0.6667,1",
        "B1,2.0000,2",
        "B2,2.0000,2",
        "B3,2.0000,2",
        "B4,2.0000,2",
        "A1,2.6667,3",
        "A2,2.6667,3",
    ]


def test_stratify_compare_pca(capsys):
    code, out, _ = run(capsys, "stratify", CRITERIA, "--compare-pca")
    assert code == 0
    blocks = out.split("\n\n")
    assert blocks[4].splitlines() == [
        "criterion,pca_weight",
        "output,0.7712",
        "impact,0.2288",
    ]
    assert blocks[5].splitlines() == ["pca_residual_share", "0.1340"]
    pca_scores = blocks[6].splitlines()
    assert pca_scores[0] == "id,pca_score"
    assert pca_scores[1].split(",")[0] == "C1"
    assert float(pca_scores[1].split(",")[1]) == pytest.approx(1.54, abs=5e-3)
    assert float(pca_scores[3].split(",")[1]) == pytest.approx(4.63, abs=5e-3)


def test_stratify_json(capsys):
    code, out, _ = run(
        capsys, "stratify", CRITERIA, "--k", "3", "--compare-pca", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["k"] == 3
    assert payload["weights"] == {"output": 0.3333, "impact": 0.6667}
    assert payload["centres"] == [0.6667, 2.0, 2.6667]
    assert [entry["stratum"] for entry in payload["assignment"]] == [1, 1, 2, 2, 2, 2, 3, 3]
    assert payload["objective"] < 1e-9
    assert payload["trace"][-1] == payload["objective"]
    assert payload["pca"]["weights"] == {"output": 0.7712, "impact": 0.2288}
    assert payload["pca"]["residual_share"] == 0.134


def test_stratify_infeasible_k(capsys):
    for k in ("9", "0"):
        code, _, err = run(capsys, "stratify", CRITERIA, "--k", k)
        assert code == 4
        assert "error:" in err


def test_stratify_normalize(capsys):
    code, out, _ = run(capsys, "stratify", CRITERIA, "--normalize")
    assert code == 0
    assert "criterion,weight" in out


def test_stratify_normalize_flat_column(capsys, tmp_path):
    flat = tmp_path / "flat.csv"
    flat.write_text("id,a,b\nX,1,5\nY,2,5\nZ,3,5\n", encoding="utf-8")
    code, _, err = run(capsys, "stratify", str(flat), "--k", "2", "--normalize")
    assert code == 2
    assert "error:" in err


# ---------------------------------------------------------------------------
# ca


def test_ca_csv(capsys):
    code, out, _ = run(capsys, "ca", THEMES)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "total_inertia,axes"
    assert lines[1] == "0.195972,2"
    assert "plane_axes" not in out
    blocks = out.split("\n\n")
    axis_lines = blocks[1].splitlines()
    assert axis_lines[0] == "axis,singular_value,inertia_share"
    assert len(axis_lines) == 3
    assert axis_lines[1].startswith("1,")
    points = blocks[2].splitlines()
    assert points[0] == "kind,id,axis_1,axis_2"
    kinds = [line.split(",")[0] for line in points[1:]]
    assert kinds == ["row"] * 6 + ["col"] * 3 + ["sup_row"] * 2
    assert any(line.startswith("sup_row,Networks,") for line in points)
    assert any(line.startswith("sup_row,Surveys,") for line in points)


def test_ca_plane_block(capsys):
    code, out, _ = run(capsys, "ca", THEMES, "--axes", "1,2")
    assert code == 0
    blocks = out.split("\n\n")
    assert blocks[1].splitlines() == ["plane_axes,plane_inertia_share", "1 2,1.000000"]


def test_ca_json(capsys):
    code, out, _ = run(capsys, "ca", THEMES, "--axes", "1,2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["total_inertia"] == pytest.approx(0.195972, abs=1e-5)
    assert [axis["axis"] for axis in payload["axes"]] == [1, 2]
    assert payload["axes"][0]["inertia_share"] == pytest.approx(0.9309, abs=5e-4)
    assert len(payload["rows"]) == 6
    assert len(payload["cols"]) == 3
    assert {entry["id"] for entry in payload["supplementary"]} == {"Networks", "Surveys"}
    assert payload["plane"] == {
        "axes": [1, 2],
        "inertia_share": pytest.approx(1.0, abs=1e-9),
    }


def test_ca_svg(capsys, tmp_path):
    target = tmp_path / "plane.svg"
    code, out, _ = run(capsys, "ca", THEMES, "--svg", str(target))
    assert code == 0
    assert "plane_axes" in out  # --svg implies the default plane
    svg = target.read_text(encoding="utf-8")
    root = ET.fromstring(svg)
    texts = [el.text for el in root.iter() if el.tag.endswith("text")]
    assert "Factorial plane (1,2): 100.0% of inertia" in texts
    assert "Networks" in texts


def test_ca_bad_axes(capsys):
    code, _, err = run(capsys, "ca", THEMES, "--axes", "9,9")
    assert code == 2
    assert "error:" in err
    code, _, _ = run(capsys, "ca", THEMES, "--axes", "1")
    assert code == 2


def test_ca_zero_marginal(capsys, tmp_path):
    table = tmp_path / "zero.csv"
    table.write_text("theme,a,b\nX,1,0\nY,2,0\n", encoding="utf-8")
    code, _, err = run(capsys, "ca", str(table))
    assert code == 5
    assert "'b'" in err


# ---------------------------------------------------------------------------
# corr


def test_corr_single_file(capsys):
    code, out, _ = run(capsys, "corr", CRITERIA)
    assert code == 0
    assert out.splitlines() == ["criterion,impact", "output,-0.4156"]


def test_corr_multiple_files(capsys, tmp_path):
    first = tmp_path / "first.csv"
    first.write_text("id,a,b\nX,1,2\nY,2,1\nZ,3,6\n", encoding="utf-8")
    second = tmp_path / "second.csv"
    second.write_text("id,c\nX,10\nY,20\nZ,30\n", encoding="utf-8")
    code, out, _ = run(capsys, "corr", str(first), str(second))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "criterion,b,c"
    a_row = lines[1].split(",")
    assert a_row[0] == "a"
    assert a_row[2] == "1.0000"  # a is perfectly correlated with c
    b_row = lines[2].split(",")
    assert b_row == ["b", "", a_row[1]]  # upper triangle only, symmetric value


def test_corr_id_mismatch(capsys, tmp_path):
    first = tmp_path / "first.csv"
    first.write_text("id,a\nX,1\nY,2\n", encoding="utf-8")
    second = tmp_path / "second.csv"
    second.write_text("id,b\nX,1\nQ,2\n", encoding="utf-8")
    code, _, err = run(capsys, "corr", str(first), str(second))
    assert code == 2
    assert "Q" in err


def test_corr_single_criterion(capsys, tmp_path):
    only = tmp_path / "only.csv"
    only.write_text("id,a\nX,1\nY,2\n", encoding="utf-8")
    code, out, _ = run(capsys, "corr", str(only))
    assert code == 0
    assert out == "criterion\n"


def test_corr_json(capsys):
    code, out, _ = run(capsys, "corr", CRITERIA, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["criteria"] == ["output", "impact"]
    assert payload["matrix"][0][1] == -0.4156
    assert payload["matrix"][1][0] == -0.4156
    assert payload["matrix"][0][0] == 1.0


def test_corr_constant_column(capsys, tmp_path):
    flat = tmp_path / "flat.csv"
    flat.write_text("id,a,b\nX,1,5\nY,2,5\n", encoding="utf-8")
    code, _, err = run(capsys, "corr", str(flat))
    assert code == 2
    assert "error:" in err
