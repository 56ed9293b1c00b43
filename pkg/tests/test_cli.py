import json
import re

import pytest

from projhermite.cli import main
from projhermite.cusps import parse_cusp
from projhermite.figures import svg_name
from projhermite.number_field import QuadraticField


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out, err = capsys.readouterr()
    return code, out, err


def _markers(svg_text):
    return re.findall(r'id="vertex-(V\d+)"', svg_text)


def test_compute_39_writes_report_and_figures(capsys, tmp_path):
    out = tmp_path / "r" / "out.json"
    code, text, _ = run(capsys, "compute", 39, "--json", out)
    assert code == 0
    d = json.loads(out.read_text(encoding="utf-8"))
    assert d["gamma_p_display"] == "sqrt(13/1)"
    svgs = sorted(p.name for p in out.parent.glob("*.svg"))
    assert len(svgs) == 3
    # every drawn vertex marker is a vertex of the report, and vice versa
    for dom in d["domains"]:
        name = svg_name(39, parse_cusp(QuadraticField(39), dom["base"]))
        labels = _markers((out.parent / name).read_text(encoding="utf-8"))
        assert labels == [f"V{i + 1}" for i in range(len(dom["vertices"]))]


def test_compute_svg_dir(capsys, tmp_path):
    code, _, _ = run(capsys, "compute", 1, "--svg", tmp_path / "figs")
    assert code == 0
    assert len(list((tmp_path / "figs").glob("*.svg"))) == 1


def test_compute_with_oracle(capsys, tmp_path):
    out = tmp_path / "o.json"
    code, text, _ = run(capsys, "compute", 10, "--oracle", "200,20", "--json", out)
    assert code == 0
    est = json.loads(out.read_text())["oracle"]["estimate"]
    assert est == pytest.approx((180 / 13) ** 0.5, abs=1e-6)


@pytest.mark.parametrize("argv", [
    ["compute", "4"], ["compute", "0"], ["table", "--max-abs-disc", "2"],
    ["svg", "39", "--base", "zz"], ["compute", "39", "--oracle", "3,1"], ["nonsense"],
])
def test_bad_input(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_table_small(capsys):
    code, out, _ = run(capsys, "table", "--max-abs-disc", 8)
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert [int(r.split()[0]) for r in rows] == [-3, -4, -7, -8]
    assert all(r.endswith("ok") for r in rows)


def test_table_is_byte_stable(capsys, tmp_path):
    a = run(capsys, "table", "--max-abs-disc", 24)[1]
    b = run(capsys, "table", "--max-abs-disc", 24, "--jobs", 2, "--json", tmp_path / "t.json")[1]
    assert a == b
    rows = json.loads((tmp_path / "t.json").read_text())
    assert len(rows) == 10 and all(r["matches_reference"] for r in rows)


@pytest.mark.parametrize("D,base,cells,verts", [
    (39, "inf", 5, 13), (39, "w/2", 3, 9), (1, "inf", 1, 4),
])
def test_svg_structure(capsys, tmp_path, D, base, cells, verts):
    out = tmp_path / "f.svg"
    code, text, _ = run(capsys, "svg", D, "--base", base, "--out", out)
    assert code == 0
    assert f"{cells} cells, {verts} vertices" in text
    svg = out.read_text(encoding="utf-8")
    assert len(re.findall(r'id="cell-\d+"', svg)) == cells
    assert _markers(svg) == [f"V{i + 1}" for i in range(verts)]


def test_svg_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "svg", 39, "--base", "w/2", "--out", a)
    run(capsys, "svg", 39, "--base", "w/2", "--out", b)
    assert a.read_bytes() == b.read_bytes()


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--max-abs-disc", 20, "--samples", 50)
    summary = json.loads(out)
    assert code == 0 and summary["ok"]
    names = {c["check"] for c in summary["checks"]}
    assert {"reference_constants", "class_number", "oppenheim", "phi_psi_roundtrip", "sl2_equivariance",
            "negative_control"} <= names


def test_verify_injected_fault(capsys):
    code, out, _ = run(capsys, "verify", "--max-abs-disc", 8, "--inject-fault")
    assert code == 2
    assert not json.loads(out)["ok"]
