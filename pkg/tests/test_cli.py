import json

import pytest

from rowpivot.cli import main

TRIANGLE = "0\n1\n2\n0 1\n0 2\n1 2\n0 1 2\n"
TRIANGLE_BARCODE = "0 1 inf\n0 2 4\n0 3 5\n1 6 7\n"


@pytest.fixture
def tri(tmp_path):
    p = tmp_path / "tri.flt"
    p.write_text(TRIANGLE)
    return p


def test_reduce_default_strategy(tri, capsys):
    assert main(["reduce", "--input", str(tri), "--format", "flt", "--strategy", "row-b", "--optim", "compress"]) == 0
    assert capsys.readouterr().out == TRIANGLE_BARCODE


@pytest.mark.parametrize("strategy, optim", [("col-b", "none"), ("col-b", "clear"), ("col-cob", "clear"),
                                             ("row-b", "none"), ("row-cob", "compress")])
def test_reduce_every_strategy(tri, capsys, strategy, optim):
    assert main(["reduce", "--input", str(tri), "--strategy", strategy, "--optim", optim]) == 0
    assert capsys.readouterr().out == TRIANGLE_BARCODE


def test_invalid_combination_exits_2(tri, capsys):
    assert main(["reduce", "--input", str(tri), "--strategy", "col-b", "--optim", "compress"]) == 2
    assert "compress requires a row orientation" in capsys.readouterr().err


def test_unknown_choice_exits_2(tri):
    with pytest.raises(SystemExit) as info:
        main(["reduce", "--input", str(tri), "--strategy", "diag"])
    assert info.value.code == 2


def test_empty_input(tmp_path, capsys):
    p = tmp_path / "empty.flt"
    p.write_text("")
    assert main(["reduce", "--input", str(p)]) == 0
    assert capsys.readouterr().out == ""


def test_invalid_filtration_exits_1(tmp_path, capsys):
    p = tmp_path / "bad.flt"
    p.write_text("0 1\n")
    assert main(["reduce", "--input", str(p)]) == 1
    assert "missing faces" in capsys.readouterr().err
    assert main(["reduce", "--input", str(tmp_path / "nope.flt")]) == 1


def test_emit_stats(tri, tmp_path, capsys):
    stats = tmp_path / "stats.json"
    out = tmp_path / "bars.txt"
    assert main(["reduce", "--input", str(tri), "--emit-stats", "--stats-output", str(stats),
                 "--output", str(out)]) == 0
    assert out.read_text() == TRIANGLE_BARCODE
    rec = json.loads(stats.read_text())
    assert rec["strategy"] == "row-b" and rec["optimization"] == "compress"
    assert rec["rows_processed"] == 4 and rec["skipped_by_compress"] == 2
    assert main(["reduce", "--input", str(tri), "--emit-stats"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert json.loads(lines[-1]) == rec


def test_values_and_rips_inputs(tmp_path, capsys):
    ldm = tmp_path / "tri.ldm"
    ldm.write_text("1\n1 1\n")
    assert main(["reduce", "--input", str(ldm), "--max-dim", "2", "--values"]) == 0
    assert capsys.readouterr().out == "0 1 inf 0 inf\n0 2 4 0 1\n0 3 5 0 1\n1 6 7 1 1\n"
    pts = tmp_path / "two.pts"
    pts.write_text("0 0\n3 4\n")
    assert main(["reduce", "--input", str(pts)]) == 0
    assert capsys.readouterr().out == "0 1 inf\n0 2 3\n"


def test_values_without_grades_exits_2(tri):
    assert main(["reduce", "--input", str(tri), "--values"]) == 2


def test_certificate_and_verify_flags(tri, capsys):
    assert main(["reduce", "--input", str(tri), "--certificate", "--verify", "--strategy", "col-cob",
                 "--optim", "none"]) == 0
    err = capsys.readouterr().err
    assert "certificate verified" in err and "FAIL" not in err


def test_verify_triangle(tri, capsys):
    assert main(["verify", "--input", str(tri)]) == 0
    out = capsys.readouterr().out
    assert "oracle agrees" in out
    assert "compress rows_processed 4 = clear cols_processed 4" in out
    assert out.endswith("OK\n")


def test_verify_full_simplex_on_four_vertices(tmp_path, capsys):
    p = tmp_path / "k4.ldm"
    p.write_text("1\n1 1\n1 1 1\n")
    assert main(["verify", "--input", str(p), "--max-dim", "3"]) == 0
    assert "compress rows_processed 8 = clear cols_processed 8" in capsys.readouterr().out


def test_verify_skips_oracle_above_cap(tri, capsys):
    assert main(["verify", "--input", str(tri), "--oracle-cap", "5"]) == 0
    out = capsys.readouterr().out
    assert "oracle skipped" in out and "strategies agree" in out


def test_verify_mismatch_exits_3(tri, capsys, monkeypatch):
    import rowpivot.cli as cli

    real = cli.oracle_pairs
    monkeypatch.setattr(cli, "oracle_pairs", lambda D: real(D) | {(1, 2)})
    assert main(["verify", "--input", str(tri)]) == 3
    assert "(1, 2)" in capsys.readouterr().err


def test_determinism(tri, tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"o{k}.txt"
        main(["reduce", "--input", str(tri), "--emit-stats", "--output", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
