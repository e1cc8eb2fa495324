import json
import subprocess
import sys

import pytest

from gridperc.cli import main
from gridperc.gridtext import parse_set, write_set
from gridperc.grid import CellSet, GridDims

DIAMOND_TEXT = "X.X\n.X.\nX.X\n"


def run_cli(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_bound_human(capsys):
    code, out = run_cli(capsys, "bound", "4", "6", "9")
    assert code == 0
    assert "38" in out and "perfect possible" in out


def test_bound_machine(capsys):
    code, out = run_cli(capsys, "--machine", "bound", "2", "3", "4")
    record = json.loads(out)
    assert code == 0
    assert record["exact"] == "26/3"
    assert record["ceil"] == 9
    assert record["perfect_possible"] is False


def test_verify_perfect_seed_file(tmp_path, capsys):
    path = tmp_path / "diamond.txt"
    path.write_text(DIAMOND_TEXT)
    code, out = run_cli(capsys, "verify", str(path))
    assert code == 0
    assert "Perfect" in out


def test_verify_nonpercolating_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("X..\n...\n...\n")
    code, out = run_cli(capsys, "verify", str(path))
    assert code == 1
    assert "NotPercolating" in out


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "ragged.txt"
    path.write_text("X..\n..\n")
    code = main(["verify", str(path)])
    assert code == 2


def test_simulate_trace_output(tmp_path, capsys):
    path = tmp_path / "diamond.txt"
    path.write_text(DIAMOND_TEXT)
    code, out = run_cli(capsys, "simulate", str(path), "--trace")
    assert code == 0
    assert "percolated" in out
    assert "X1X" in out


def test_render(tmp_path, capsys):
    path = tmp_path / "diamond.txt"
    path.write_text(DIAMOND_TEXT)
    code, out = run_cli(capsys, "render", str(path))
    assert code == 0
    assert out == "X1X\n1X1\nX1X\n"


def test_build_writes_verifiable_witness(tmp_path, capsys):
    out_path = tmp_path / "w.txt"
    code, _ = run_cli(capsys, "build", "perfect", "4", "6", "6", "-o", str(out_path))
    assert code == 0
    dims, seeds = parse_set(out_path.read_text())
    assert dims == GridDims(4, 6, 6)
    assert len(seeds) == 28
    code, out = run_cli(capsys, "verify", str(out_path))
    assert code == 0 and "Perfect" in out


def test_build_dependency_error_exit(capsys):
    code = main(["build", "perfect", "3", "15", "15"])
    assert code == 1


def test_search_exhaustive(capsys):
    code, out = run_cli(capsys, "--machine", "search", "exhaustive", "2", "2", "3")
    record = json.loads(out.splitlines()[0])
    assert code == 0
    assert record["min_size"] == 6


def test_search_atbound_failure_exit(capsys):
    # impossible target: (1,1,4) has no 4-cell-minus-one percolating set;
    # budget exhausts quickly
    code = main(["search", "atbound", "2", "5", "5", "--budget", "3", "--rng-seed", "1"])
    assert code == 1


def test_family_assemble(tmp_path, capsys):
    out_path = tmp_path / "fam.txt"
    code, out = run_cli(capsys, "family", "assemble", "2x5", "11", "-o", str(out_path))
    assert code == 0
    dims, seeds = parse_set(out_path.read_text())
    assert dims == GridDims(2, 5, 11)
    assert len(seeds) == 29


def test_family_usage_error(capsys):
    assert main(["family", "assemble"]) == 2
    assert main(["family", "discover", "9x9"]) == 2


def test_combine_cli(tmp_path, capsys):
    from gridperc.pipelines import Builder

    builder = Builder()
    p1 = tmp_path / "p1.txt"
    p2 = tmp_path / "p2.txt"
    p1.write_text(DIAMOND_TEXT)
    p2.write_text(write_set(builder.perfect(GridDims(3, 3, 3)).seeds))
    out_path = tmp_path / "combined.txt"
    code, out = run_cli(
        capsys, "combine", str(p1), str(p2), str(p2), str(p1), "-o", str(out_path)
    )
    assert code == 0
    dims, seeds = parse_set(out_path.read_text())
    assert dims == GridDims(4, 6, 6)
    assert len(seeds) == 28


def test_search_emits_catalog_records(tmp_path, capsys):
    from gridperc.catalog import Catalog

    cat_path = tmp_path / "cat.txt"
    code, _ = run_cli(capsys, "search", "atbound", "3", "3", "3",
                      "--rng-seed", "2", "--catalog-out", str(cat_path),
                      "-o", str(tmp_path / "w.txt"))
    assert code == 0
    code, _ = run_cli(capsys, "search", "exhaustive", "2", "2", "3",
                      "--catalog-out", str(cat_path), "-o", str(tmp_path / "w2.txt"))
    assert code == 0
    cat = Catalog.load(cat_path)
    assert set(cat.entries) == {"3x3x3:perfect", "2x2x3:optimal"}
    cat.verify_all()


def test_machine_output_deterministic(capsys):
    argv = ["--machine", "search", "atbound", "3", "3", "3", "--rng-seed", "9"]
    code1, out1 = run_cli(capsys, *argv)
    code2, out2 = run_cli(capsys, *argv)
    assert (code1, out1) == (code2, out2)


def test_console_script_entrypoint():
    # byte-identical repeated runs through the real process boundary
    cmd = [sys.executable, "-m", "gridperc.cli", "--machine", "bound", "7", "7", "11"]
    runs = [subprocess.run(cmd, capture_output=True, timeout=60) for _ in range(2)]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout
