"""Figure-script tests, including acceptance criterion A12: all four
figures regenerate from the primary CLI's CSVs, and reruns are
byte-identical."""

import subprocess
import sys

import pytest

from lsqfigures import scripts
from lsqfigures.io import FigureInputError, load_csv
from lsqfigures.render import FigureSpec, render


def run_cli(*argv):
    # The primary package is consumed only through its CLI.
    subprocess.run([sys.executable, "-m", "lsqbounds.cli", *argv], check=True)


@pytest.fixture(scope="module")
def csv_dirs(tmp_path_factory):
    """One output directory per CLI subcommand.

    The fixed-design and random-design subcommands both emit a
    bounds.csv, so each figure reads from its own directory.
    """
    root = tmp_path_factory.mktemp("csvs")
    fixed = root / "fixed"
    sweep = root / "sweep"
    tail = root / "tail"
    run_cli("fixed-design", "--samples", "20000", "--out-dir", str(fixed))
    run_cli("tail", "--trials", "20000", "--out-dir", str(tail))
    run_cli(
        "sweep", "--m-list", "2:30:4", "--experiments", "3",
        "--trials-per-experiment", "300", "--out-dir", str(sweep),
    )
    return {
        "risk_pdfs": fixed,
        "testing_cdf_bounds": fixed,
        "sweep_mean_var": sweep,
        "tail_cdf": tail,
    }


SCRIPTS = [
    ("risk_pdfs", scripts.risk_pdfs_main),
    ("testing_cdf_bounds", scripts.testing_cdf_bounds_main),
    ("sweep_mean_var", scripts.sweep_mean_var_main),
    ("tail_cdf", scripts.tail_cdf_main),
]


@pytest.mark.parametrize("figure_id,script_main", SCRIPTS)
def test_a12_regenerate_and_rerun_identical(figure_id, script_main, csv_dirs, tmp_path):
    in_dir = str(csv_dirs[figure_id])
    out = tmp_path / figure_id
    rc = script_main(["--in-dir", in_dir, "--out", str(out)])
    assert rc == 0
    first = {ext: (tmp_path / f"{figure_id}{ext}").read_bytes() for ext in (".png", ".svg")}
    assert all(len(b) > 0 for b in first.values())
    rc = script_main(["--in-dir", in_dir, "--out", str(out)])
    assert rc == 0
    for ext, blob in first.items():
        assert (tmp_path / f"{figure_id}{ext}").read_bytes() == blob, ext
    print(f"[A12:{figure_id}] PASS: PNG+SVG regenerate byte-identically")


def test_render_dispatch(csv_dirs, tmp_path):
    paths = render(FigureSpec("risk_pdfs", str(csv_dirs["risk_pdfs"]), str(tmp_path / "fig")))
    assert len(paths) == 2


def test_unknown_figure_id(csv_dirs):
    with pytest.raises(FigureInputError):
        FigureSpec("nope", str(csv_dirs["risk_pdfs"]), "x")


def test_missing_column_named_error(tmp_path):
    bad = tmp_path / "risks.csv"
    bad.write_text("sample_index,g_training\n0,1.0\n")
    (tmp_path / "analytic.csv").write_text("x\n0\n")
    rc = scripts.risk_pdfs_main(["--in-dir", str(tmp_path), "--out", str(tmp_path / "f")])
    assert rc == 2
    with pytest.raises(FigureInputError, match="g_testing"):
        load_csv(str(bad), ["g_training", "g_true", "g_testing"])
    assert not (tmp_path / "f.png").exists()


def test_empty_csv_is_error(tmp_path):
    (tmp_path / "risks.csv").write_text("sample_index,g_training,g_true,g_testing\n")
    rc = scripts.testing_cdf_bounds_main(["--in-dir", str(tmp_path), "--out", str(tmp_path / "f")])
    assert rc == 2
    assert not (tmp_path / "f.png").exists()


def test_missing_file_is_error(tmp_path):
    rc = scripts.tail_cdf_main(["--in-dir", str(tmp_path), "--out", str(tmp_path / "f")])
    assert rc == 2


def test_sweep_figure_counts(csv_dirs, tmp_path):
    rc = scripts.sweep_mean_var_main(
        ["--in-dir", str(csv_dirs["sweep_mean_var"]), "--out", str(tmp_path / "s.png")]
    )
    assert rc == 0
    assert (tmp_path / "s.png").exists() and (tmp_path / "s.svg").exists()
