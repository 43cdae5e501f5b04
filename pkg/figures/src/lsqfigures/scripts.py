"""One command-line entry point per figure; each takes --in-dir and --out."""

from __future__ import annotations

import argparse
import sys

from .io import FigureInputError
from .render import FigureSpec, render


def _run(figure_id: str, default_out: str, argv=None) -> int:
    parser = argparse.ArgumentParser(prog=f"lsqfig-{figure_id.replace('_', '-')}")
    parser.add_argument("--in-dir", required=True, help="directory of lsqbounds CSV outputs")
    parser.add_argument("--out", default=default_out, help="output image path (extension optional)")
    args = parser.parse_args(argv)
    try:
        paths = render(FigureSpec(figure_id, args.in_dir, args.out))
    except FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for p in paths:
        print(p)
    return 0


def risk_pdfs_main(argv=None) -> int:
    return _run("risk_pdfs", "risk_pdfs", argv)


def testing_cdf_bounds_main(argv=None) -> int:
    return _run("testing_cdf_bounds", "testing_cdf_bounds", argv)


def sweep_mean_var_main(argv=None) -> int:
    return _run("sweep_mean_var", "sweep_mean_var", argv)


def tail_cdf_main(argv=None) -> int:
    return _run("tail_cdf", "tail_cdf", argv)
