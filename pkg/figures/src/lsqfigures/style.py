"""Deterministic matplotlib output: fixed style, no timestamps."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

# Stable SVG element ids and a fixed look across reruns.
matplotlib.rcParams["svg.hashsalt"] = "lsqbounds-figures"
matplotlib.rcParams["figure.dpi"] = 110
matplotlib.rcParams["savefig.dpi"] = 110


def new_figure(ncols: int = 1, width: float = 6.4, height: float = 4.4):
    return plt.subplots(1, ncols, figsize=(width * ncols, height), squeeze=False)


def save_figure(fig, out_base: str) -> list[str]:
    """Write <out_base>.png and <out_base>.svg without embedded dates.

    Returns the written paths. Reruns on identical inputs produce
    byte-identical files.
    """
    png = out_base + ".png"
    svg = out_base + ".svg"
    fig.savefig(png, metadata={"Software": None})
    fig.savefig(svg, metadata={"Date": None})
    plt.close(fig)
    return [png, svg]


def strip_extension(path: str) -> str:
    for ext in (".png", ".svg"):
        if path.endswith(ext):
            return path[: -len(ext)]
    return path
