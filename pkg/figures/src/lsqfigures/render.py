"""The four figure renderers.

Each reads the lsqbounds CSV artifacts, overlays empirical series as
symbols and analytic series as lines, and writes PNG + SVG. Histogram
densities use Freedman-Diaconis binning.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .io import FigureInputError, load_csv
from .style import new_figure, save_figure, strip_extension

FIGURE_IDS = ("risk_pdfs", "testing_cdf_bounds", "sweep_mean_var", "tail_cdf")


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    in_dir: str
    out: str  # output path; .png/.svg extension optional

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise FigureInputError(f"unknown figure_id {self.figure_id!r}")


def _density_histogram(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    edges = np.histogram_bin_edges(values, bins="fd")
    counts, edges = np.histogram(values, bins=edges, density=True)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return centers, counts


def render_risk_pdfs(in_dir: str, out: str) -> list[str]:
    risks = load_csv(
        os.path.join(in_dir, "risks.csv"),
        ["g_training", "g_true", "g_testing"],
    )
    analytic = load_csv(
        os.path.join(in_dir, "analytic.csv"),
        ["x", "pdf_training", "pdf_true", "pdf_testing"],
    )
    fig, axes = new_figure()
    ax = axes[0, 0]
    series = [("training", "g_training", "pdf_training", "C0"),
              ("true", "g_true", "pdf_true", "C1"),
              ("testing", "g_testing", "pdf_testing", "C2")]
    for label, risk_col, pdf_col, color in series:
        centers, density = _density_histogram(risks[risk_col])
        ax.plot(centers, density, "o", ms=3.5, color=color, label=f"{label} (sampled)")
        ax.plot(analytic["x"], analytic[pdf_col], "-", color=color, label=f"{label} (analytic)")
    ax.set_xlabel("risk (g-units)")
    ax.set_ylabel("probability density")
    ax.legend(fontsize=8)
    return save_figure(fig, strip_extension(out))


def render_testing_cdf_bounds(in_dir: str, out: str) -> list[str]:
    risks = load_csv(os.path.join(in_dir, "risks.csv"), ["g_testing"])
    analytic = load_csv(
        os.path.join(in_dir, "analytic.csv"),
        ["x", "cdf_testing", "cdf_naive_npm", "cdf_naive_np2m"],
    )
    bounds = load_csv(os.path.join(in_dir, "bounds.csv"), ["delta", "bound_g"])
    g = np.sort(risks["g_testing"])
    levels = np.arange(1, g.size + 1) / g.size
    step = max(g.size // 200, 1)
    fig, axes = new_figure()
    ax = axes[0, 0]
    ax.plot(g[::step], levels[::step], "o", ms=3, color="C2", label="testing ECDF")
    ax.plot(analytic["x"], analytic["cdf_testing"], "-", color="C2", label="mixture CDF")
    ax.plot(analytic["x"], analytic["cdf_naive_npm"], "--", color="C3", label="chi2(n+m)")
    ax.plot(analytic["x"], analytic["cdf_naive_np2m"], ":", color="C4", label="chi2(n+2m)")
    for delta, bound in zip(bounds["delta"], bounds["bound_g"]):
        ax.axvline(bound, color="C5", lw=0.8, alpha=0.7)
        ax.annotate(f"1-{delta:g}", (bound, 0.05), rotation=90, fontsize=7, color="C5")
    ax.set_xlabel("testing risk (g-units)")
    ax.set_ylabel("cumulative probability")
    ax.legend(fontsize=8, loc="lower right")
    return save_figure(fig, strip_extension(out))


def render_sweep_mean_var(in_dir: str, out: str) -> list[str]:
    sweep = load_csv(
        os.path.join(in_dir, "sweep.csv"),
        ["m", "mean_analytic", "mean_empirical", "mean_se",
         "var_paper", "var_corrected", "var_empirical", "var_se"],
    )
    fig, axes = new_figure(ncols=2)
    ax = axes[0, 0]
    ax.plot(sweep["m"], sweep["mean_analytic"], "-", color="C0", label="analytic mean")
    ax.errorbar(sweep["m"], sweep["mean_empirical"], yerr=sweep["mean_se"],
                fmt="o", ms=4, color="C1", label="empirical mean")
    ax.set_xlabel("feature count m")
    ax.set_ylabel("mean squared error")
    ax.legend(fontsize=8)
    ax = axes[0, 1]
    ax.plot(sweep["m"], sweep["var_paper"], "--", color="C3", label="published polynomial")
    ax.plot(sweep["m"], sweep["var_corrected"], "-", color="C0", label="mean-consistent variance")
    ax.errorbar(sweep["m"], sweep["var_empirical"], yerr=sweep["var_se"],
                fmt="o", ms=4, color="C1", label="empirical variance")
    ax.set_xlabel("feature count m")
    ax.set_ylabel("variance of squared error")
    ax.legend(fontsize=8)
    return save_figure(fig, strip_extension(out))


def render_tail_cdf(in_dir: str, out: str) -> list[str]:
    tail = load_csv(
        os.path.join(in_dir, "tail.csv"),
        ["delta", "bound_paper", "bound_corrected", "bound_largen",
         "bound_asymptotic", "empirical_quantile"],
    )
    fig, axes = new_figure()
    ax = axes[0, 0]
    prob = 1.0 - tail["delta"]
    ax.plot(tail["empirical_quantile"], prob, "o", ms=4, color="C0", label="empirical quantile")
    for col, style, label in (
        ("bound_paper", "-", "bound (published variance)"),
        ("bound_corrected", "--", "bound (corrected variance)"),
        ("bound_largen", "-.", "large-n approximation"),
        ("bound_asymptotic", ":", "asymptotic limit"),
    ):
        ax.plot(tail[col], prob, style, marker="s", ms=3, label=label)
    ax.set_xlabel("loss")
    ax.set_ylabel("probability level 1-delta")
    ax.legend(fontsize=8, loc="lower right")
    return save_figure(fig, strip_extension(out))


_RENDERERS = {
    "risk_pdfs": render_risk_pdfs,
    "testing_cdf_bounds": render_testing_cdf_bounds,
    "sweep_mean_var": render_sweep_mean_var,
    "tail_cdf": render_tail_cdf,
}


def render(figure: FigureSpec) -> list[str]:
    """Render one figure; returns the written image paths."""
    return _RENDERERS[figure.figure_id](figure.in_dir, figure.out)
