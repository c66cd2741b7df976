"""File-rendering figures for the report path (Agg backend, no interactive
sessions).  Each helper writes one PNG next to the delimited output; the
CSV/JSON documents remain the canonical data products."""

from __future__ import annotations

from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "save_gram_heatmap",
    "save_probe_figure",
    "save_density_figure",
]


def save_gram_heatmap(path, report) -> None:
    """Gram magnitude heatmap plus eigenvalue spectrum for a GramReport."""
    gram = np.asarray(report.gram)
    eigs = np.linalg.eigvalsh(gram)
    fig, (ax_mat, ax_spec) = plt.subplots(1, 2, figsize=(8.4, 3.6))
    image = ax_mat.imshow(np.abs(gram), cmap="viridis", vmin=0.0)
    ax_mat.set_title("|Gram|")
    ax_mat.set_xticks(range(len(report.points)))
    ax_mat.set_yticks(range(len(report.points)))
    fig.colorbar(image, ax=ax_mat, fraction=0.046)
    ax_spec.bar(range(1, len(eigs) + 1), np.maximum(eigs, 0.0), color="#3465a4")
    ax_spec.axhline(report.threshold, color="crimson", ls="--", lw=1.0,
                    label=f"threshold {report.threshold:g}")
    ax_spec.set_yscale("log")
    ax_spec.set_xlabel("eigenvalue index")
    ax_spec.set_title(f"spectrum (min = {report.min_singular:.3e})")
    ax_spec.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_probe_figure(path, rows: Sequence, coeff_radius: int) -> None:
    """Deep-hole residual against covolume at a fixed truncation radius."""
    covols = [row.covol for row in rows]
    residuals = [max(row.residual, 1e-300) for row in rows]
    fig, ax = plt.subplots(figsize=(5.6, 3.8))
    ax.semilogy(covols, residuals, "o-", color="#204a87")
    ax.axvline(1.0, color="gray", ls=":", lw=1.0, label="covolume 1")
    ax.set_xlabel("covolume")
    ax.set_ylabel("relative residual")
    ax.set_title(f"deep-hole probe, R = {coeff_radius}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_density_figure(path, witness_ns: Sequence[int], eps: float,
                        n_max: int, rate: Optional[float] = None) -> None:
    """Histogram of witness step counts n from a density run."""
    fig, ax = plt.subplots(figsize=(5.6, 3.8))
    if len(witness_ns) > 0:
        ns = np.asarray(sorted(witness_ns), dtype=float)
        bins = np.geomspace(max(ns.min(), 0.5), max(ns.max() + 1.0, 1.5), 24)
        ax.hist(np.maximum(ns, 0.5), bins=bins, color="#4e9a06")
        ax.set_xscale("log")
    else:
        ax.text(0.5, 0.5, "no witnesses found", ha="center", va="center",
                transform=ax.transAxes)
    title = f"witness step counts (eps = {eps:g}, n_max = {n_max})"
    if rate is not None:
        title += f", success rate {rate:.3f}"
    ax.set_title(title, fontsize=9)
    ax.set_xlabel("n")
    ax.set_ylabel("targets")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
