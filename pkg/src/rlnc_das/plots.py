"""Matplotlib rendering for the report figures.

The analysis module emits plain data rows; these helpers turn them into
the two standard charts (detection-failure curves and download-cost
ratios) written as PNG files next to the delimited output.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_STYLE = {
    "ldpc": dict(color="tab:red", ls="-"),
    "2d_rs": dict(color="tab:blue", ls="-"),
    "cmt": dict(color="tab:red", ls="-"),
    "twodrs_mt": dict(color="tab:blue", ls="-", marker="|", markevery=2),
    "twodrs_kzg": dict(color="tab:cyan", ls="-"),
}


def _label(col: str) -> str:
    names = {
        "ldpc": "LDPC",
        "2d_rs": "2D-RS",
        "cmt": "CMT",
        "twodrs_mt": "2D-RS + MT",
        "twodrs_kzg": "2D-RS + KZG",
    }
    if col in names:
        return names[col]
    if col.startswith("rlnc_m"):
        return f"RLNC (m={col[6:]})"
    if col.startswith("rlnc_"):
        return f"RLNC ({col[5:]})"
    return col


def render_fig3(header: list[str], rows: list[list], path: str):
    """Undetected-withholding probability against sample count."""
    s = [row[0] for row in rows]
    fig, ax = plt.subplots(figsize=(7, 4.2))
    for idx, col in enumerate(header[1:], start=1):
        ys = [row[idx] for row in rows]
        style = _STYLE.get(col, dict(ls="--", marker="+", markevery=8))
        ax.plot(s, ys, label=_label(col), **style)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_ylim(1e-10, 1)
    ax.set_xlabel("Number of samples")
    ax.set_ylabel("P(undetected undecodability)")
    ax.grid(True, which="major", ls="--", alpha=0.4)
    ax.legend(ncol=3, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_fig4(
    sampling: tuple[list[str], list[list]],
    commitment: tuple[list[str], list[list]],
    path: str,
):
    """Download-cost ratios (sampling and commitment) against data size."""
    fig, axes = plt.subplots(1, 2, figsize=(10, 4.2))
    for ax, (header, rows), ylabel in zip(
        axes, (sampling, commitment), ("Sampling size / d", "Commitment size / d")
    ):
        d = [row[0] for row in rows]
        for idx, col in enumerate(header[1:], start=1):
            ys = [row[idx] for row in rows]
            style = _STYLE.get(col, dict(ls="-"))
            ax.plot(d, ys, label=_label(col), **style)
        ax.set_xscale("log", base=2)
        ax.set_yscale("log")
        ax.set_xlabel("d in MiB")
        ax.set_ylabel(ylabel)
        ax.grid(True, which="major", ls="--", alpha=0.4)
    axes[0].legend(ncol=2, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
