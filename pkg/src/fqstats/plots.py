"""Figure rendering for the CLI report path.

matplotlib is imported lazily and only here, so the library core carries
no plotting dependency; every figure lands next to the delimited output
as a PNG.  Figures are deterministic for a fixed report (fixed dpi, no
timestamps in metadata).
"""

from __future__ import annotations

import math
from pathlib import Path

_SAVE_KW = dict(dpi=130, metadata={"Software": "fqstats"})


def _pyplot():
    import matplotlib
    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt
    return plt


def variance_ratio_figure(records: list[dict], path: Path) -> None:
    """Var/prediction against q, one line per (alpha, n, h | modulus degree)."""
    plt = _pyplot()
    series: dict[tuple, list[tuple[int, float]]] = {}
    for r in records:
        pred = r.get("prediction")
        if not pred or not pred.get("value"):
            continue
        p = r["params"]
        key = (p["alpha"], p["n"], p.get("h"))
        var = r["var_bf"]["num"] / r["var_bf"]["den"]
        series.setdefault(key, []).append((p["q"], var / pred["value"]))
    fig, ax = plt.subplots(figsize=(6, 4))
    for (alpha, n, h), pts in sorted(series.items()):
        pts.sort()
        ax.plot([q for q, _ in pts], [v for _, v in pts], "o-",
                label=f"{alpha}, n={n}" + (f", h={h}" if h is not None else ""))
    ax.axhline(1.0, color="k", lw=0.8, ls="--")
    ax.set_xlabel("q")
    ax.set_ylabel("variance / predicted main term")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def rel_dev_figure(records: list[dict], path: Path) -> None:
    """Brute-force vs spectral agreement per cell, log scale."""
    plt = _pyplot()
    labels, devs = [], []
    for r in records:
        p = r["params"]
        tag = f"q{p['q']} n{p['n']}" + (f" h{p['h']}" if p.get("h") is not None
                                        else " Q") + f" {p['alpha']}"
        labels.append(tag)
        devs.append(max(r["rel_dev_bf_spec"], 1e-18))
    fig, ax = plt.subplots(figsize=(max(6, len(labels) * 0.25), 4))
    ax.bar(range(len(devs)), devs)
    ax.set_yscale("log")
    ax.axhline(1e-8, color="r", lw=0.8, ls="--", label="tolerance 1e-8")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=90, fontsize=5)
    ax.set_ylabel("|spectral - brute| / max(1, brute)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def eigenangle_figure(angle_rows: list, path: Path, title: str) -> None:
    plt = _pyplot()
    import numpy as np
    flat = np.concatenate([np.asarray(a) for a in angle_rows]) if angle_rows else []
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(flat, bins=60, density=True)
    ax.axhline(1.0 / (2 * math.pi), color="k", lw=0.8, ls="--",
               label="uniform density")
    ax.set_xlabel("eigenangle")
    ax.set_ylabel("density")
    ax.set_title(title, fontsize=9)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def mc_estimate_figure(records: list[dict], path: Path) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = range(len(records))
    ests = [r["estimate"] for r in records]
    errs = [3 * r["stderr"] for r in records]
    ax.errorbar(xs, ests, yerr=errs, fmt="o", capsize=3, label="estimate +- 3 s.e.")
    ax.axhline(1.0, color="k", lw=0.8, ls="--", label="exact value 1")
    ax.set_xticks(list(xs))
    ax.set_xticklabels([r["label"] for r in records], rotation=60, fontsize=6)
    ax.set_ylabel("Monte Carlo estimate")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def trend_figure(rows: list[dict], path: Path, xlabel: str, ylabel: str,
                 title: str = "") -> None:
    """Generic per-series trend plot; rows carry series/x/y."""
    plt = _pyplot()
    series: dict[str, list[tuple[float, float]]] = {}
    for r in rows:
        series.setdefault(r["series"], []).append((r["x"], r["y"]))
    fig, ax = plt.subplots(figsize=(6, 4))
    for name, pts in sorted(series.items()):
        pts.sort()
        ax.plot([x for x, _ in pts], [y for _, y in pts], "o-", label=name)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title, fontsize=9)
    if len(series) > 1 or any(series):
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
