"""SVG figures rendered from the CSV outputs."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .errors import FormatError  # noqa: E402
from .records import read_csv  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "kagome-vqe"
_SVG_META = {"Date": None}
KINDS = ("sweep", "thresholds", "gradients", "correlations", "structure")


def _load(path, columns) -> list[dict]:
    rows = read_csv(path)
    if not rows:
        raise FormatError(f"{path}: no data rows")
    missing = [c for c in columns if c not in rows[0]]
    if missing:
        raise FormatError(f"{path}: missing column {missing[0]!r}")
    return rows


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata=_SVG_META)
    plt.close(fig)
    return path


def plot_sweep(csv_path, out_dir) -> list[Path]:
    """Best-of-restarts infidelity vs p, one semilog figure per patch."""
    rows = _load(csv_path, ["patch", "scheme", "p", "E_final", "infidelity"])
    best: dict = {}
    for r in rows:
        key = (r["patch"], r["scheme"], int(r["p"]))
        e = float(r["E_final"])
        if key not in best or e < best[key][0]:
            best[key] = (e, float(r["infidelity"]))
    by_patch = defaultdict(lambda: defaultdict(list))
    for (patch, scheme, p), (_, inf) in sorted(best.items()):
        by_patch[patch][scheme].append((p, max(inf, 1e-16)))
    out = []
    for patch, series in by_patch.items():
        fig, ax = plt.subplots(figsize=(5, 3.5))
        for scheme, pts in sorted(series.items()):
            ps, inf = zip(*pts)
            ax.semilogy(ps, inf, marker="o", label=scheme)
        ax.set_xlabel("layers p")
        ax.set_ylabel("infidelity")
        ax.set_title(patch)
        ax.legend(fontsize=7)
        fig.tight_layout()
        out.append(_save(fig, Path(out_dir) / f"infidelity_{patch}.svg"))
    return out


def plot_thresholds(csv_path, out_dir) -> list[Path]:
    rows = _load(csv_path, ["n_qubits", "scheme", "threshold", "p_required"])
    fig, ax = plt.subplots(figsize=(5, 3.5))
    series = defaultdict(list)
    for r in rows:
        if r["p_required"]:
            series[(r["scheme"], r["threshold"])].append((int(r["n_qubits"]), float(r["p_required"])))
    for (scheme, T), pts in sorted(series.items()):
        n, p = zip(*sorted(pts))
        ax.plot(n, p, marker="o", label=f"{scheme} T={T}")
    ax.set_xlabel("qubits")
    ax.set_ylabel("p required")
    ax.legend(fontsize=6)
    fig.tight_layout()
    return [_save(fig, Path(out_dir) / "thresholds.svg")]


def plot_gradients(csv_path, out_dir) -> list[Path]:
    rows = _load(csv_path, ["patch", "scheme", "p", "var_first_scaled", "norm_scaled"])
    fig, axes = plt.subplots(2, 1, figsize=(5, 6), sharex=True)
    series = defaultdict(list)
    for r in rows:
        series[(r["patch"], r["scheme"])].append(
            (int(r["p"]), float(r["var_first_scaled"]), float(r["norm_scaled"]))
        )
    for (patch, scheme), pts in sorted(series.items()):
        p, v, nrm = zip(*sorted(pts))
        axes[0].semilogy(p, v, marker="o", label=f"{patch} {scheme}")
        axes[1].plot(p, nrm, marker="o")
    axes[0].set_ylabel("Var(df/dθ1) / n²")
    axes[1].set_ylabel("|∇f| / (n p)")
    axes[1].set_xlabel("layers p")
    axes[0].legend(fontsize=6)
    fig.tight_layout()
    return [_save(fig, Path(out_dir) / "gradients.svg")]


def plot_correlations(csv_path, out_dir) -> list[Path]:
    rows = _load(csv_path, ["j", "exact", "vqe"])
    j = [int(r["j"]) for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(j, [float(r["exact"]) for r in rows], marker="o", label="exact")
    ax.plot(j, [float(r["vqe"]) for r in rows], marker="x", linestyle="--", label="VQE")
    ax.set_xlabel("j")
    ax.set_ylabel("|<Z_0 Z_j>|")
    ax.legend()
    fig.tight_layout()
    return [_save(fig, Path(out_dir) / "correlations.svg")]


def plot_structure(csv_path, out_dir, column: str = "Szq") -> list[Path]:
    rows = _load(csv_path, ["qx", "qy", column])
    qx = np.array([float(r["qx"]) for r in rows])
    qy = np.array([float(r["qy"]) for r in rows])
    s = np.array([float(r[column]) for r in rows])
    xs, ys = np.unique(qx), np.unique(qy)
    grid = np.full((len(ys), len(xs)), np.nan)
    grid[np.searchsorted(ys, qy), np.searchsorted(xs, qx)] = s
    fig, ax = plt.subplots(figsize=(4.5, 4))
    im = ax.pcolormesh(xs, ys, grid, shading="nearest", vmin=s.min(), vmax=s.max())
    fig.colorbar(im, ax=ax, label="S(q)")
    ax.set_xlabel("q_x")
    ax.set_ylabel("q_y")
    ax.set_aspect("equal")
    fig.tight_layout()
    return [_save(fig, Path(out_dir) / f"structure_{column}.svg")], (float(s.min()), float(s.max()))


def plot(kind: str, csv_path, out_dir):
    if kind == "sweep":
        return plot_sweep(csv_path, out_dir)
    if kind == "thresholds":
        return plot_thresholds(csv_path, out_dir)
    if kind == "gradients":
        return plot_gradients(csv_path, out_dir)
    if kind == "correlations":
        return plot_correlations(csv_path, out_dir)
    if kind == "structure":
        return plot_structure(csv_path, out_dir)[0]
    raise FormatError(f"unknown plot kind {kind!r}")
