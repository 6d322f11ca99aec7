"""Command-line harness for the kagome VQE experiments."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .ansatz import canonical_scheme
from .errors import FormatError, KagomeError, SpecError, UnknownPatchError
from .lattice import build_patch
from .records import (
    AGGREGATE_COLUMNS,
    CsvSink,
    canonical_hash,
    patch_literals_hash,
    record_row,
    write_csv,
    write_json,
)

OUT_ENV = "KAGOME_VQE_OUT"
LARGE_QUBITS = 20
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

DEFAULTS = {
    "k": 2,
    "sector": None,
    "scheme": ["PerEdge"],
    "p": [1],
    "restarts": 1,
    "init": "random_uniform",
    "ramp_delta": None,
    "samples": 20,
    "thresholds": [0.99, 0.999, 0.9999],
    "topology": "square",
    "rounds": 1,
    "native": False,
    "method": "exact",
    "kind": None,
    "input": None,
    "workers": 1,
    "h0_per_dimer": False,
    "allow_large": False,
}


class ConfigError(KagomeError):
    pass


def parse_p(text) -> list[int]:
    """'3', '1..6' or '1,2,5' -> list of ints."""
    if isinstance(text, int):
        return [text]
    if isinstance(text, list):
        return [int(x) for x in text]
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out += list(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def _list(value) -> list:
    if value is None:
        return []
    items = value if isinstance(value, (list, tuple)) else [value]
    return [v.strip() for item in items for v in str(item).split(",") if v.strip()]


def load_config(path) -> dict:
    path = Path(path)
    try:
        if path.suffix == ".json":
            return json.loads(path.read_text())
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except (OSError, ValueError) as err:
        raise ConfigError(f"cannot read config {path}: {err}") from None


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, config file and flags (flags win)."""
    cfg = dict(DEFAULTS)
    if args.config:
        file_cfg = load_config(args.config)
        section = file_cfg.get(args.command, {})
        cfg.update({k.replace("-", "_"): v for k, v in file_cfg.items() if not isinstance(v, dict)})
        cfg.update({k.replace("-", "_"): v for k, v in section.items()})
    for key, value in vars(args).items():
        if key in ("config", "command", "func"):
            continue
        if value is not None and value is not False:
            cfg[key] = value
    if cfg.get("seed") is None and args.command not in ("plot", "compile"):
        raise ConfigError("a seed is required (--seed or config key 'seed')")
    cfg["patch"] = _list(cfg.get("patch"))
    try:
        cfg["scheme"] = [canonical_scheme(x) for x in _list(cfg.get("scheme"))]
    except SpecError as err:
        raise ConfigError(str(err)) from None
    cfg["p"] = parse_p(cfg.get("p"))
    if isinstance(cfg.get("thresholds"), str):
        cfg["thresholds"] = [float(x) for x in cfg["thresholds"].split(",")]
    cfg["command"] = args.command
    return cfg


def _check_patches(cfg, need=True):
    if need and not cfg["patch"]:
        raise ConfigError("at least one --patch is required")
    patches = []
    for name in cfg["patch"]:
        patch = build_patch(name)
        if patch.n_sites > LARGE_QUBITS and not cfg["allow_large"]:
            raise ConfigError(f"{name} has {patch.n_sites} qubits; pass --allow-large")
        patches.append(patch)
    return patches


def output_dir(cfg) -> Path:
    root = Path(cfg.get("out") or os.environ.get(OUT_ENV) or "runs")
    key = {k: v for k, v in cfg.items() if k not in ("out", "workers")}
    d = root / f"{cfg['command']}-{canonical_hash(key)[:10]}"
    d.mkdir(parents=True, exist_ok=True)
    return d


def _manifest(out: Path, cfg: dict, t0: float, tasks: list[dict]):
    write_json(
        out / "manifest.json",
        {
            "tool": "kagome-vqe",
            "version": __version__,
            "config": cfg,
            "config_hash": canonical_hash({k: v for k, v in cfg.items() if k != "out"}),
            "patch_literals_hash": patch_literals_hash(),
            "runtime_s": time.time() - t0,
            "tasks": tasks,
        },
    )


# ------------------------------------------------------------------ commands


def cmd_ed(cfg, out):
    from .exactdiag import build_hamiltonian, lanczos_lowest

    tasks = []
    for patch in _check_patches(cfg):
        sector = cfg["sector"]
        if sector is None:
            # every spin multiplet has a member here, so the lowest levels are unchanged
            sector = 0 if patch.n_sites % 2 == 0 else -1
        sol = lanczos_lowest(
            build_hamiltonian(patch), k=int(cfg["k"]), seed=int(cfg["seed"]),
            sector=None if sector == "none" else int(sector),
        )
        report = sol.report(patch.name)
        write_json(out / f"eigen_{patch.name}.json", report)
        print(json.dumps(report))
        tasks.append({"task": f"ed:{patch.name}", "status": "ok"})
    return tasks


def _vqe_kwargs(cfg):
    return dict(
        init=cfg["init"],
        ramp_delta=cfg["ramp_delta"],
        h0_per_dimer=bool(cfg["h0_per_dimer"]),
        sector=cfg["sector"],
    )


def _run_cell(cell, cfg):
    from .vqe import VqeConfig, run_vqe

    name, scheme, p = cell
    vc = VqeConfig(name, scheme, p, seed=int(cfg["seed"]), restarts=int(cfg["restarts"]), **_vqe_kwargs(cfg))
    return run_vqe(vc)


def _run_cells(cfg, out, cells):
    """Run (patch, scheme, p) cells; each finished cell is written at once."""
    sink = CsvSink(out / "results.csv", AGGREGATE_COLUMNS)
    tasks, records = [], []

    def finish(cell, get):
        name = "vqe:" + ":".join(map(str, cell))
        try:
            recs = get()
        except Exception as err:  # recorded per task, the sweep continues
            tasks.append({"task": name, "status": "failed", "error": repr(err)})
            return
        for rec in recs:
            write_json(out / "runs" / f"{rec.patch}_{rec.scheme}_p{rec.p}_r{rec.restart}.json", rec.to_dict())
            sink.append(record_row(rec))
        records.extend(recs)
        tasks.append({"task": name, "status": "ok"})

    workers = int(cfg["workers"])
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            futures = [(cell, pool.submit(_run_cell, cell, cfg)) for cell in cells]
            for cell, fut in futures:
                finish(cell, fut.result)
    else:
        for cell in cells:
            finish(cell, lambda: _run_cell(cell, cfg))
    return tasks, records


def _cells(cfg):
    if not cfg["scheme"]:
        raise ConfigError("at least one --scheme is required")
    return [(pt.name, s, p) for pt in _check_patches(cfg) for s in cfg["scheme"] for p in cfg["p"]]


def cmd_vqe(cfg, out):
    tasks, records = _run_cells(cfg, out, _cells(cfg))
    from .vqe import best_by_cell

    for (patch, scheme, p), r in sorted(best_by_cell(records).items()):
        print(f"{patch} {scheme} p={p}: E={r.E_final:.12f} infidelity={r.infidelity:.3e} ({r.status})")
    return tasks


def cmd_sweep(cfg, out):
    from .plotting import plot_sweep, plot_thresholds
    from .vqe import threshold_table

    tasks, records = _run_cells(cfg, out, _cells(cfg))
    rows = threshold_table(records, cfg["thresholds"])
    write_csv(out / "thresholds.csv", ["patch", "n_qubits", "scheme", "threshold", "p_required"], rows)
    if records:
        plot_sweep(out / "results.csv", out)
        if any(r["p_required"] is not None for r in rows):
            plot_thresholds(out / "thresholds.csv", out)
    return tasks


def cmd_gradstudy(cfg, out):
    from .plotting import plot_gradients
    from .vqe import GradientCell, gradient_study

    _check_patches(cfg)
    stats = gradient_study(cfg["patch"], cfg["scheme"], cfg["p"], int(cfg["samples"]), int(cfg["seed"]))
    cols = list(GradientCell.__dataclass_fields__)
    write_csv(out / "gradients.csv", cols, stats.rows())
    plot_gradients(out / "gradients.csv", out)
    return [{"task": "gradstudy", "status": "ok"}]


def cmd_observables(cfg, out):
    from .ansatz import apply_ansatz, initial_state, make_spec
    from .observables import path_pairs, spin_spin, structure_factor
    from .plotting import plot_correlations, plot_structure
    from .vqe import VqeConfig, best_record, default_sector, reference, run_vqe

    tasks = []
    scheme = (cfg["scheme"] or ["PerEdge"])[0]
    p = max(cfg["p"])
    for patch in _check_patches(cfg):
        vc = VqeConfig(patch.name, scheme, p, seed=int(cfg["seed"]), restarts=int(cfg["restarts"]), **_vqe_kwargs(cfg))
        best = best_record(run_vqe(vc))
        spec = make_spec(patch, vc.scheme, p, vc.h0_per_dimer)
        sector = vc.sector or default_sector(patch)
        psi = apply_ansatz(initial_state(patch, sector), spec, np.array(best.theta))
        exact = reference(patch, sector).states[0]
        d = out / patch.name
        pairs = path_pairs(patch.path)
        if pairs:
            ex, vq = spin_spin(exact, pairs), spin_spin(psi, pairs)
            rows = [{"j": j, "i": a, "k": b, "exact": float(e), "vqe": float(v)}
                    for j, ((a, b), e, v) in enumerate(zip(pairs, ex, vq))]
            write_csv(d / "correlations.csv", ["j", "i", "k", "exact", "vqe"], rows)
            plot_correlations(d / "correlations.csv", d)
        qx, qy, s_ex = structure_factor(exact, patch)
        _, _, s_vq = structure_factor(psi, patch)
        rows = [{"qx": float(a), "qy": float(b), "Szq": float(c), "Szq_vqe": float(v)}
                for a, b, c, v in zip(qx.ravel(), qy.ravel(), s_ex.ravel(), s_vq.ravel())]
        write_csv(d / "structure_factor.csv", ["qx", "qy", "Szq", "Szq_vqe"], rows)
        plot_structure(d / "structure_factor.csv", d, "Szq")
        plot_structure(d / "structure_factor.csv", d, "Szq_vqe")
        dev = float(np.max(np.abs(s_ex - s_vq)) / np.max(s_ex))
        summary = {"patch": patch.name, "scheme": vc.scheme, "p": p, "infidelity": best.infidelity,
                   "structure_factor_rel_dev": dev}
        write_json(d / "summary.json", summary)
        print(json.dumps(summary))
        tasks.append({"task": f"observables:{patch.name}", "status": "ok"})
    return tasks


def cmd_spin_gap(cfg, out):
    from dataclasses import asdict

    from .observables import spin_gap

    tasks = []
    for patch in _check_patches(cfg):
        res = spin_gap(patch, cfg["method"], p=max(cfg["p"]), scheme=(cfg["scheme"] or ["PerEdge"])[0],
                       restarts=int(cfg["restarts"]), seed=int(cfg["seed"]))
        d = asdict(res)
        d["patch"] = patch.name
        write_json(out / f"spin_gap_{patch.name}.json", d)
        print(json.dumps(d))
        ok = res.method == "exact" or all(v.get("converged", True) for v in res.diagnostics.values())
        tasks.append({"task": f"spin-gap:{patch.name}", "status": "ok" if ok else "unconverged"})
    return tasks


def cmd_compile(cfg, out):
    from .embed import depth_report, embed_square, schedule_all_to_all

    tasks = []
    for patch in _check_patches(cfg):
        if cfg["topology"] == "square":
            sched = embed_square(patch).rounds
        elif cfg["topology"] in ("all-to-all", "alltoall", "all_to_all"):
            sched = schedule_all_to_all(patch)
        else:
            raise ConfigError(f"unknown topology {cfg['topology']!r}")
        stats = depth_report(sched, int(cfg["rounds"]), bool(cfg["native"]))
        write_json(out / f"schedule_{patch.name}_{cfg['topology']}.json", sched.to_dict())
        write_json(out / f"depth_{patch.name}_{cfg['topology']}.json", stats.to_dict())
        print(f"{'patch':<8}{'layers/round':>14}{'2q gates/round':>16}{'total depth':>13}")
        print(f"{patch.name:<8}{stats.layers_per_round:>14}{stats.two_qubit_gates_per_round:>16}"
              f"{stats.total_depth:>13}")
        tasks.append({"task": f"compile:{patch.name}", "status": "ok"})
    return tasks


def cmd_plot(cfg, out):
    from .plotting import KINDS, plot

    if cfg["kind"] not in KINDS:
        raise ConfigError(f"--kind must be one of {', '.join(KINDS)}")
    if not cfg["input"]:
        raise ConfigError("--input is required")
    paths = plot(cfg["kind"], cfg["input"], Path(cfg.get("out") or out))
    for p in paths:
        print(p)
    return [{"task": f"plot:{cfg['kind']}", "status": "ok"}]


COMMANDS = {
    "ed": cmd_ed,
    "vqe": cmd_vqe,
    "sweep": cmd_sweep,
    "gradstudy": cmd_gradstudy,
    "observables": cmd_observables,
    "spin-gap": cmd_spin_gap,
    "compile": cmd_compile,
    "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kagome-vqe", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="TOML or JSON config file")
        sp.add_argument("--out", help=f"output root (default ${OUT_ENV} or ./runs)")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--patch", action="append", help="patch name; repeat or comma-separate")
        sp.add_argument("--allow-large", action="store_true", default=None,
                        help=f"permit patches above {LARGE_QUBITS} qubits")

    def vqe_opts(sp):
        sp.add_argument("--scheme", action="append")
        sp.add_argument("--p", help="layers: 3, 1..8 or 1,2,5")
        sp.add_argument("--restarts", type=int)
        sp.add_argument("--init", choices=["random_uniform", "linear_ramp"])
        sp.add_argument("--ramp-delta", type=float)
        sp.add_argument("--sector", choices=["Sz0", "SzPlus", "OddDefault", "OddPlus"])
        sp.add_argument("--h0-per-dimer", action="store_true", default=None)
        sp.add_argument("--workers", type=int)

    sp = sub.add_parser("ed", help="Lanczos eigenvalues")
    common(sp)
    sp.add_argument("--k", type=int)
    sp.add_argument("--sector", help="total S^z in Pauli units (default 0, or -1 for odd N), or 'none'")

    for name, helptext in (("vqe", "VQE runs"), ("sweep", "VQE sweep with threshold table")):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        vqe_opts(sp)
        if name == "sweep":
            sp.add_argument("--thresholds", help="comma-separated fidelities")

    sp = sub.add_parser("gradstudy", help="gradient statistics")
    common(sp)
    sp.add_argument("--scheme", action="append")
    sp.add_argument("--p")
    sp.add_argument("--samples", type=int)

    sp = sub.add_parser("observables", help="correlations and structure factor")
    common(sp)
    vqe_opts(sp)

    sp = sub.add_parser("spin-gap", help="spin gap")
    common(sp)
    sp.add_argument("--method", choices=["exact", "vqe"])
    sp.add_argument("--scheme", action="append")
    sp.add_argument("--p")
    sp.add_argument("--restarts", type=int)

    sp = sub.add_parser("compile", help="hardware round schedule")
    common(sp)
    sp.add_argument("--topology", choices=["square", "all-to-all"])
    sp.add_argument("--rounds", type=int)
    sp.add_argument("--native", action="store_true", default=None)

    sp = sub.add_parser("plot", help="render SVG from CSV")
    sp.add_argument("--config")
    sp.add_argument("--out")
    sp.add_argument("--kind", choices=["sweep", "thresholds", "gradients", "correlations", "structure"])
    sp.add_argument("--input")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    t0 = time.time()
    try:
        cfg = resolve(args)
        if args.command != "plot":
            _check_patches(cfg, need=True)
        out = output_dir(cfg) if args.command != "plot" else Path(cfg.get("out") or ".")
    except (ConfigError, SpecError, UnknownPatchError, FormatError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        tasks = COMMANDS[args.command](cfg, out)
    except (ConfigError, FormatError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except KagomeError as err:
        print(f"error: {err}", file=sys.stderr)
        tasks = [{"task": args.command, "status": "failed", "error": repr(err)}]
    if args.command != "plot":
        _manifest(out, cfg, t0, tasks)
        print(f"outputs in {out}")
    return EXIT_OK if all(t["status"] == "ok" for t in tasks) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
