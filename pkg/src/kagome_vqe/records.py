"""Result persistence: atomic JSON files, append-only CSV and manifests."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import threading
from pathlib import Path

from ._patch_data import PATCHES

AGGREGATE_COLUMNS = [
    "patch", "scheme", "p", "restart", "seed", "E_final", "rel_energy_err",
    "infidelity", "subspace_infidelity", "iters", "evals",
]  # wall_s stays in the per-run JSON so reruns give byte-identical CSV


def fmt(value) -> str:
    """17 significant digits for floats, plain text otherwise."""
    if isinstance(value, float):
        return f"{value:.17g}"
    if value is None:
        return ""
    return str(value)


def write_json(path, obj) -> Path:
    """Write via a temporary file and rename so readers never see a partial file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)
    return path


def write_csv(path, columns, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row.get(c)) for c in columns])
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(buf.getvalue())
    os.replace(tmp, path)
    return path


class CsvSink:
    """Append-only CSV; every row is flushed to disk before returning."""

    def __init__(self, path, columns, fresh: bool = True):
        self.path = Path(path)
        self.columns = list(columns)
        self._lock = threading.Lock()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        if fresh or not self.path.exists():
            with open(self.path, "w") as fh:
                csv.writer(fh, lineterminator="\n").writerow(self.columns)

    def append(self, row: dict):
        with self._lock, open(self.path, "a") as fh:
            csv.writer(fh, lineterminator="\n").writerow([fmt(row.get(c)) for c in self.columns])
            fh.flush()
            os.fsync(fh.fileno())


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def record_row(rec) -> dict:
    return {
        "patch": rec.patch,
        "scheme": rec.scheme,
        "p": rec.p,
        "restart": rec.restart,
        "seed": rec.seed,
        "E_final": rec.E_final,
        "rel_energy_err": rec.rel_energy_err,
        "infidelity": rec.infidelity,
        "subspace_infidelity": rec.subspace_infidelity,
        "iters": rec.iters,
        "evals": rec.evals,
    }


def canonical_hash(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()


def patch_literals_hash() -> str:
    return canonical_hash(PATCHES)
