"""Exact-energy VQE: objective, adjoint gradients, runs, sweeps and studies."""

from __future__ import annotations

import math
import time
import zlib
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels as K
from .ansatz import (
    SECTOR_SZ,
    AnsatzSpec,
    apply_ansatz,
    canonical_scheme,
    initial_state,
    make_spec,
    SCHEMES,
)
from .errors import SpecError
from .exactdiag import SparseHamiltonian, build_hamiltonian, lanczos_lowest
from .lattice import KagomePatch, build_patch
from .lbfgs import LbfgsOptions, minimize
from .statevec import StateVector, overlap

INIT_STRATEGIES = ("random_uniform", "linear_ramp")
N_SNAPSHOTS = 5


def objective(spec: AnsatzSpec, theta, psi_i: StateVector, H: SparseHamiltonian) -> float:
    psi = apply_ansatz(psi_i.copy(), spec, theta)
    return H.expectation(psi)


def energy_and_gradient(spec: AnsatzSpec, theta, psi_i: StateVector, H: SparseHamiltonian):
    angles = spec.gate_angles(theta)
    work = psi_i.amplitudes.copy()
    gate_grads = np.empty(spec.n_gates)
    e = K.energy_and_gate_grads(work, spec.pairs, angles, H.edges, gate_grads)
    return float(e), spec.reduce_gate_gradient(gate_grads)


def gradient(spec: AnsatzSpec, theta, psi_i: StateVector, H: SparseHamiltonian) -> np.ndarray:
    return energy_and_gradient(spec, theta, psi_i, H)[1]


def init_params(spec: AnsatzSpec, strategy: str = "random_uniform", seed=None, delta=None):
    """Starting parameters.

    random_uniform draws i.i.d. from [0, 1/p]. linear_ramp sets layer i
    (1-based) to delta * (1 - i/(p+1)) on the H0 side and delta * i/(p+1)
    on the H side; delta defaults to 1/p.
    """
    if spec.p == 0:
        return np.zeros(0)
    if strategy == "random_uniform":
        rng = np.random.default_rng(seed)
        return rng.uniform(0.0, 1.0 / spec.p, spec.n_params)
    if strategy == "linear_ramp":
        delta = 1.0 / spec.p if delta is None else float(delta)
        frac = (spec.param_layer + 1) / (spec.p + 1)
        return np.where(spec.param_kind == 0, delta * (1 - frac), delta * frac)
    raise SpecError(f"unknown init strategy {strategy!r}")


@dataclass
class VqeConfig:
    patch: str
    scheme: str
    p: int
    init: str = "random_uniform"
    seed: int = 0
    restarts: int = 1
    memory: int = 10
    gtol: float = 1e-9
    ftol: float = 1e-14
    max_iter: int = 5000
    sector: str | None = None
    ramp_delta: float | None = None
    h0_per_dimer: bool = False

    def __post_init__(self):
        self.scheme = canonical_scheme(self.scheme)
        if self.restarts < 1:
            raise SpecError("restarts must be >= 1")
        if self.p < 1:
            raise SpecError("p must be >= 1")
        if self.init not in INIT_STRATEGIES:
            raise SpecError(f"unknown init strategy {self.init!r}")

    def options(self) -> LbfgsOptions:
        return LbfgsOptions(self.memory, gtol=self.gtol, ftol=self.ftol, max_iter=self.max_iter)


def default_sector(patch: KagomePatch) -> str:
    return "OddDefault" if patch.n_sites % 2 else "Sz0"


@dataclass
class Reference:
    """Two lowest eigenpairs of H in one S^z sector."""

    energies: np.ndarray
    states: list
    sector: str


_REF_CACHE: dict = {}


def reference(patch: KagomePatch, sector: str | None = None, seed: int = 0) -> Reference:
    sector = sector or default_sector(patch)
    key = (patch.name, patch.edges, sector, seed)
    if key not in _REF_CACHE:
        H = build_hamiltonian(patch)
        sol = lanczos_lowest(H, k=2, seed=seed, sector=SECTOR_SZ[sector])
        _REF_CACHE[key] = Reference(sol.eigenvalues.copy(), sol.eigenvectors, sector)
    return _REF_CACHE[key]


def run_seed(seed: int, patch: str, scheme: str, p: int, restart: int) -> int:
    """Independent, stable seed for one run of a sweep cell."""
    entropy = [seed, zlib.crc32(patch.encode()), SCHEMES.index(scheme), p, restart]
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


@dataclass
class VqeRunRecord:
    config: dict
    restart: int
    seed: int
    theta0: list
    energy_trace: list
    grad_snapshots: list
    theta: list
    E_final: float
    E0: float
    E1: float
    rel_energy_err: float
    infidelity: float
    subspace_infidelity: float
    iters: int
    evals: int
    wall_s: float
    status: str

    @property
    def patch(self) -> str:
        return self.config["patch"]

    @property
    def scheme(self) -> str:
        return self.config["scheme"]

    @property
    def p(self) -> int:
        return self.config["p"]

    def to_dict(self) -> dict:
        return asdict(self)


def run_single(config: VqeConfig, restart: int = 0, ref: Reference | None = None) -> VqeRunRecord:
    patch = build_patch(config.patch)
    sector = config.sector or default_sector(patch)
    spec = make_spec(patch, config.scheme, config.p, config.h0_per_dimer)
    H = build_hamiltonian(patch)
    psi_i = initial_state(patch, sector)
    ref = ref or reference(patch, sector)
    seed = run_seed(config.seed, config.patch, config.scheme, config.p, restart)
    theta0 = init_params(spec, config.init, seed, config.ramp_delta)
    snaps = []

    def on_eval(x, f, g):
        if len(snaps) < N_SNAPSHOTS:
            snaps.append(g.tolist())

    t0 = time.perf_counter()
    res = minimize(
        lambda th: energy_and_gradient(spec, th, psi_i, H), theta0, config.options(), on_eval
    )
    wall = time.perf_counter() - t0
    psi = apply_ansatz(psi_i.copy(), spec, res.x)
    ov = [abs(overlap(s, psi)) ** 2 for s in ref.states]
    E0, E1 = float(ref.energies[0]), float(ref.energies[1])
    return VqeRunRecord(
        config=asdict(config),
        restart=restart,
        seed=seed,
        theta0=theta0.tolist(),
        energy_trace=[float(e) for e in res.trace],
        grad_snapshots=snaps,
        theta=res.x.tolist(),
        E_final=res.f,
        E0=E0,
        E1=E1,
        rel_energy_err=(res.f - E0) / abs(E0),
        infidelity=max(0.0, 1.0 - ov[0]),
        subspace_infidelity=max(0.0, 1.0 - sum(ov)),
        iters=res.nit,
        evals=res.nfev,
        wall_s=wall,
        status=res.status,
    )


def run_vqe(config: VqeConfig, sink=None) -> list[VqeRunRecord]:
    """All restarts of one configuration; ``sink(record)`` sees each one."""
    patch = build_patch(config.patch)
    ref = reference(patch, config.sector or default_sector(patch))
    out = []
    for r in range(config.restarts):
        rec = run_single(config, r, ref)
        if sink is not None:
            sink(rec)
        out.append(rec)
    return out


def best_record(records):
    """The restart with the lowest final energy."""
    return min(records, key=lambda r: (r.E_final, r.restart))


def sweep(patches, schemes, p_values, restarts, seed, sink=None, **kwargs):
    """Run every (patch, scheme, p) cell with ``restarts`` random starts.

    A failing run is reported to ``sink`` as an exception object and skipped.
    """
    records = []
    for name in patches:
        for scheme in schemes:
            for p in p_values:
                cfg = VqeConfig(name, scheme, p, seed=seed, restarts=restarts, **kwargs)
                try:
                    records += run_vqe(cfg, sink)
                except Exception as err:  # recorded, sweep continues
                    if sink is None:
                        raise
                    sink(err)
    return records


def best_by_cell(records) -> dict:
    cells: dict = {}
    for r in records:
        cells.setdefault((r.patch, r.scheme, r.p), []).append(r)
    return {k: best_record(v) for k, v in cells.items()}


def crossing_p(ps, infidelities, threshold: float, floor: float = 1e-16):
    """Smallest p at which fidelity reaches ``threshold``.

    Linear interpolation of log10(infidelity) between sampled p; None if the
    threshold is never reached.
    """
    target = math.log10(1.0 - threshold) + 1e-12  # 1 - 0.9999 is not exactly 1e-4
    pts = sorted(zip(ps, infidelities))
    prev = None
    for p, inf in pts:
        y = math.log10(max(inf, floor))
        if y <= target:
            if prev is None:
                return float(p)
            p0, y0 = prev
            return min(float(p), p0 + (target - y0) * (p - p0) / (y - y0))
        prev = (p, y)
    return None


def threshold_table(records, thresholds=(0.99, 0.999, 0.9999)) -> list[dict]:
    best = best_by_cell(records)
    groups: dict = {}
    for (patch, scheme, p), r in best.items():
        groups.setdefault((patch, scheme), []).append((p, r.infidelity))
    rows = []
    for (patch, scheme), pts in sorted(groups.items()):
        ps, infs = zip(*sorted(pts))
        for T in thresholds:
            rows.append(
                {
                    "patch": patch,
                    "n_qubits": build_patch(patch).n_sites,
                    "scheme": scheme,
                    "threshold": T,
                    "p_required": crossing_p(ps, infs, T),
                }
            )
    return rows


@dataclass
class GradientCell:
    patch: str
    scheme: str
    p: int
    n_qubits: int
    n_params: int
    samples: int
    var_first: float
    var_first_scaled: float
    norm_mean: float
    norm_scaled: float


@dataclass
class GradientStats:
    cells: list = field(default_factory=list)

    def rows(self) -> list[dict]:
        return [asdict(c) for c in self.cells]


def gradient_study(patches, schemes, p_values, samples: int, seed: int) -> GradientStats:
    """Gradient statistics at points drawn uniformly from [0, 1/p]^n_params.

    Reports Var(df/dtheta_1) / n^2 and the mean gradient norm / (n p).
    """
    if samples < 2:
        raise SpecError("samples must be >= 2")
    stats = GradientStats()
    for name in patches:
        patch = build_patch(name)
        H = build_hamiltonian(patch)
        psi_i = initial_state(patch, default_sector(patch))
        n = patch.n_sites
        for scheme in schemes:
            scheme = canonical_scheme(scheme)
            for p in p_values:
                spec = make_spec(patch, scheme, p)
                rng = np.random.default_rng(run_seed(seed, name, scheme, p, 0))
                grads = np.array(
                    [
                        gradient(spec, rng.uniform(0, 1 / p, spec.n_params), psi_i, H)
                        for _ in range(samples)
                    ]
                )
                var = float(np.var(grads[:, 0], ddof=1))
                norm = float(np.mean(np.linalg.norm(grads, axis=1)))
                stats.cells.append(
                    GradientCell(name, scheme, p, n, spec.n_params, samples, var, var / n**2, norm, norm / (n * p))
                )
    return stats
