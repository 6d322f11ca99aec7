"""Correlations, structure factor, spin gap and shot-based energy estimates.

All values are in Pauli units (each two-spin operator has spectrum {-3, 1}
for S.S and {-1, 1} for Z Z); divide by 4 for spin-1/2 operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .ansatz import SECTOR_SZ, apply_ansatz, initial_state, make_spec
from .errors import EstimationError, SpecError
from .exactdiag import SparseHamiltonian, build_hamiltonian, lanczos_lowest
from .lattice import KagomePatch
from .statevec import (
    ShotBatch,
    StateVector,
    apply_singlet_unprep,
    outcome_values,
)

KAGOME_K = 2 * math.pi / 3  # corner of the Brillouin zone, unit site spacing


def _spins_z(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return np.array([1 - 2 * ((idx >> q) & 1) for q in range(n)], dtype=np.float64)


def zz_matrix(state: StateVector) -> np.ndarray:
    """<Z_i Z_j> for all pairs."""
    z = _spins_z(state.n_qubits)
    return (z * state.probabilities()) @ z.T


def spin_spin(state: StateVector, pairs, signed: bool = False) -> np.ndarray:
    """|<Z_i Z_j>| per pair (the signed value with ``signed``)."""
    probs = state.probabilities()
    idx = np.arange(len(probs), dtype=np.int64)
    out = []
    for i, j in pairs:
        par = ((idx >> i) ^ (idx >> j)) & 1
        out.append(float(probs @ (1.0 - 2.0 * par)))
    out = np.array(out)
    return out if signed else np.abs(out)


def spin_spin_from_shots(batch: ShotBatch, pairs, signed: bool = False):
    """Estimate and standard error of <Z_i Z_j> from a Z-basis batch."""
    if batch.basis != "Z":
        raise SpecError("spin-spin estimates need a Z batch")
    if batch.kept == 0:
        raise EstimationError("no shots kept")
    s = batch.spins()
    vals, errs = [], []
    for i, j in pairs:
        prod = s[:, i] * s[:, j]
        vals.append(prod.mean())
        errs.append(prod.std(ddof=1) / math.sqrt(len(prod)) if len(prod) > 1 else 0.0)
    vals = np.array(vals)
    return (vals if signed else np.abs(vals)), np.array(errs)


def path_pairs(path) -> list[tuple[int, int]]:
    """(path[0], path[j]) for every j."""
    return [(path[0], v) for v in path]


def _pair_op(state: StateVector, edge) -> np.ndarray:
    out = np.empty_like(state.amplitudes)
    K.ham_apply(state.amplitudes, np.array([edge], dtype=np.int64), out)
    return out


def bond_energy(state: StateVector, edge) -> float:
    """<S_i . S_j> in Pauli units."""
    return float(np.vdot(state.amplitudes, _pair_op(state, edge)).real)


def _check_disjoint(e1, e2):
    if set(e1) & set(e2):
        raise SpecError(f"dimers {e1} and {e2} share a site")


def dimer_dimer(state: StateVector, edge_pairs) -> np.ndarray:
    """Connected <(S.S)_ij (S.S)_kl> - <(S.S)_ij><(S.S)_kl>."""
    out = []
    for e1, e2 in edge_pairs:
        _check_disjoint(e1, e2)
        a = _pair_op(state, e1)
        b = _pair_op(state, e2)
        joint = float(np.vdot(a, b).real)
        out.append(joint - np.vdot(state.amplitudes, a).real * np.vdot(state.amplitudes, b).real)
    return np.array(out)


@dataclass
class DimerEstimate:
    joint: float
    joint_err: float
    first: float
    second: float
    connected: float
    shots: int


def dimer_protocol(state: StateVector, e1, e2, shots: int, seed) -> DimerEstimate:
    """Measure two disjoint bonds by undoing the singlet preparation.

    After the inverse preparation circuit an outcome down-down on a bond
    means S.S = -3 and any other outcome means +1.
    """
    _check_disjoint(e1, e2)
    work = state.copy()
    apply_singlet_unprep(work, e1)
    apply_singlet_unprep(work, e2)
    probs = work.probabilities()
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    idx = np.minimum(np.searchsorted(cdf, rng.random(shots), side="right"), len(cdf) - 1)

    def bond_value(e):
        down = (((idx >> e[0]) & 1) == 0) & (((idx >> e[1]) & 1) == 0)
        return np.where(down, -3.0, 1.0)

    a, b = bond_value(e1), bond_value(e2)
    prod = a * b
    return DimerEstimate(
        joint=float(prod.mean()),
        joint_err=float(prod.std(ddof=1) / math.sqrt(shots)) if shots > 1 else 0.0,
        first=float(a.mean()),
        second=float(b.mean()),
        connected=float(prod.mean() - a.mean() * b.mean()),
        shots=shots,
    )


def default_q_grid(points: int = 81, scale: float = 1.2) -> tuple[np.ndarray, np.ndarray]:
    """Square grid covering ``scale`` times the Brillouin-zone extent."""
    ax = np.linspace(-scale * KAGOME_K, scale * KAGOME_K, points)
    return np.meshgrid(ax, ax, indexing="xy")


def structure_factor(state: StateVector, patch: KagomePatch, q_grid=None, zz=None):
    """S(q) = (1/N) sum_ij cos(q.(r_i - r_j)) <Z_i Z_j> on a grid.

    Returns (qx, qy, S) arrays of equal shape. The cosine form is the real
    part of the Fourier sum, which is exactly real for a symmetric <ZZ>.
    """
    qx, qy = default_q_grid() if q_grid is None else q_grid
    qx, qy = np.asarray(qx, dtype=float), np.asarray(qy, dtype=float)
    C = zz_matrix(state) if zz is None else zz
    C = 0.5 * (C + C.T)
    r = patch.positions
    q = np.stack([qx.ravel(), qy.ravel()], axis=1)
    phase = q @ r.T  # (Q, N)
    c, s = np.cos(phase), np.sin(phase)
    # sum_ij cos(q.ri - q.rj) C_ij = c C c^T + s C s^T on the diagonal
    S = (np.einsum("qi,ij,qj->q", c, C, c) + np.einsum("qi,ij,qj->q", s, C, s)) / patch.n_sites
    return qx, qy, S.reshape(qx.shape)


@dataclass
class SpinGapResult:
    method: str
    sectors: tuple
    energies: tuple
    gap: float
    gap_spin_units: float
    diagnostics: dict = field(default_factory=dict)


def _gap_sectors(n_sites: int):
    if n_sites % 2 == 0:
        return ("Sz0", "SzPlus")
    return ("OddDefault", "OddPlus")


def spin_gap(patch: KagomePatch | SparseHamiltonian, method: str = "exact", p: int = 5, scheme: str = "PerEdge",
             restarts: int = 3, seed: int = 0) -> SpinGapResult:
    """Ground-energy difference between adjacent S^z sectors.

    Even N: S^z = 2 minus S^z = 0. Odd N: S^z = 3 minus S^z = 1, with the
    S^z = -1 state standing in for S^z = 1 (spin-flip symmetry). Pauli units;
    ``gap_spin_units`` is a quarter of that. A bare Hamiltonian (for example
    of a disconnected edge set) is accepted by the exact method.
    """
    if isinstance(patch, SparseHamiltonian):
        if method != "exact":
            raise SpecError("a bare Hamiltonian needs method='exact'")
        H = patch
    else:
        H = build_hamiltonian(patch)
    lo, hi = _gap_sectors(H.n_qubits)
    diag = {}
    if method == "exact":
        energies = []
        for sec in (lo, hi):
            sol = lanczos_lowest(H, k=1, seed=seed, sector=SECTOR_SZ[sec])
            energies.append(float(sol.eigenvalues[0]))
            diag[sec] = {"residual": float(sol.residuals[0])}
    elif method == "vqe":
        from .lbfgs import minimize
        from .vqe import energy_and_gradient, init_params, run_seed

        energies = []
        for sec in (lo, hi):
            spec = make_spec(patch, scheme, p)
            psi_i = initial_state(patch, sec)
            best = None
            for r in range(restarts):
                th0 = init_params(spec, "random_uniform", run_seed(seed, patch.name, spec.scheme, p, r))
                res = minimize(lambda th: energy_and_gradient(spec, th, psi_i, H), th0)
                if best is None or res.f < best.f:
                    best = res
            energies.append(best.f)
            diag[sec] = {
                "status": best.status,
                "grad_max": float(np.max(np.abs(best.g))) if len(best.g) else 0.0,
                "converged": best.success,
            }
    else:
        raise SpecError(f"unknown method {method!r}")
    gap = energies[1] - energies[0]
    return SpinGapResult(method, (lo, hi), tuple(energies), gap, gap / 4.0, diag)


def estimate_energy_from_shots(batches: dict, patch_or_edges, post_select: bool = False,
                               expected: float = 0.0):
    """<H> from one batch per basis, with its standard error.

    Each kept shot gives the basis' total bond value sum_e s_i s_j. The three
    bases are independent, so variances of their means add. With
    ``post_select`` shots whose summed outcomes differ from ``expected`` are
    dropped first.
    """
    edges = patch_or_edges.edges if isinstance(patch_or_edges, KagomePatch) else patch_or_edges
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    total, var = 0.0, 0.0
    for basis in ("X", "Y", "Z"):
        if basis not in batches:
            raise EstimationError(f"missing {basis} batch")
        b = batches[basis]
        idx = b.outcomes
        if post_select and not b.post_selected:
            idx = idx[outcome_values(b.n_qubits, basis)[idx] == expected]
        if len(idx) == 0:
            raise EstimationError(f"every {basis} shot was discarded")
        s = 1 - 2 * ((idx[:, None] >> np.arange(b.n_qubits)) & 1)
        per_shot = np.sum(s[:, edges[:, 0]] * s[:, edges[:, 1]], axis=1).astype(float)
        total += per_shot.mean()
        if len(per_shot) > 1:
            var += per_shot.var(ddof=1) / len(per_shot)
    return float(total), float(math.sqrt(var))


@dataclass
class ObservableReport:
    spin_spin: list
    dimer_dimer: list
    structure_factor: tuple
    spin_gap: SpinGapResult | None = None
    units: str = "pauli"

    def correlations_csv(self) -> str:
        lines = ["kind,a,b,value"]
        for (i, j), v in self.spin_spin:
            lines.append(f"spin_spin,{i}-{j},,{v:.17g}")
        for ((i, j), (k, l)), v in self.dimer_dimer:
            lines.append(f"dimer_dimer,{i}-{j},{k}-{l},{v:.17g}")
        return "\n".join(lines) + "\n"


def observable_report(state: StateVector, patch: KagomePatch, path=None, dimer_pairs=None,
                      q_grid=None) -> ObservableReport:
    path = list(path if path is not None else patch.path)
    pairs = path_pairs(path) if path else []
    ss = list(zip(pairs, spin_spin(state, pairs))) if pairs else []
    dd = []
    if dimer_pairs:
        dd = list(zip(dimer_pairs, dimer_dimer(state, dimer_pairs)))
    return ObservableReport(ss, dd, structure_factor(state, patch, q_grid))


def vqe_state(patch: KagomePatch, scheme: str, p: int, theta, sector: str = "Sz0") -> StateVector:
    spec = make_spec(patch, scheme, p)
    return apply_ansatz(initial_state(patch, sector), spec, theta)
