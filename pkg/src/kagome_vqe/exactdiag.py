"""Heisenberg Hamiltonians on patches, Lanczos eigensolver and dense oracle."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from . import _kernels as K
from .errors import ConvergenceError, EmptyOperatorError, SpecError
from .lattice import KagomePatch, colour_edges, dimer_covering
from .statevec import StateVector

DENSE_MAX_QUBITS = 12


@dataclass(frozen=True)
class SparseHamiltonian:
    """Sum of XX + YY + ZZ over ``terms``."""

    n_qubits: int
    terms: tuple[tuple[int, int], ...]
    edges: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.terms:
            raise EmptyOperatorError("Hamiltonian has no terms")
        for a, b in self.terms:
            if a == b or not (0 <= a < self.n_qubits and 0 <= b < self.n_qubits):
                raise SpecError(f"invalid term {(a, b)}")
        arr = np.array(self.terms, dtype=np.int64).reshape(-1, 2)
        object.__setattr__(self, "edges", arr)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def apply(self, amplitudes: np.ndarray) -> np.ndarray:
        out = np.empty_like(amplitudes)
        K.ham_apply(amplitudes, self.edges, out)
        return out

    def expectation(self, state: StateVector) -> float:
        return float(K.expectation(state.amplitudes, self.edges))

    def to_sparse(self) -> sparse.csr_matrix:
        """Full-space CSR matrix (real)."""
        n = self.n_qubits
        idx = np.arange(1 << n, dtype=np.int64)
        rows, cols, vals = [idx], [idx], [np.zeros(1 << n)]
        for a, b in self.terms:
            same = ((idx >> a) & 1) == ((idx >> b) & 1)
            vals[0] = vals[0] + np.where(same, 1.0, -1.0)
            flip = idx[~same]
            rows.append(flip)
            cols.append(flip ^ ((1 << a) | (1 << b)))
            vals.append(np.full(len(flip), 2.0))
        m = sparse.coo_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
            shape=(1 << n, 1 << n),
        )
        return m.tocsr()


def build_hamiltonian(patch: KagomePatch, subset="all") -> SparseHamiltonian:
    """``subset``: "all", "dimers", a square5 colour label, or an edge list."""
    if isinstance(subset, str):
        if subset == "all":
            terms = patch.edges
        elif subset == "dimers":
            terms = dimer_covering(patch).dimers
        else:
            raise SpecError(f"unknown subset {subset!r}")
    elif isinstance(subset, (int, np.integer)):
        terms = colour_edges(patch, "square5").colour_class(int(subset))
    else:
        terms = [tuple(sorted(map(int, e))) for e in subset]
        missing = set(terms) - set(patch.edges)
        if missing:
            raise SpecError(f"edges not in patch: {sorted(missing)}")
    return SparseHamiltonian(patch.n_sites, tuple(terms))


def hamiltonian_from_edges(n: int, edges) -> SparseHamiltonian:
    return SparseHamiltonian(n, tuple(tuple(map(int, e)) for e in edges))


# ---------------------------------------------------------------- dense oracle

_PAULI = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _pauli_string(n, ops):
    """Kronecker product with qubit n-1 as the leftmost factor."""
    out = np.ones((1, 1), dtype=complex)
    for q in reversed(range(n)):
        out = np.kron(out, ops.get(q, np.eye(2)))
    return out


def dense_matrix(H: SparseHamiltonian) -> np.ndarray:
    """Explicit Kronecker-product construction, independent of the kernels."""
    n = H.n_qubits
    if n > DENSE_MAX_QUBITS:
        raise SpecError(f"dense oracle limited to {DENSE_MAX_QUBITS} qubits")
    m = np.zeros((1 << n, 1 << n), dtype=complex)
    for a, b in H.terms:
        for p in "XYZ":
            m += _pauli_string(n, {a: _PAULI[p], b: _PAULI[p]})
    return m


def dense_diag_oracle(H: SparseHamiltonian, vectors: bool = False):
    """Full ascending spectrum (and eigenvectors if requested)."""
    m = dense_matrix(H)
    if vectors:
        return np.linalg.eigh(m)
    return np.linalg.eigvalsh(m)


# ---------------------------------------------------------------- Lanczos


def sector_ones(n: int, sz: int) -> int:
    """Number of up spins for total S^z = ``sz`` in Pauli units."""
    if (sz + n) % 2 or abs(sz) > n:
        raise SpecError(f"S^z = {sz} impossible for {n} sites")
    return (sz + n) // 2


@dataclass
class EigenSolution:
    """Lowest eigenpairs. Vectors are stored in the solver basis.

    ``basis`` lists the full-space indices of the solver basis, or is None
    when the solve ran in the full space.
    """

    n_qubits: int
    eigenvalues: np.ndarray
    residuals: np.ndarray
    vectors: np.ndarray
    basis: np.ndarray | None = None
    matvecs: int = 0
    sector: int | None = None

    @property
    def k(self) -> int:
        return len(self.eigenvalues)

    def state(self, i: int) -> StateVector:
        full = np.zeros(1 << self.n_qubits, dtype=np.complex128)
        if self.basis is None:
            full[:] = self.vectors[i]
        else:
            full[self.basis] = self.vectors[i]
        return StateVector(self.n_qubits, full)

    @property
    def eigenvectors(self) -> list[StateVector]:
        return [self.state(i) for i in range(self.k)]

    @property
    def gap(self) -> float | None:
        if self.k < 2:
            return None
        return float(self.eigenvalues[1] - self.eigenvalues[0])

    @property
    def relative_gap(self) -> float | None:
        g = self.gap
        return None if g is None else g / abs(float(self.eigenvalues[0]))

    def report(self, patch_name: str) -> dict:
        return {
            "patch": patch_name,
            "k": self.k,
            "energies": [float(e) for e in self.eigenvalues],
            "residuals": [float(r) for r in self.residuals],
            "gap": self.gap,
            "relative_gap": self.relative_gap,
        }


class _Operator:
    """Real symmetric matvec in the full space or a fixed-popcount sector."""

    def __init__(self, H: SparseHamiltonian, ones: int | None):
        self.edges = H.edges
        self.n = H.n_qubits
        if ones is None:
            self.basis = None
            self.dim = 1 << self.n
        else:
            self.basis = K.popcount_basis(self.n, ones)
            self.rank = np.full(1 << self.n, -1, dtype=np.int32)
            self.rank[self.basis] = np.arange(len(self.basis), dtype=np.int32)
            self.dim = len(self.basis)
        self.count = 0

    def __call__(self, v, out):
        self.count += 1
        if self.basis is None:
            K.ham_apply(v, self.edges, out)
        else:
            K.sector_ham_apply(v, self.basis, self.rank, self.edges, out)
        return out


def _orthogonalise(w, V, j, locked):
    """Two passes of classical Gram-Schmidt; returns the first-pass projection."""
    coef = V[:j] @ w if j else np.zeros(0)
    w -= coef @ V[:j] if j else 0.0
    if locked is not None and len(locked):
        w -= (locked @ w) @ locked
    if j:
        c2 = V[:j] @ w
        w -= c2 @ V[:j]
    if locked is not None and len(locked):
        w -= (locked @ w) @ locked
    return coef


def _lowest_pair(op, locked, rng, tol, max_matvecs, cap, keep):
    """Thick-restart Lanczos for the lowest eigenpair orthogonal to ``locked``."""
    dim = op.dim
    free = dim - (0 if locked is None else len(locked))
    cap = max(2, min(cap, free))
    keep = max(1, min(keep, cap - 1))
    V = np.zeros((cap + 1, dim))
    T = np.zeros((cap + 1, cap + 1))
    w = np.empty(dim)

    def fresh(j):
        v = rng.standard_normal(dim)
        _orthogonalise(v, V, j, locked)
        _orthogonalise(v, V, j, locked)
        return v / np.linalg.norm(v)

    V[0] = fresh(0)
    j = 0
    best = (np.inf, None, np.inf)
    while True:
        op(V[j], w)
        coef = _orthogonalise(w, V, j + 1, locked)
        T[: j + 1, j] = coef
        T[j, : j + 1] = coef
        beta = np.linalg.norm(w)
        m = j + 1
        theta, S = np.linalg.eigh(0.5 * (T[:m, :m] + T[:m, :m].T))
        est = abs(beta * S[m - 1, 0])
        exhausted = m >= free
        invariant = beta < 1e-12 * max(1.0, abs(theta[0]))
        if est < tol or exhausted or invariant:
            y = S[:, 0] @ V[:m]
            y /= np.linalg.norm(y)
            hy = np.empty(dim)
            op(y, hy)
            r = np.linalg.norm(hy - theta[0] * y)
            if r < best[2]:
                best = (theta[0], y, r)
            if r < tol or (exhausted and r < 1e3 * tol):
                return theta[0], y, r, op.count
        if op.count >= max_matvecs:
            raise ConvergenceError(
                f"Lanczos did not converge in {max_matvecs} matvecs", [best[2]]
            )
        if invariant and m < free:
            V[m] = fresh(m)
            T[:, m] = 0.0
            T[m, :] = 0.0
            j = m
            continue
        if m >= cap or invariant or exhausted:
            # thick restart: keep the lowest Ritz vectors plus the residual
            r_ = min(keep, m - 1) if beta > 0 and not invariant else min(keep, m)
            Y = S[:, :r_].T @ V[:m]
            V[:r_] = Y
            T[:] = 0.0
            T[np.arange(r_), np.arange(r_)] = theta[:r_]
            if beta > 0 and not invariant:
                nxt = w / beta
                _orthogonalise(nxt, V, r_, locked)
                V[r_] = nxt / np.linalg.norm(nxt)
            else:
                V[r_] = fresh(r_)
            j = r_
            continue
        V[m] = w / beta
        j = m


def lanczos_lowest(
    H: SparseHamiltonian,
    k: int = 1,
    seed=0,
    sector: int | None = None,
    tol: float = 1e-10,
    max_matvecs: int = 10_000,
    krylov_cap: int = 200,
    keep: int | None = None,
    memory_budget: float = 1.5e9,
) -> EigenSolution:
    """k lowest eigenpairs by Lanczos with full reorthogonalisation.

    Eigenpairs are found one at a time and locked; later searches run in the
    orthogonal complement, which resolves exact degeneracies. ``sector``
    restricts the solve to total S^z = sector (Pauli units) using the basis of
    fixed popcount. The Krylov cap is reduced so that the basis fits within
    ``memory_budget`` bytes.
    """
    if k < 1:
        raise SpecError("k must be >= 1")
    ones = None if sector is None else sector_ones(H.n_qubits, sector)
    op = _Operator(H, ones)
    if k > op.dim:
        raise SpecError(f"k={k} exceeds dimension {op.dim}")
    cap = min(krylov_cap, max(8, int(memory_budget // (8 * op.dim)) - 1))
    keep = keep if keep is not None else max(4, cap // 4)
    rng = np.random.default_rng(seed)
    vals, vecs, res = [], [], []
    locked = np.zeros((0, op.dim))
    for _ in range(k):
        try:
            e, v, r, _ = _lowest_pair(op, locked, rng, tol, max_matvecs, cap, keep)
        except ConvergenceError as err:
            raise ConvergenceError(str(err), res + err.residuals) from None
        vals.append(e)
        vecs.append(v)
        res.append(r)
        locked = np.vstack([locked, v[None, :]])
    # final Rayleigh-Ritz over the locked set tidies near-degenerate pairs
    HV = np.empty_like(locked)
    for i in range(k):
        op(locked[i], HV[i])
    theta, S = np.linalg.eigh(0.5 * (locked @ HV.T + HV @ locked.T))
    vecs = S.T @ locked
    hv = S.T @ HV
    res = np.linalg.norm(hv - theta[:, None] * vecs, axis=1)
    basis = op.basis
    return EigenSolution(
        n_qubits=H.n_qubits,
        eigenvalues=theta,
        residuals=res,
        vectors=vecs,
        basis=basis,
        matvecs=op.count,
        sector=sector,
    )


def ground_state(H: SparseHamiltonian, seed=0, sector: int | None = None, k: int = 1):
    return lanczos_lowest(H, k=k, seed=seed, sector=sector)


def eigen_report_json(sol: EigenSolution, patch_name: str) -> str:
    return json.dumps(sol.report(patch_name), indent=2)
