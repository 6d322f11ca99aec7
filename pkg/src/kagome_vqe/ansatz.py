"""Hamiltonian-variational circuits and their initial states.

Every layer applies the colour groups H4, H5, H1, H2, H3 and then the dimer
Hamiltonian H0; layer 1 acts first. The schemes differ only in how gate angles
are tied to parameters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import SpecError
from .lattice import KagomePatch, colour_edges, dimer_covering
from .statevec import StateVector, apply_singlet_prep, init_basis_state

SCHEMES = ("PerHamiltonian", "PerEdgeColor", "PerEdgeColorII", "PerEdge")
SCHEME_ALIASES = {
    "per_hamiltonian": "PerHamiltonian",
    "per_edge_color": "PerEdgeColor",
    "per_edge_color_ii": "PerEdgeColorII",
    "per_edge": "PerEdge",
}
GROUP_ORDER = (4, 5, 1, 2, 3, 0)
SECTORS = ("Sz0", "SzPlus", "OddDefault", "OddPlus")
SECTOR_SZ = {"Sz0": 0, "SzPlus": 2, "OddDefault": -1, "OddPlus": 3}


def canonical_scheme(name: str) -> str:
    if name in SCHEMES:
        return name
    key = name.lower().replace("-", "_")
    if key in SCHEME_ALIASES:
        return SCHEME_ALIASES[key]
    raise SpecError(f"unknown scheme {name!r}")


@dataclass(frozen=True)
class AnsatzSpec:
    """Gate sequence and parameter tying.

    ``pairs[g]`` is the qubit pair of gate g, ``group[g]`` its Hamiltonian
    piece (0 for H0, 1..5 for colours), ``layer[g]`` its layer and
    ``tying[g]`` the parameter it reads. ``param_kind`` marks each parameter
    as H0-side (0) or H-side (1), ``param_layer`` gives its layer.
    """

    scheme: str
    p: int
    patch: KagomePatch
    pairs: np.ndarray
    group: np.ndarray
    layer: np.ndarray
    tying: np.ndarray
    n_params: int
    param_kind: np.ndarray
    param_layer: np.ndarray
    h0_per_dimer: bool = False
    edges: np.ndarray = field(repr=False, default=None)

    @property
    def n_gates(self) -> int:
        return len(self.pairs)

    def gate_angles(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (self.n_params,):
            raise ValueError(f"expected {self.n_params} parameters, got {theta.shape}")
        return theta[self.tying]

    def reduce_gate_gradient(self, gate_grads: np.ndarray) -> np.ndarray:
        return np.bincount(self.tying, weights=gate_grads, minlength=self.n_params)

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "p": self.p,
            "patch": self.patch.name,
            "n_params": self.n_params,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def layer_gates(patch: KagomePatch) -> list[tuple[int, tuple[int, int]]]:
    """(group, pair) of one layer in application order."""
    classes = colour_edges(patch, "square5").classes()
    dimers = dimer_covering(patch).dimers
    out = []
    for g in GROUP_ORDER:
        edges = dimers if g == 0 else classes.get(g, [])
        out += [(g, e) for e in edges]
    return out


def make_spec(patch: KagomePatch, scheme: str, p: int, h0_per_dimer: bool = False) -> AnsatzSpec:
    """Build the circuit for ``p`` layers.

    PerEdgeColorII omits the H0 gates (H0 coincides with H1). PerEdge has one
    parameter per kagome edge per layer plus one for the whole H0, or one per
    dimer with ``h0_per_dimer``.
    """
    scheme = canonical_scheme(scheme)
    if p < 0:
        raise SpecError("p must be >= 0")
    base = layer_gates(patch)
    if scheme == "PerEdgeColorII":
        base = [(g, e) for g, e in base if g != 0]
    edge_index = {e: i for i, e in enumerate(patch.edges)}
    dimer_index = {e: i for i, e in enumerate(dimer_covering(patch).dimers)}
    if scheme == "PerHamiltonian":
        per_layer = 2
        kinds = [0, 1]

        def slot(g, e):
            return 0 if g == 0 else 1

    elif scheme == "PerEdgeColor":
        per_layer = 6
        kinds = [0, 1, 1, 1, 1, 1]

        def slot(g, e):
            return g

    elif scheme == "PerEdgeColorII":
        per_layer = 5
        kinds = [1] * 5

        def slot(g, e):
            return g - 1

    else:
        n0 = len(dimer_index) if h0_per_dimer else 1
        per_layer = n0 + patch.n_edges
        kinds = [0] * n0 + [1] * patch.n_edges

        def slot(g, e):
            if g == 0:
                return dimer_index[e] if h0_per_dimer else 0
            return n0 + edge_index[e]

    pairs, group, layer, tying = [], [], [], []
    for i in range(p):
        for g, e in base:
            pairs.append(e)
            group.append(g)
            layer.append(i)
            tying.append(i * per_layer + slot(g, e))
    n_params = p * per_layer
    return AnsatzSpec(
        scheme=scheme,
        p=p,
        patch=patch,
        pairs=np.array(pairs, dtype=np.int64).reshape(-1, 2),
        group=np.array(group, dtype=np.int64),
        layer=np.array(layer, dtype=np.int64),
        tying=np.array(tying, dtype=np.int64),
        n_params=n_params,
        param_kind=np.array(kinds * p, dtype=np.int64),
        param_layer=np.repeat(np.arange(p), per_layer),
        h0_per_dimer=h0_per_dimer and scheme == "PerEdge",
        edges=np.array(patch.edges, dtype=np.int64).reshape(-1, 2),
    )


def initial_state(patch: KagomePatch, sector: str = "Sz0") -> StateVector:
    """Product of dimer singlets in the requested S^z sector.

    SzPlus and OddPlus put the first dimer in the up-up triplet; the
    uncovered site of an odd patch is down for OddDefault and up for OddPlus.
    """
    if sector not in SECTORS:
        raise SpecError(f"unknown sector {sector!r}")
    cover = dimer_covering(patch)
    odd = patch.n_sites % 2 == 1
    if odd != sector.startswith("Odd"):
        raise SpecError(f"sector {sector} incompatible with {patch.n_sites} sites")
    bits = ["0"] * patch.n_sites
    triplet = cover.dimers[0] if sector in ("SzPlus", "OddPlus") else None
    if triplet is not None:
        bits[triplet[0]] = bits[triplet[1]] = "1"
    if sector == "OddPlus":
        bits[cover.uncovered] = "1"
    state = init_basis_state(patch.n_sites, "".join(bits))
    for d in cover.dimers:
        if d != triplet:
            apply_singlet_prep(state, d)
    return state


def apply_ansatz(state: StateVector, spec: AnsatzSpec, theta) -> StateVector:
    angles = spec.gate_angles(theta)
    if state.n_qubits != spec.patch.n_sites:
        raise ValueError("state size does not match the patch")
    K.run_circuit(state.amplitudes, spec.pairs, angles)
    return state


def expand_to(spec_from: AnsatzSpec, spec_to: AnsatzSpec, theta) -> np.ndarray:
    """Parameters for ``spec_to`` giving the same gate angles as ``theta``.

    Requires identical gate sequences and a tying of ``spec_to`` at least as
    fine as that of ``spec_from``.
    """
    if not np.array_equal(spec_from.pairs, spec_to.pairs):
        raise SpecError("gate sequences differ")
    angles = spec_from.gate_angles(theta)
    out = np.full(spec_to.n_params, np.nan)
    for g, t in enumerate(spec_to.tying):
        if not np.isnan(out[t]) and out[t] != angles[g]:
            raise SpecError("target tying is coarser than the source")
        out[t] = angles[g]
    return np.nan_to_num(out)
