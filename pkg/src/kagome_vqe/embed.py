"""Round schedules for square-grid and all-to-all hardware.

The square-grid round has seven layers: colours 1, 2, 3 interact on
grid-adjacent qubits, one SWAP layer moves every sparse site next to its
colour-4 partner (and every even chain site next to its colour-5 partner),
colours 4 and 5 interact, and the SWAP layer is undone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import EmbedError
from .lattice import (
    CHAIN_EVEN,
    SPARSE,
    KagomePatch,
    _colour1_ok,
    _grid_square5,
    cell_type,
    colour_edges,
)
from .statevec import StateVector, apply_heisenberg, apply_swap

INTERACT, SWAP = "interact", "swap"


@dataclass(frozen=True)
class Layer:
    kind: str
    pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class RoundSchedule:
    n_qubits: int
    layers: tuple[Layer, ...]

    def to_dict(self) -> dict:
        return {
            "layers": [
                {"kind": L.kind, "pairs": [list(p) for p in L.pairs]} for L in self.layers
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, n_qubits: int, d: dict) -> "RoundSchedule":
        return cls(
            n_qubits,
            tuple(
                Layer(L["kind"], tuple(tuple(p) for p in L["pairs"])) for L in d["layers"]
            ),
        )

    def interactions(self) -> list[list[tuple[int, int]]]:
        """Logical site pairs of each interact layer, tracking SWAPs."""
        at = list(range(self.n_qubits))  # physical qubit -> logical site
        out = []
        for L in self.layers:
            if L.kind == SWAP:
                for a, b in L.pairs:
                    at[a], at[b] = at[b], at[a]
            else:
                out.append([tuple(sorted((at[a], at[b]))) for a, b in L.pairs])
        return out

    def net_permutation(self) -> list[int]:
        at = list(range(self.n_qubits))
        for L in self.layers:
            if L.kind == SWAP:
                for a, b in L.pairs:
                    at[a], at[b] = at[b], at[a]
        return at


@dataclass(frozen=True)
class SquareEmbedding:
    placement: dict
    swap_pairs: tuple[tuple[int, int], ...]
    rounds: RoundSchedule
    shape: tuple[int, int]

    def qubit(self, cell) -> int:
        return cell[0] * self.shape[1] + cell[1]


@dataclass(frozen=True)
class DepthStats:
    layers_per_round: int
    two_qubit_gates_per_round: int
    total_depth: int
    native: bool = False

    def to_dict(self) -> dict:
        return {
            "layers_per_round": self.layers_per_round,
            "two_qubit_gates_per_round": self.two_qubit_gates_per_round,
            "total_depth": self.total_depth,
            "native": self.native,
        }


def embed_square(patch: KagomePatch) -> SquareEmbedding:
    if patch.grid is None or patch.shape is None:
        raise EmbedError(f"{patch.name} has no square-grid placement")
    assign = _grid_square5(patch)
    if assign is None or not _colour1_ok(patch, assign):
        raise EmbedError(f"{patch.name} does not follow the square-grid colour rule")
    rows, cols = patch.shape
    cell_of = dict(enumerate(patch.grid))
    if any(r >= rows or c >= cols for r, c in cell_of.values()):
        raise EmbedError("placement exceeds the grid")
    at = {cell: i for i, cell in cell_of.items()}

    def q(cell):
        return cell[0] * cols + cell[1]

    swaps = set()
    for (a, b), c in assign.items():
        ca, cb = sorted((cell_of[a], cell_of[b]))
        if c == 4:  # sparse (r, c) with odd chain (r+1, c-1)
            r, col = ca
            partner = (r, col - 1)
            if cell_type(r, col) != SPARSE or partner not in at:
                raise EmbedError(f"colour-4 edge {(a, b)} has no SWAP partner")
            swaps.add((q(partner), q(ca)))
        elif c == 5:  # even chain (r, c) with odd chain (r, c+2)
            r, col = ca
            partner = (r, col + 1)
            if cell_type(r, col) != CHAIN_EVEN or partner not in at:
                raise EmbedError(f"colour-5 edge {(a, b)} has no SWAP partner")
            swaps.add((q(ca), q(partner)))
    swaps = tuple(sorted(swaps))
    used = [v for p in swaps for v in p]
    if len(set(used)) != len(used):
        raise EmbedError("SWAP pairs overlap")

    phys = {i: q(cell) for i, cell in cell_of.items()}
    moved = dict(phys)
    for x, y in swaps:
        sx = next(i for i, p in phys.items() if p == x)
        sy = next(i for i, p in phys.items() if p == y)
        moved[sx], moved[sy] = y, x

    def adjacent(p1, p2):
        r1, c1 = divmod(p1, cols)
        r2, c2 = divmod(p2, cols)
        return abs(r1 - r2) + abs(c1 - c2) == 1

    layers = []
    for colour, where in ((1, phys), (2, phys), (3, phys), (None, None), (4, moved), (5, moved), (None, None)):
        if colour is None:
            if swaps:
                layers.append(Layer(SWAP, swaps))
            continue
        pairs = []
        for (a, b), c in assign.items():
            if c == colour:
                pa, pb = sorted((where[a], where[b]))
                if not adjacent(pa, pb):
                    raise EmbedError(f"edge {(a, b)} not grid-adjacent in its layer")
                pairs.append((pa, pb))
        if pairs:
            layers.append(Layer(INTERACT, tuple(sorted(pairs))))
    schedule = RoundSchedule(rows * cols, tuple(layers))
    return SquareEmbedding(dict(cell_of), swaps, schedule, (rows, cols))


def schedule_all_to_all(patch: KagomePatch) -> RoundSchedule:
    classes = colour_edges(patch, "allToAll4").classes()
    layers = tuple(Layer(INTERACT, tuple(edges)) for _, edges in classes.items())
    return RoundSchedule(patch.n_sites, layers)


def depth_report(schedule: RoundSchedule, rounds: int, native: bool = False) -> DepthStats:
    """Per-round layer and gate counts.

    With ``native`` an interaction counts as 2 two-qubit gates and a SWAP as 3.
    """
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    gates = 0
    depth = 0
    for L in schedule.layers:
        w = (2 if L.kind == INTERACT else 3) if native else 1
        gates += w * len(L.pairs)
        depth += w
    return DepthStats(depth, gates, rounds * depth, native)


def simulate_schedule(schedule: RoundSchedule, state: StateVector, angles) -> StateVector:
    """Run one round on ``state`` (physical qubit order), in place.

    ``angles`` is a float applied to every interaction or a mapping from
    logical edge to angle.
    """
    at = list(range(schedule.n_qubits))
    for L in schedule.layers:
        for a, b in L.pairs:
            if L.kind == SWAP:
                apply_swap(state, (a, b))
                at[a], at[b] = at[b], at[a]
            else:
                edge = tuple(sorted((at[a], at[b])))
                theta = angles if np.isscalar(angles) else angles[edge]
                apply_heisenberg(state, (a, b), theta)
    return state
