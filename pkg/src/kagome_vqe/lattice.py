"""Finite kagome patches, their edge colourings and dimer coverings."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from ._patch_data import PATCHES
from .errors import CoveringError, SpecError, UnknownPatchError

NAMED_PATCHES = tuple(PATCHES)
SCHEMES = ("square5", "allToAll4")

# Grid offset of the row-path embedding. Cell (row, col) has type
# (col - row + OFFSET) % 3: 0 = even chain site, 1 = sparse site,
# 2 = odd chain site.
OFFSET = 1
CHAIN_EVEN, SPARSE, CHAIN_ODD = 0, 1, 2
_SQ3 = math.sqrt(3.0)


def cell_type(row: int, col: int) -> int:
    return (col - row + OFFSET) % 3


def _norm_edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class KagomePatch:
    """Sites with kagome coordinates plus an edge list.

    ``grid`` maps site ids to square-grid cells for patches that sit in a
    rectangular window of the row-path embedding; it is ``None`` otherwise.
    """

    name: str
    positions: np.ndarray
    edges: tuple[tuple[int, int], ...]
    grid: tuple[tuple[int, int], ...] | None = None
    shape: tuple[int, int] | None = None
    path: tuple[int, ...] = ()
    _adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pos = np.array(self.positions, dtype=float).reshape(-1, 2)
        pos.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        edges = tuple(sorted(_norm_edge(int(a), int(b)) for a, b in self.edges))
        object.__setattr__(self, "edges", edges)
        n = len(pos)
        if n < 1:
            raise SpecError("patch has no sites")
        if len(set(edges)) != len(edges):
            raise SpecError("duplicate edges")
        adj = [[] for _ in range(n)]
        for a, b in edges:
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise SpecError(f"invalid edge {(a, b)}")
            adj[a].append(b)
            adj[b].append(a)
        if max(len(x) for x in adj) > 4:
            raise SpecError("site degree exceeds 4")
        object.__setattr__(self, "_adj", tuple(tuple(sorted(x)) for x in adj))
        if not self._connected():
            raise SpecError("patch graph is disconnected")

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_sites

    @property
    def n_sites(self) -> int:
        return len(self.positions)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def neighbours(self, site: int) -> tuple[int, ...]:
        return self._adj[site]

    def degree(self, site: int) -> int:
        return len(self._adj[site])

    def triangles(self) -> list[tuple[int, int, int]]:
        tris = []
        for a, b in self.edges:
            for c in self._adj[a]:
                if c > b and c in self._adj[b]:
                    tris.append((a, b, c))
        return tris

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "sites": [
                {"id": i, "x": float(x), "y": float(y)}
                for i, (x, y) in enumerate(self.positions)
            ],
            "edges": [list(e) for e in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _window(rows: int, cols: int):
    """Sites, true positions and edges of a rows x cols embedding window."""
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    sid = {cell: r * cols + c for r, c in cells for cell in [(r, c)]}
    edges = []
    for r, c in cells:
        t = cell_type(r, c)
        cand = [(r, c + 1)]
        if t == CHAIN_EVEN:
            cand.append((r, c + 2))
        if t == SPARSE:
            cand += [(r + 1, c), (r + 1, c - 1)]
        for other in cand:
            if other in sid:
                edges.append((sid[(r, c)], sid[other]))
    pos = []
    for r, c in cells:
        t = cell_type(r, c)
        j = (c - r + OFFSET - t) // 3
        if t == CHAIN_EVEN:
            pos.append((2 * j + r, r * _SQ3))
        elif t == CHAIN_ODD:
            pos.append((2 * j + 1 + r, r * _SQ3))
        else:
            pos.append((2 * j + r + 0.5, r * _SQ3 + _SQ3 / 2))
    pos = np.array(pos)
    pos -= pos.min(axis=0)
    return cells, pos, edges


def strip_patch(rows: int, cols: int) -> KagomePatch:
    """Generate a rows x cols window of the square-grid kagome embedding."""
    if rows < 1 or cols < 1:
        raise SpecError(f"degenerate strip {rows}x{cols}")
    cells, pos, edges = _window(rows, cols)
    return KagomePatch(
        name=f"{rows}x{cols}",
        positions=pos,
        edges=tuple(edges),
        grid=tuple(cells),
        shape=(rows, cols),
    )


def build_patch(name) -> KagomePatch:
    """Return a named patch, or a generated strip for ``(rows, cols)``."""
    if isinstance(name, tuple):
        rows, cols = name
        if f"{rows}x{cols}" in PATCHES:
            return build_patch(f"{rows}x{cols}")
        return strip_patch(int(rows), int(cols))
    if name not in PATCHES:
        raise UnknownPatchError(f"unknown patch {name!r}")
    d = PATCHES[name]
    sites = d["sites"]
    grid = None
    if d["shape"] is not None:
        grid = tuple(s[3] for s in sites)
    return KagomePatch(
        name=name,
        positions=np.array([(s[1], s[2]) for s in sites]),
        edges=tuple(d["edges"]),
        grid=grid,
        shape=d["shape"],
        path=tuple(d["path"]),
    )


@dataclass(frozen=True)
class EdgeColouring:
    scheme: str
    assignment: dict

    def classes(self) -> dict[int, list[tuple[int, int]]]:
        out: dict[int, list[tuple[int, int]]] = {}
        for e, c in sorted(self.assignment.items()):
            out.setdefault(c, []).append(e)
        return dict(sorted(out.items()))

    def colour_class(self, c: int) -> list[tuple[int, int]]:
        return sorted(e for e, k in self.assignment.items() if k == c)

    def is_proper(self) -> bool:
        seen = set()
        for (a, b), c in self.assignment.items():
            if (a, c) in seen or (b, c) in seen:
                return False
            seen.add((a, c))
            seen.add((b, c))
        return True


@dataclass(frozen=True)
class DimerCovering:
    dimers: tuple[tuple[int, int], ...]
    uncovered: int | None = None


def _grid_square5(patch: KagomePatch) -> dict | None:
    """Geometric colour rule on the square-grid placement, or None."""
    if patch.grid is None:
        return None
    cell_of = dict(enumerate(patch.grid))
    at = {cell: i for i, cell in cell_of.items()}
    out = {}
    for a, b in patch.edges:
        (ra, ca), (rb, cb) = cell_of[a], cell_of[b]
        if (ra, ca) > (rb, cb):
            (ra, ca), (rb, cb) = (rb, cb), (ra, ca)
        dr, dc = rb - ra, cb - ca
        if dr == 0 and dc == 1:
            # alternate along the contiguous run of cells in this row
            start = ca
            while (ra, start - 1) in at:
                start -= 1
            out[(a, b)] = 1 if (ca - start) % 2 == 0 else 2
        elif dr == 1 and dc == 0:
            out[(a, b)] = 3
        elif dr == 1 and dc == -1:
            out[(a, b)] = 4
        elif dr == 0 and dc == 2:
            out[(a, b)] = 5
        else:
            return None
    return out


def _perfect_matching(n, adj, excluded=None):
    """Deterministic backtracking matching covering every site but ``excluded``."""
    mate = [-1] * n
    if excluded is not None:
        mate[excluded] = excluded

    def solve():
        free = [v for v in range(n) if mate[v] == -1]
        if not free:
            return True
        # most constrained free site first
        v = min(free, key=lambda x: (sum(mate[w] == -1 for w in adj[x]), x))
        for w in adj[v]:
            if mate[w] == -1:
                mate[v], mate[w] = w, v
                if solve():
                    return True
                mate[v] = mate[w] = -1
        return False

    if not solve():
        return None
    return sorted((v, mate[v]) for v in range(n) if v < mate[v] and v != excluded)


def _edge_colour_search(edges, n_colours, fixed=None, first=1):
    """Backtracking proper edge colouring, edges visited in BFS order."""
    fixed = dict(fixed or {})
    todo = [e for e in edges if e not in fixed]
    # order: BFS over edges sharing a site, lowest id first
    order = []
    if todo:
        remaining = set(todo)
        while remaining:
            seed = min(remaining)
            queue = [seed]
            remaining.discard(seed)
            while queue:
                e = queue.pop(0)
                order.append(e)
                for f in sorted(remaining):
                    if set(e) & set(f):
                        remaining.discard(f)
                        queue.append(f)
    used = {}
    for (a, b), c in fixed.items():
        used.setdefault(a, set()).add(c)
        used.setdefault(b, set()).add(c)
    colours = list(range(first, first + n_colours))
    assign = dict(fixed)

    def go(i):
        if i == len(order):
            return True
        a, b = order[i]
        ua, ub = used.setdefault(a, set()), used.setdefault(b, set())
        for c in colours:
            if c not in ua and c not in ub:
                assign[(a, b)] = c
                ua.add(c)
                ub.add(c)
                if go(i + 1):
                    return True
                ua.discard(c)
                ub.discard(c)
                del assign[(a, b)]
        return False

    if not go(0):
        return None
    return assign


def _matching_square5(patch: KagomePatch) -> dict:
    """Colour-1 near-perfect matching plus a 4-colouring of the rest."""
    n = patch.n_sites
    adj = [list(patch.neighbours(v)) for v in range(n)]
    if n % 2 == 0:
        candidates = [None]
    else:
        candidates = list(range(n))
    for skip in candidates:
        m = _perfect_matching(n, adj, skip)
        if m is None:
            continue
        fixed = {e: 1 for e in m}
        assign = _edge_colour_search(list(patch.edges), 4, fixed, first=2)
        if assign is not None:
            return assign
    raise CoveringError(f"no colour-1 matching of the required size on {patch.name}")


def colour_edges(patch: KagomePatch, scheme: str = "square5") -> EdgeColouring:
    """Proper edge colouring.

    ``square5`` uses the geometric rule of the square-grid embedding when the
    patch has one (colour 1/2 alternate along grid rows, 3 vertical, 4
    anti-diagonal, 5 next-nearest in a row). Other patches get colour 1 as a
    (near-)perfect matching and colours 2..5 by search.
    """
    if scheme == "square5":
        assign = _grid_square5(patch)
        if assign is None or not _colour1_ok(patch, assign):
            assign = _matching_square5(patch)
    elif scheme == "allToAll4":
        assign = _edge_colour_search(list(patch.edges), 4)
        if assign is None:  # pragma: no cover - kagome graphs are class 1
            raise SpecError("no 4-edge-colouring found")
    else:
        raise SpecError(f"unknown colouring scheme {scheme!r}")
    return EdgeColouring(scheme, dict(sorted(assign.items())))


def _colour1_ok(patch, assign) -> bool:
    ones = [e for e, c in assign.items() if c == 1]
    return 2 * len(ones) == patch.n_sites - patch.n_sites % 2


def dimer_covering(patch: KagomePatch) -> DimerCovering:
    """Dimers from the colour-1 class of the square5 colouring."""
    ones = colour_edges(patch, "square5").colour_class(1)
    covered = {v for e in ones for v in e}
    need = patch.n_sites // 2
    if len(ones) != need or len(covered) != 2 * need:
        raise CoveringError(f"colour-1 class on {patch.name} is not a dimer covering")
    free = [v for v in range(patch.n_sites) if v not in covered]
    return DimerCovering(tuple(ones), free[0] if free else None)
