"""Extended m x n grids, their paths and flows, and the path matrix.

Vertices are pairs (i, j) with i the vertical coordinate: sources
r_i = (i, 0), sinks c_j = (0, j), inner vertices [m] x [n]. H-edges go
(i, j-1) -> (i, j) and V-edges go (i, j) -> (i-1, j).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .ncalg import AlgebraElement, TorusPresentation
from .qminor import Cortege, OutOfBounds, QMatrix

__all__ = [
    "ExtendedGrid",
    "Flow",
    "GridPath",
    "diagonal",
    "enumerate_flows",
    "enumerate_paths",
    "flow_weight",
    "path_matrix",
    "path_weight",
    "pressed_corteges",
    "pressed_map",
    "pressed_position",
]

Vertex = tuple[int, int]
Weights = Mapping[Vertex, AlgebraElement]


def grid_commutation(u: Vertex, v: Vertex) -> int:
    """c with w(u) w(v) = q^c w(v) w(u) for the grid torus."""
    (i, j), (i2, j2) = u, v
    if i == i2 and j != j2:
        return 1 if j < j2 else -1
    if j == j2 and i != i2:
        # the lower vertex v satisfies v u = q u v
        return -1 if i > i2 else 1
    return 0


class ExtendedGrid:
    def __init__(self, m: int, n: int):
        if m < 1 or n < 1:
            raise ValueError("grid dimensions must be positive")
        self.m, self.n = m, n
        self.inner = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
        self.sources = [(i, 0) for i in range(1, m + 1)]
        self.sinks = [(0, j) for j in range(1, n + 1)]
        names = [f"w[{i},{j}]" for i, j in self.inner]
        comm = [[grid_commutation(u, v) for v in self.inner] for u in self.inner]
        self.torus = TorusPresentation(names, comm)
        self._paths: dict[tuple[int, int], list[GridPath]] = {}

    def vertex_index(self, v: Vertex) -> int:
        i, j = v
        return (i - 1) * self.n + (j - 1)

    def generator(self, v: Vertex) -> AlgebraElement:
        return self.torus.gen(self.vertex_index(v))

    def default_weights(self) -> dict[Vertex, AlgebraElement]:
        return {v: self.generator(v) for v in self.inner}

    def is_inner(self, v: Vertex) -> bool:
        return 1 <= v[0] <= self.m and 1 <= v[1] <= self.n

    def h_edges(self) -> list[tuple[Vertex, Vertex]]:
        return [((i, j - 1), (i, j)) for i in range(1, self.m + 1) for j in range(1, self.n + 1)]

    def v_edges(self) -> list[tuple[Vertex, Vertex]]:
        return [((i, j), (i - 1, j)) for i in range(1, self.m + 1) for j in range(1, self.n + 1)]


@dataclass(frozen=True)
class GridPath:
    vertices: tuple[Vertex, ...]

    @property
    def source(self) -> Vertex:
        return self.vertices[0]

    @property
    def sink(self) -> Vertex:
        return self.vertices[-1]

    def edges(self):
        return list(zip(self.vertices, self.vertices[1:]))

    def turns(self) -> list[Vertex]:
        """Turn vertices u1, v1, u2, ..., ud (east->south at u, south->east at v)."""
        out = []
        vs = self.vertices
        for a, b, c in zip(vs, vs[1:], vs[2:]):
            east_in = a[0] == b[0]
            east_out = b[0] == c[0]
            if east_in != east_out:
                out.append(b)
        return out

    def to_json(self) -> list[list[int]]:
        return [list(v) for v in self.vertices]


def enumerate_paths(g: ExtendedGrid, i: int, j: int) -> list[GridPath]:
    """All directed paths r_i -> c_j, sorted by vertex sequence."""
    if not (1 <= i <= g.m and 1 <= j <= g.n):
        raise OutOfBounds(f"no path r_{i} -> c_{j} in G_{g.m},{g.n}")
    hit = g._paths.get((i, j))
    if hit is not None:
        return list(hit)
    found: list[GridPath] = []

    def walk(trail: list[Vertex]):
        a, b = trail[-1]
        if a == 0:
            if b == j:
                found.append(GridPath(tuple(trail)))
            return
        if b < g.n:
            walk(trail + [(a, b + 1)])
        if b >= 1:
            walk(trail + [(a - 1, b)])

    walk([(i, 0), (i, 1)])
    found.sort(key=lambda p: p.vertices)
    g._paths[(i, j)] = found
    return list(found)


def _weights(g: ExtendedGrid, weights: Weights | None) -> Weights:
    return g.default_weights() if weights is None else weights


def path_weight(g: ExtendedGrid, p: GridPath, weights: Weights | None = None) -> AlgebraElement:
    """Ordered product of edge weights, cross-checked against the telescoped form."""
    w = _weights(g, weights)
    alg = next(iter(w.values())).alg
    prod = alg.one()
    for u, v in p.edges():
        if u[0] == v[0]:  # H-edge
            prod = prod * (w[v] if u[1] == 0 else w[u].inverse() * w[v])
    turns = p.turns()
    tele = alg.one()
    for k, t in enumerate(turns):
        tele = tele * (w[t] if k % 2 == 0 else w[t].inverse())
    if turns and tele != prod:
        raise ArithmeticError(f"edge product {prod} differs from telescoped {tele}")
    return prod


@dataclass(frozen=True)
class Flow:
    cortege: Cortege
    paths: tuple[GridPath, ...]

    def vertices(self) -> set[Vertex]:
        return {v for p in self.paths for v in p.vertices}

    def to_json(self) -> list[list[list[int]]]:
        return [p.to_json() for p in self.paths]


def enumerate_flows(g: ExtendedGrid, c: Cortege) -> list[Flow]:
    """All vertex-disjoint path systems from R_I to C_J, paths ordered by source.

    Sinks are not pre-matched to sources; every bijection is tried.
    """
    c.check_bounds(g.m, g.n)
    sources = list(c.rows)
    out: list[Flow] = []

    def extend(k: int, used_sinks: frozenset, occupied: frozenset, chosen: list[GridPath]):
        if k == len(sources):
            out.append(Flow(c, tuple(chosen)))
            return
        for j in c.cols:
            if j in used_sinks:
                continue
            for p in enumerate_paths(g, sources[k], j):
                vs = frozenset(p.vertices)
                if vs & occupied:
                    continue
                extend(k + 1, used_sinks | {j}, occupied | vs, chosen + [p])

    extend(0, frozenset(), frozenset(), [])
    return out


def flow_weight(g: ExtendedGrid, f: Flow, weights: Weights | None = None) -> AlgebraElement:
    w = _weights(g, weights)
    alg = next(iter(w.values())).alg
    prod = alg.one()
    for p in f.paths:
        prod = prod * path_weight(g, p, w)
    return prod


def path_matrix(g: ExtendedGrid, weights: Weights | None = None) -> QMatrix:
    w = _weights(g, weights)
    rows = []
    for i in range(1, g.m + 1):
        row = []
        for j in range(1, g.n + 1):
            total = None
            for p in enumerate_paths(g, i, j):
                pw = path_weight(g, p, w)
                total = pw if total is None else total + pw
            row.append(total)
        rows.append(row)
    return QMatrix(rows)


def pressed_map(i: int, j: int, m: int | None = None, n: int | None = None) -> Cortege:
    """The pressed double interval ([i-k+1..i] | [j-k+1..j]) with k = min(i, j)."""
    if i < 1 or j < 1 or (m is not None and i > m) or (n is not None and j > n):
        raise OutOfBounds(f"({i},{j}) is not an inner vertex")
    k = min(i, j)
    return Cortege(tuple(range(i - k + 1, i + 1)), tuple(range(j - k + 1, j + 1)))


def pressed_position(c: Cortege) -> Vertex:
    """Inverse of pressed_map on nonempty pressed corteges."""
    if not c.rows or not c.is_pressed():
        raise ValueError(f"{c} is not a nonempty pressed cortege")
    return c.rows[-1], c.cols[-1]


def pressed_corteges(m: int, n: int) -> list[Cortege]:
    """Nonempty pressed corteges, enumerated as pressed_map over row-major (i, j)."""
    return [pressed_map(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]


def diagonal(i: int, j: int) -> list[Vertex]:
    k = min(i, j)
    return [(i - t, j - t) for t in range(k)]
