"""Zero-divisor graphs over Z_n, their divisor partition, and fixture graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .arithmetic import cell_is_complete, is_prime, proper_divisors, totient


class SimpleGraph:
    """Undirected simple graph: opaque vertex labels over a dense boolean
    adjacency matrix.  Instances are treated as immutable after construction
    (the matrix is write-locked), which makes the lazy eigendecomposition
    cache safe to share."""

    def __init__(self, labels, adj: np.ndarray):
        labels = tuple(labels)
        adj = np.asarray(adj, dtype=bool)
        if adj.shape != (len(labels), len(labels)):
            raise ValueError("adjacency shape does not match label count")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        self.labels = labels
        self.adj = adj
        self.adj.setflags(write=False)
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._eig = None

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not a vertex") from None

    def has_vertex(self, label) -> bool:
        return label in self._index

    def adjacent(self, u, v) -> bool:
        return bool(self.adj[self.index(u), self.index(v)])

    def neighbors(self, u) -> list:
        i = self.index(u)
        return [self.labels[j] for j in np.flatnonzero(self.adj[i])]

    def degree(self, u) -> int:
        return int(self.adj[self.index(u)].sum())

    def eigensystem(self):
        """Cached (eigenvalues ascending, orthonormal eigenvectors) of A."""
        if self._eig is None:
            vals, vecs = np.linalg.eigh(self.adj.astype(float))
            vals.setflags(write=False)
            vecs.setflags(write=False)
            self._eig = (vals, vecs)
        return self._eig

    def __repr__(self) -> str:
        edges = int(self.adj.sum()) // 2
        return f"<{type(self).__name__} {self.n_vertices} vertices, {edges} edges>"


class ZnGraph(SimpleGraph):
    """Gamma(Z_n): vertices are the nonzero zero divisors of Z_n, ascending;
    u ~ v iff u*v = 0 (mod n)."""

    def __init__(self, n: int, labels, adj):
        super().__init__(labels, adj)
        self.n = n


class CellKind(Enum):
    NULL = "null"
    COMPLETE = "complete"


@dataclass(frozen=True)
class DivisorCell:
    divisor: int
    members: tuple[int, ...]
    kind: CellKind

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class DivisorPartition:
    """Cells V_d = {x : gcd(x, n) = d} over the proper divisors of n, in the
    canonical order of arithmetic.proper_divisors."""

    n: int
    cells: tuple[DivisorCell, ...]

    @property
    def divisors(self) -> tuple[int, ...]:
        return tuple(c.divisor for c in self.cells)

    def cell_of(self, x: int) -> DivisorCell:
        d = math.gcd(x, self.n)
        for c in self.cells:
            if c.divisor == d:
                return c
        raise KeyError(f"{x} is not a vertex of Gamma(Z_{self.n})")

    def null_count(self) -> int:
        return sum(1 for c in self.cells if c.kind is CellKind.NULL)


def _require_composite(n: int):
    if n < 4 or is_prime(n):
        raise ValueError(
            f"Gamma(Z_{n}) has no vertices; need composite n >= 4"
        )


def build_zero_divisor_graph(n: int) -> ZnGraph:
    _require_composite(n)
    verts = [x for x in range(1, n) if math.gcd(x, n) > 1]
    m = len(verts)
    pos = {x: i for i, x in enumerate(verts)}
    adj = np.zeros((m, m), dtype=bool)
    # row for x marks the multiples of n/gcd(x, n)
    for x in verts:
        step = n // math.gcd(x, n)
        i = pos[x]
        for y in range(step, n, step):
            if y != x:
                adj[i, pos[y]] = True
    return ZnGraph(n, verts, adj)


def divisor_partition(g: ZnGraph) -> DivisorPartition:
    n = g.n
    by_divisor: dict[int, list[int]] = {}
    for x in g.labels:
        by_divisor.setdefault(math.gcd(x, n), []).append(x)
    cells = []
    for d in proper_divisors(n):
        members = tuple(sorted(by_divisor.pop(d)))
        if len(members) != totient(n // d):
            raise AssertionError(f"cell V_{d} of Gamma(Z_{n}) has wrong size")
        kind = CellKind.COMPLETE if cell_is_complete(n, d) else CellKind.NULL
        cells.append(DivisorCell(d, members, kind))
    if by_divisor:
        raise AssertionError("vertices left over outside divisor cells")
    return DivisorPartition(n, tuple(cells))


def build_upsilon(n: int) -> SimpleGraph:
    """Divisor graph: proper divisors of n, d_i ~ d_j iff n | d_i*d_j."""
    _require_composite(n)
    ds = proper_divisors(n)
    m = len(ds)
    adj = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(i + 1, m):
            if (ds[i] * ds[j]) % n == 0:
                adj[i, j] = adj[j, i] = True
    return SimpleGraph(ds, adj)


def degree_of(x: int, n: int) -> int:
    """Degree of vertex x in Gamma(Z_n): d-1 if n does not divide d^2,
    else d-2, where d = gcd(x, n)."""
    _require_composite(n)
    if not (0 < x < n) or math.gcd(x, n) == 1:
        raise ValueError(f"{x} is not a vertex of Gamma(Z_{n})")
    d = math.gcd(x, n)
    return d - 2 if cell_is_complete(n, d) else d - 1


class TwinKind(Enum):
    NOT_TWINS = "not_twins"
    FALSE_TWINS = "false_twins"
    TRUE_TWINS = "true_twins"


def twin_kind(g: SimpleGraph, u, v) -> TwinKind:
    """Classify u, v by whether N(u)\\{v} = N(v)\\{u}, and adjacency."""
    iu, iv = g.index(u), g.index(v)
    if iu == iv:
        raise ValueError("twin_kind needs two distinct vertices")
    ru = g.adj[iu].copy()
    rv = g.adj[iv].copy()
    ru[iu] = ru[iv] = False
    rv[iu] = rv[iv] = False
    if not np.array_equal(ru, rv):
        return TwinKind.NOT_TWINS
    return TwinKind.TRUE_TWINS if g.adj[iu, iv] else TwinKind.FALSE_TWINS


def cartesian_product(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    """Box product: (u, v) ~ (u', v') iff u = u' and v ~ v', or v = v' and u ~ u'."""
    labels = [(a, b) for a in g.labels for b in h.labels]
    ag = g.adj.astype(np.uint8)
    ah = h.adj.astype(np.uint8)
    adj = np.kron(ag, np.eye(h.n_vertices, dtype=np.uint8)) + np.kron(
        np.eye(g.n_vertices, dtype=np.uint8), ah
    )
    return SimpleGraph(labels, adj.astype(bool))


def make_path(k: int) -> SimpleGraph:
    if k < 1:
        raise ValueError("need k >= 1")
    adj = np.zeros((k, k), dtype=bool)
    for i in range(k - 1):
        adj[i, i + 1] = adj[i + 1, i] = True
    return SimpleGraph(range(k), adj)


def make_complete(k: int) -> SimpleGraph:
    if k < 1:
        raise ValueError("need k >= 1")
    adj = ~np.eye(k, dtype=bool)
    return SimpleGraph(range(k), adj)


def make_complete_bipartite(a: int, b: int) -> SimpleGraph:
    if a < 1 or b < 1:
        raise ValueError("need part sizes >= 1")
    m = a + b
    adj = np.zeros((m, m), dtype=bool)
    adj[:a, a:] = True
    adj[a:, :a] = True
    return SimpleGraph(range(m), adj)


def make_star(k: int) -> SimpleGraph:
    """Star on k vertices == K_{1,k-1}; vertex 0 is the center."""
    if k < 1:
        raise ValueError("need k >= 1")
    if k == 1:
        return SimpleGraph([0], np.zeros((1, 1), dtype=bool))
    return make_complete_bipartite(1, k - 1)
