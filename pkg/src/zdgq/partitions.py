"""Equitable partitions, quotient matrices, and color refinement.

Two construction routes coexist on purpose: quotients computed from an
explicit graph plus partition, and quotients computed straight from the
divisor data of Z_n without materializing the graph.  The second route is
what keeps large-n analysis cheap; the first is what the tests compare it
against.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arithmetic import cell_is_complete, proper_divisors, totient
from .exact import Surd
from .graphs import SimpleGraph


class Partition:
    """Ordered partition of a graph's vertex labels."""

    def __init__(self, cells):
        self.cells = tuple(tuple(c) for c in cells)
        if any(len(c) == 0 for c in self.cells):
            raise ValueError("partition cells must be nonempty")
        flat = [x for c in self.cells for x in c]
        if len(flat) != len(set(flat)):
            raise ValueError("partition cells must be disjoint")
        self._sets = tuple(frozenset(c) for c in self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def covers(self, labels) -> bool:
        return set(labels) == {x for c in self.cells for x in c}

    def same_cells(self, other: "Partition") -> bool:
        """Equality as a set system, ignoring cell order."""
        return set(self._sets) == set(other._sets)

    def cell_containing(self, x):
        for c in self.cells:
            if x in c:
                return c
        raise KeyError(f"{x!r} not in partition")

    def __repr__(self) -> str:
        return "Partition(%s)" % (", ".join("{%s}" % ",".join(map(str, c)) for c in self.cells))


@dataclass(frozen=True)
class QuotientMatrix:
    """Quotient of a graph by an equitable partition.

    kind "standard" holds the integer neighbor counts q_ij; "symmetrized"
    holds the exact surds sqrt(q_ij * q_ji) that make the matrix symmetric.
    """

    kind: str
    entries: tuple[tuple, ...]
    cell_sizes: tuple[int, ...]
    cell_labels: tuple

    @property
    def order(self) -> int:
        return len(self.cell_sizes)

    def numeric(self) -> np.ndarray:
        if self.kind == "symmetrized":
            return np.array([[s.value() for s in row] for row in self.entries])
        return np.array([[float(x) for x in row] for row in self.entries])

    def entry(self, i: int, j: int):
        return self.entries[i][j]

    def label_index(self, label) -> int:
        return self.cell_labels.index(label)


def _neighbor_counts(g: SimpleGraph, part: Partition) -> np.ndarray:
    """counts[v, j] = number of neighbors of vertex v inside cell j."""
    if not part.covers(g.labels):
        raise ValueError("partition does not cover the vertex set")
    k = len(part)
    s = np.zeros((g.n_vertices, k), dtype=np.int64)
    for j, cell in enumerate(part):
        for x in cell:
            s[g.index(x), j] = 1
    return g.adj.astype(np.int64) @ s


def is_equitable(g: SimpleGraph, part: Partition) -> bool:
    """True iff every vertex of cell i has the same neighbor count in cell j."""
    counts = _neighbor_counts(g, part)
    for cell in part:
        rows = counts[[g.index(x) for x in cell]]
        if not (rows == rows[0]).all():
            return False
    return True


def standard_quotient(g: SimpleGraph, part: Partition) -> QuotientMatrix:
    counts = _neighbor_counts(g, part)
    q = []
    for cell in part:
        rows = counts[[g.index(x) for x in cell]]
        if not (rows == rows[0]).all():
            raise ValueError("partition is not equitable")
        q.append(tuple(int(c) for c in rows[0]))
    return QuotientMatrix(
        kind="standard",
        entries=tuple(q),
        cell_sizes=tuple(len(c) for c in part),
        cell_labels=tuple(frozenset(c) for c in part),
    )


def symmetrize(qm: QuotientMatrix) -> QuotientMatrix:
    """Similarity transform D Q D^-1 with D = diag(sqrt(cell sizes)),
    giving the symmetric matrix with entries sqrt(q_ij * q_ji)."""
    if qm.kind != "standard":
        raise ValueError("symmetrize expects a standard quotient")
    k = qm.order
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if i == j:
                row.append(Surd.of(qm.entries[i][i]))
            else:
                row.append(Surd.sqrt_of(qm.entries[i][j] * qm.entries[j][i]))
        rows.append(tuple(row))
    return QuotientMatrix("symmetrized", tuple(rows), qm.cell_sizes, qm.cell_labels)


# --- quotients straight from divisor data --------------------------------


def divisor_quotient(n: int, order=None) -> QuotientMatrix:
    """Standard quotient of Gamma(Z_n) by its divisor partition.

    `order` optionally fixes the divisor sequence (any permutation of the
    proper divisors); the default is the canonical null-first order.
    """
    canonical = proper_divisors(n)
    ds = list(order) if order is not None else canonical
    if sorted(ds) != sorted(canonical):
        raise ValueError("order must be a permutation of the proper divisors")
    sizes = [totient(n // d) for d in ds]
    k = len(ds)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if i == j:
                row.append(sizes[i] - 1 if cell_is_complete(n, ds[i]) else 0)
            elif (ds[i] * ds[j]) % n == 0:
                row.append(sizes[j])
            else:
                row.append(0)
        rows.append(tuple(row))
    return QuotientMatrix("standard", tuple(rows), tuple(sizes), tuple(ds))


def symmetrized_quotient(n: int, order=None) -> QuotientMatrix:
    """Exact symmetrized quotient C of the divisor partition of Gamma(Z_n)."""
    return symmetrize(divisor_quotient(n, order=order))


def cell_members(n: int, d: int) -> tuple[int, ...]:
    """Vertices of Gamma(Z_n) with gcd d: the x = kd with gcd(k, n/d) = 1."""
    m = n // d
    return tuple(d * k for k in range(1, m) if math.gcd(k, m) == 1)


def split_vertex_quotient(n: int, x: int) -> QuotientMatrix:
    """Standard quotient after splitting {x} off its divisor cell.

    The refined partition keeps every other cell intact and replaces V_d
    (d = gcd(x, n)) by {x} and V_d \\ {x}; it is equitable because cell
    members are pairwise twins.  Labels: plain divisors for intact cells,
    ("vertex", x) and ("rest", d) for the split pieces (the rest cell is
    omitted when V_d = {x}).
    """
    d = math.gcd(x, n)
    if d == 1 or not (0 < x < n):
        raise ValueError(f"{x} is not a vertex of Gamma(Z_{n})")
    base = divisor_quotient(n)
    size_d = totient(n // d)
    eta = 1 if cell_is_complete(n, d) else 0

    labels: list = []
    sizes: list[int] = []
    for e, s in zip(base.cell_labels, base.cell_sizes):
        if e == d:
            labels.append(("vertex", x))
            sizes.append(1)
            if size_d > 1:
                labels.append(("rest", d))
                sizes.append(size_d - 1)
        else:
            labels.append(e)
            sizes.append(s)

    def joined(a: int, b: int) -> bool:
        return (a * b) % n == 0

    def div_of(label) -> int:
        return label if isinstance(label, int) else d

    k = len(labels)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            li, lj = labels[i], labels[j]
            di, dj = div_of(li), div_of(lj)
            if di != dj:
                row.append(sizes[j] if joined(di, dj) else 0)
            elif li == lj:
                # diagonal within one piece of V_di
                row.append((sizes[i] - 1) * eta if di == d else
                           (sizes[i] - 1 if cell_is_complete(n, di) else 0))
            else:
                # between the two pieces of the split cell
                row.append(sizes[j] * eta)
        rows.append(tuple(row))
    return QuotientMatrix("standard", tuple(rows), tuple(sizes), tuple(labels))


# --- refinement and distance partitions ----------------------------------


def coarsest_equitable_refinement(g: SimpleGraph, seed: Partition) -> Partition:
    """Coarsest equitable partition refining `seed`, by color refinement.

    Cells split by their multiset of neighbor colors; fresh color ids are
    assigned in lexicographic signature order, so the outcome does not
    depend on iteration order.
    """
    if not seed.covers(g.labels):
        raise ValueError("seed must partition the vertex set")
    color = {}
    for ci, cell in enumerate(seed):
        for x in cell:
            color[g.index(x)] = ci
    nbrs = [np.flatnonzero(g.adj[i]) for i in range(g.n_vertices)]
    for _ in range(g.n_vertices + 1):
        sigs = {}
        for i in range(g.n_vertices):
            cnt = Counter(color[j] for j in nbrs[i])
            sigs[i] = (color[i], tuple(sorted(cnt.items())))
        ids = {sig: k for k, sig in enumerate(sorted(set(sigs.values())))}
        new = {i: ids[sigs[i]] for i in range(g.n_vertices)}
        if all(new[i] == color[i] for i in new) and len(set(new.values())) == len(
            set(color.values())
        ):
            break
        # refinement never merges colors; re-labeling is only cosmetic
        color = new
    else:
        raise AssertionError("color refinement failed to stabilize")
    groups: dict[int, list] = {}
    for i in range(g.n_vertices):
        groups.setdefault(color[i], []).append(i)
    cells = sorted(groups.values(), key=min)
    return Partition([tuple(g.labels[i] for i in cell) for cell in cells])


def distance_partition(g: SimpleGraph, u) -> Partition:
    """BFS layers around u; rejects disconnected graphs."""
    start = g.index(u)
    dist = np.full(g.n_vertices, -1, dtype=int)
    dist[start] = 0
    frontier = [start]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for i in frontier:
            for j in np.flatnonzero(g.adj[i]):
                if dist[j] < 0:
                    dist[j] = d
                    nxt.append(j)
        frontier = nxt
    if (dist < 0).any():
        raise ValueError("distance partition needs a connected graph")
    cells = []
    for k in range(int(dist.max()) + 1):
        cells.append(tuple(g.labels[i] for i in np.flatnonzero(dist == k)))
    return Partition(cells)


# --- exact identities used by the tests -----------------------------------


def characteristic_matrix(g: SimpleGraph, part: Partition) -> np.ndarray:
    s = np.zeros((g.n_vertices, len(part)), dtype=np.int64)
    for j, cell in enumerate(part):
        for x in cell:
            s[g.index(x), j] = 1
    return s


def quotient_identity_holds(g: SimpleGraph, part: Partition, qm: QuotientMatrix) -> bool:
    """AS = SQ, checked in integer arithmetic."""
    s = characteristic_matrix(g, part)
    a = g.adj.astype(np.int64)
    q = np.array(qm.entries, dtype=np.int64)
    return np.array_equal(a @ s, s @ q)


def projector_commutes(g: SimpleGraph, part: Partition) -> bool:
    """[A, S diag(1/|V_j|) S^T] = 0 in exact rationals for equitable parts.

    S diag(1/|V_j|) S^T is the orthogonal projector onto vectors constant on
    cells (the rational-entry form of the normalized characteristic matrix
    identities).
    """
    s = characteristic_matrix(g, part)
    sizes = [len(c) for c in part.cells]
    p = [
        [
            sum(
                Fraction(int(s[u, j]) * int(s[v, j]), sizes[j])
                for j in range(len(part))
            )
            for v in range(g.n_vertices)
        ]
        for u in range(g.n_vertices)
    ]
    a = g.adj.astype(int)
    nv = g.n_vertices
    for i in range(nv):
        for j in range(nv):
            ap = sum(Fraction(int(a[i, k])) * p[k][j] for k in range(nv))
            pa = sum(p[i][k] * Fraction(int(a[k, j])) for k in range(nv))
            if ap != pa:
                return False
    return True
