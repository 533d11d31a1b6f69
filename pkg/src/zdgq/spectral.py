"""Spectra, projectors, eigenvalue supports, and exact eigenvalue tagging.

The numeric backend is a dense symmetric eigendecomposition; the exact
backend is the integer characteristic polynomial of the (standard) quotient
matrix.  Eigenvalues get tagged as exact integers, exact quadratics
(a + b*sqrt(D))/2, or numeric roots of an integer factor with no linear or
quadratic divisors -- the latter can never satisfy the quadratic-form
hypotheses used by the transfer classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arithmetic import cell_is_complete, totient
from .exact import charpoly, poly_divmod, poly_eval, squarefree_part
from .graphs import SimpleGraph
from .partitions import (
    QuotientMatrix,
    cell_members,
    divisor_quotient,
    proper_divisors,
    split_vertex_quotient,
    symmetrize,
)

SUPPORT_THRESHOLD = 1e-8     # ||E_j e_u|| above this counts as "in support"
CLUSTER_REL_TOL = 1e-7       # relative eigenvalue gap that separates clusters
MATCH_TOL = 1e-6             # numeric-to-exact eigenvalue matching


# --- eigenvalue representations -------------------------------------------


@dataclass(frozen=True)
class ExactInteger:
    z: int

    def value(self) -> float:
        return float(self.z)

    def __str__(self) -> str:
        return str(self.z)


@dataclass(frozen=True)
class ExactQuadratic:
    """(a + b*sqrt(delta)) / 2 with delta squarefree > 1 and b != 0."""

    a: int
    b: int
    delta: int

    def value(self) -> float:
        return (self.a + self.b * math.sqrt(self.delta)) / 2.0

    def __str__(self) -> str:
        return f"({self.a}{self.b:+d}*sqrt({self.delta}))/2"


@dataclass(frozen=True)
class NumericRoot:
    """Root of an integer polynomial factor with no degree <= 2 divisors."""

    x: float
    factor: tuple[int, ...]

    def value(self) -> float:
        return self.x

    def __str__(self) -> str:
        return f"~{self.x:.12g}"


EigenvalueRepr = ExactInteger | ExactQuadratic | NumericRoot


def is_exact(r: EigenvalueRepr) -> bool:
    return not isinstance(r, NumericRoot)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicities, ascending by value."""

    entries: tuple[tuple[EigenvalueRepr, int], ...]

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def values_multiset(self) -> np.ndarray:
        out = []
        for r, m in self.entries:
            out.extend([r.value()] * m)
        return np.sort(np.array(out))

    def multiplicity_of_integer(self, z: int) -> int:
        for r, m in self.entries:
            if isinstance(r, ExactInteger) and r.z == z:
                return m
        return 0


# --- numeric backend -------------------------------------------------------


def eigendecompose(m) -> tuple[np.ndarray, np.ndarray]:
    """Dense symmetric eigendecomposition with a verified reconstruction.

    Returns (eigenvalues ascending, orthonormal eigenvectors as columns).
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("need a square matrix")
    scale = max(1.0, float(np.abs(m).max()) if m.size else 0.0)
    if m.size and float(np.abs(m - m.T).max()) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    vals, vecs = np.linalg.eigh(m)
    recon = (vecs * vals) @ vecs.T
    if m.size and float(np.abs(recon - m).max()) > 1e-9 * scale:
        raise AssertionError("eigendecomposition reconstruction out of tolerance")
    return vals, vecs


def cluster_eigenvalues(vals: np.ndarray) -> list[tuple[float, int, slice]]:
    """Group ascending eigenvalues into clusters separated by the relative
    gap tolerance; returns (center, multiplicity, index slice) per cluster."""
    if len(vals) == 0:
        return []
    scale = max(1.0, float(np.abs(vals).max()))
    tol = CLUSTER_REL_TOL * scale
    out = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > tol:
            chunk = vals[start:i]
            out.append((float(chunk.mean()), i - start, slice(start, i)))
            start = i
    return out


def spectral_projectors(g_or_matrix) -> list[tuple[float, np.ndarray]]:
    """(eigenvalue, orthogonal projector) per eigenvalue cluster."""
    m = g_or_matrix.adj.astype(float) if isinstance(g_or_matrix, SimpleGraph) else g_or_matrix
    vals, vecs = eigendecompose(m)
    out = []
    for center, _, cols in cluster_eigenvalues(vals):
        block = vecs[:, cols]
        out.append((center, block @ block.T))
    return out


def eigenvalue_support(g: SimpleGraph, u) -> list[float]:
    """Eigenvalues whose projector does not annihilate e_u."""
    vals, vecs = g.eigensystem()
    iu = g.index(u)
    out = []
    for center, _, cols in cluster_eigenvalues(vals):
        if np.linalg.norm(vecs[iu, cols]) > SUPPORT_THRESHOLD:
            out.append(center)
    return out


@dataclass(frozen=True)
class SupportDecomposition:
    """Common eigenvalue support of a strongly cospectral pair, split into
    the sign classes E_j e_u = +/- E_j e_v."""

    u: int
    v: int
    plus: tuple[EigenvalueRepr, ...]   # descending by value
    minus: tuple[EigenvalueRepr, ...]
    theta: int                         # twin eigenvalue: 0 or -1

    @property
    def support(self) -> tuple[EigenvalueRepr, ...]:
        return self.plus + self.minus


def strong_cospectral_decomposition(g: SimpleGraph, u, v):
    """Numeric +/- projector split for (u, v); None when the pair is not
    strongly cospectral.  Eigenvalues come back as NumericRoot entries."""
    iu, iv = g.index(u), g.index(v)
    if iu == iv:
        raise ValueError("need two distinct vertices")
    vals, vecs = g.eigensystem()
    plus, minus = [], []
    for center, _, cols in cluster_eigenvalues(vals):
        ru = vecs[iu, cols]
        rv = vecs[iv, cols]
        nu, nv = np.linalg.norm(ru), np.linalg.norm(rv)
        if nu <= SUPPORT_THRESHOLD and nv <= SUPPORT_THRESHOLD:
            continue
        if np.linalg.norm(ru - rv) <= SUPPORT_THRESHOLD:
            plus.append(center)
        elif np.linalg.norm(ru + rv) <= SUPPORT_THRESHOLD:
            minus.append(center)
        else:
            return None
    theta_guess = min(minus, key=abs) if minus else 0
    return SupportDecomposition(
        u=u,
        v=v,
        plus=tuple(NumericRoot(x, ()) for x in sorted(plus, reverse=True)),
        minus=tuple(NumericRoot(x, ()) for x in sorted(minus, reverse=True)),
        theta=int(round(theta_guess)),
    )


# --- exact characteristic polynomial and factor tagging --------------------


def charpoly_exact(m) -> list[int]:
    """det(xI - M) with exact arithmetic, ascending coefficients.

    Accepts a standard QuotientMatrix, a nested list, or an integer ndarray.
    """
    if isinstance(m, QuotientMatrix):
        if m.kind != "standard":
            raise ValueError(
                "charpoly_exact wants the standard quotient; it shares its "
                "characteristic polynomial with the symmetrized one"
            )
        rows = [list(r) for r in m.entries]
    elif isinstance(m, np.ndarray):
        if not np.issubdtype(m.dtype, np.integer):
            raise ValueError("ndarray input must be integer; use nested lists for rationals")
        rows = [[int(x) for x in row] for row in m]
    else:
        rows = [list(r) for r in m]
    return charpoly(rows)


@dataclass(frozen=True)
class FactoredCharpoly:
    integer_roots: tuple[tuple[int, int], ...]        # (root, multiplicity)
    quadratics: tuple[tuple[tuple[int, int], int], ...]  # ((a, b) of x^2+ax+b, mult)
    remainder: tuple[int, ...]                        # factor with no deg<=2 divisors

    def distinct_reprs(self) -> list[tuple[EigenvalueRepr, int]]:
        out: list[tuple[EigenvalueRepr, int]] = []
        for z, m in self.integer_roots:
            out.append((ExactInteger(z), m))
        for (a, b), m in self.quadratics:
            disc = a * a - 4 * b
            s, delta = squarefree_part(disc)
            out.append((ExactQuadratic(-a, s, delta), m))
            out.append((ExactQuadratic(-a, -s, delta), m))
        if len(self.remainder) > 1:
            roots = np.roots(list(reversed(self.remainder))).real
            for center, mult, _ in cluster_eigenvalues(np.sort(roots)):
                out.append((NumericRoot(center, self.remainder), mult))
        return out


def factor_charpoly(coeffs: list[int], guide_values) -> FactoredCharpoly:
    """Split a monic integer polynomial into integer roots, irreducible
    integer quadratics, and a leftover factor.

    `guide_values` must contain every real root (numeric eigenvalues of the
    source symmetric matrix); candidates are rounded sums/products of root
    pairs and every accepted factor is verified by exact division, so a
    wrong candidate can never be accepted.
    """
    work = [int(c) for c in coeffs]
    if not work or work[-1] != 1:
        raise ValueError("need a monic integer polynomial")
    guides = sorted(float(v) for v in guide_values)
    if len(guides) != len(work) - 1:
        raise ValueError("guide count must equal the polynomial degree")

    int_roots: dict[int, int] = {}
    cands = sorted({round(v) for v in guides if abs(v - round(v)) < 0.45})
    for r in cands:
        while len(work) > 1 and poly_eval(work, r) == 0:
            int_roots[r] = int_roots.get(r, 0) + 1
            work, rem = poly_divmod(work, [-r, 1])
            assert not rem
            work = [int(c) for c in work]

    quads: dict[tuple[int, int], int] = {}
    pair_cands = set()
    for i in range(len(guides)):
        for j in range(i + 1, len(guides)):
            sa, sb = guides[i] + guides[j], guides[i] * guides[j]
            if abs(sa - round(sa)) < 0.45 and abs(sb - round(sb)) < 0.45:
                pair_cands.add((-round(sa), round(sb)))
    for a, b in sorted(pair_cands):
        if a * a - 4 * b <= 0:
            continue
        den = [b, a, 1]
        while len(work) > 2:
            quot, rem = poly_divmod(work, den)
            if rem:
                break
            work = [int(c) for c in quot]
            if _is_perfect_square(a * a - 4 * b):
                s = math.isqrt(a * a - 4 * b)
                for r in ((-a + s) // 2, (-a - s) // 2):
                    int_roots[r] = int_roots.get(r, 0) + 1
            else:
                quads[(a, b)] = quads.get((a, b), 0) + 1

    if len(work) - 1 in (1, 2):
        raise AssertionError(
            "factor extraction left a low-degree remainder; numeric guides "
            "were not accurate enough"
        )
    return FactoredCharpoly(
        integer_roots=tuple(sorted(int_roots.items())),
        quadratics=tuple(sorted(quads.items())),
        remainder=tuple(work),
    )


def _is_perfect_square(m: int) -> bool:
    if m < 0:
        return False
    r = math.isqrt(m)
    return r * r == m


# --- structured spectrum of Gamma(Z_n) -------------------------------------


def quotient_contains(n: int, theta: int) -> bool:
    """Exact membership of theta in the divisor-quotient spectrum."""
    if theta not in (0, -1):
        raise ValueError("theta must be 0 or -1")
    return poly_eval(charpoly_exact(divisor_quotient(n)), theta) == 0


def twin_multiplicities(n: int) -> tuple[int, int]:
    """(m1, m2): multiplicities of 0 and -1 contributed by the cells."""
    m1 = m2 = 0
    for d in proper_divisors(n):
        size = totient(n // d)
        if cell_is_complete(n, d):
            m2 += size - 1
        else:
            m1 += size - 1
    return m1, m2


def quotient_spectrum_reprs(qm: QuotientMatrix) -> list[tuple[EigenvalueRepr, int]]:
    """Tagged eigenvalues (with multiplicity) of a standard quotient,
    cross-checked against the numeric spectrum of its symmetrization."""
    coeffs = charpoly_exact(qm)
    numeric = eigendecompose(symmetrize(qm).numeric())[0]
    factored = factor_charpoly(coeffs, numeric)
    reprs = factored.distinct_reprs()
    approx = np.sort(np.concatenate([[r.value()] * m for r, m in reprs]))
    scale = max(1.0, float(np.abs(numeric).max()) if len(numeric) else 1.0)
    if len(numeric) and float(np.abs(approx - numeric).max()) > MATCH_TOL * scale:
        raise AssertionError("exact factorization disagrees with numeric spectrum")
    return sorted(reprs, key=lambda rm: rm[0].value())


def assemble_spectrum(quotient_reprs, m1: int, m2: int) -> Spectrum:
    """Merge the twin eigenvalues 0^m1 and -1^m2 into the quotient spectrum,
    combining multiplicities on exact collisions."""
    entries: list[tuple[EigenvalueRepr, int]] = []
    for r, m in quotient_reprs:
        if isinstance(r, ExactInteger) and r.z == 0 and m1 > 0:
            m, m1 = m + m1, 0
        if isinstance(r, ExactInteger) and r.z == -1 and m2 > 0:
            m, m2 = m + m2, 0
        entries.append((r, m))
    if m1 > 0:
        entries.append((ExactInteger(0), m1))
    if m2 > 0:
        entries.append((ExactInteger(-1), m2))
    entries.sort(key=lambda rm: rm[0].value())
    return Spectrum(tuple(entries))


def spectrum_from_quotient(n: int) -> Spectrum:
    """Adjacency spectrum of Gamma(Z_n) assembled from cell data: the twin
    eigenvalues 0^m1 and -1^m2 plus the symmetrized-quotient spectrum."""
    m1, m2 = twin_multiplicities(n)
    return assemble_spectrum(quotient_spectrum_reprs(divisor_quotient(n)), m1, m2)


# --- exact supports via the refined quotient -------------------------------


def _quotient_support_split(qm: QuotientMatrix, label_u, label_v):
    """Support and +/- split of two singleton cells, on the symmetrized
    quotient; exact reprs come from the quotient charpoly."""
    iu = qm.label_index(label_u)
    iv = qm.label_index(label_v) if label_v is not None else None
    if qm.cell_sizes[iu] != 1 or (iv is not None and qm.cell_sizes[iv] != 1):
        raise ValueError("support split needs singleton cells")
    cn = symmetrize(qm).numeric()
    vals, vecs = eigendecompose(cn)
    reprs = quotient_spectrum_reprs(qm)
    scale = max(1.0, float(np.abs(vals).max()) if len(vals) else 1.0)

    def repr_for(center: float) -> EigenvalueRepr:
        best = min(reprs, key=lambda rm: abs(rm[0].value() - center))
        if abs(best[0].value() - center) > MATCH_TOL * scale:
            raise AssertionError("numeric eigenvalue failed to match an exact root")
        return best[0]

    plus, minus, support_u = [], [], []
    for center, _, cols in cluster_eigenvalues(vals):
        ru = vecs[iu, cols]
        if np.linalg.norm(ru) > SUPPORT_THRESHOLD:
            support_u.append(repr_for(center))
        if iv is None:
            continue
        rv = vecs[iv, cols]
        if np.linalg.norm(ru) <= SUPPORT_THRESHOLD and np.linalg.norm(rv) <= SUPPORT_THRESHOLD:
            continue
        if np.linalg.norm(ru - rv) <= SUPPORT_THRESHOLD:
            plus.append(repr_for(center))
        elif np.linalg.norm(ru + rv) <= SUPPORT_THRESHOLD:
            minus.append(repr_for(center))
        else:
            return support_u, None, None
    return support_u, plus, minus


def vertex_support_exact(n: int, x: int) -> list[EigenvalueRepr]:
    """Eigenvalue support of vertex x in Gamma(Z_n), computed exactly on the
    quotient refined at x (valid because x sits in a singleton cell there)."""
    qm = split_vertex_quotient(n, x)
    support, _, _ = _quotient_support_split(qm, ("vertex", x), None)
    return sorted(support, key=lambda r: -r.value())


def pair_support_exact(n: int, d: int) -> SupportDecomposition:
    """Exact support decomposition for the size-2 divisor cell V_d = {u, v}.

    The pair is strongly cospectral by the cell criterion, so the split is
    total; the twin eigenvalue (-1 for clique cells, 0 otherwise) must come
    out as the whole minus side, and this is asserted.
    """
    members = cell_members(n, d)
    if len(members) != 2:
        raise ValueError(f"cell V_{d} of Gamma(Z_{n}) does not have size 2")
    u, v = members
    theta = -1 if cell_is_complete(n, d) else 0
    qm = split_vertex_quotient(n, u)
    _, plus, minus = _quotient_support_split(qm, ("vertex", u), ("rest", d))
    if plus is None:
        raise AssertionError("size-2 divisor cell failed the +/- support split")
    if [r.value() for r in minus] != [float(theta)] or not all(
        isinstance(r, ExactInteger) and r.z == theta for r in minus
    ):
        raise AssertionError("minus support is not exactly the twin eigenvalue")
    return SupportDecomposition(
        u=u,
        v=v,
        plus=tuple(sorted(plus, key=lambda r: -r.value())),
        minus=tuple(minus),
        theta=theta,
    )
