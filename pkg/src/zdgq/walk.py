"""Continuous-time quantum walk engine: H(t) = exp(i t A).

Everything is numeric and goes through the cached dense eigendecomposition
of the graph.  Sign convention is exp(+itA); the matrix exponential with the
opposite sign is its entrywise conjugate, so all moduli agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import SimpleGraph
from .partitions import Partition, standard_quotient, symmetrize

AMP_THRESHOLD = 1e-6   # slack on |amplitude| = 1 decisions
FR_THRESHOLD = 1e-6    # slack on the probability residual 1 - |a|^2 - |b|^2


@dataclass(frozen=True)
class TransitionMatrix:
    t: float
    matrix: np.ndarray


def transition_matrix(g: SimpleGraph, t: float) -> TransitionMatrix:
    vals, vecs = g.eigensystem()
    h = (vecs * np.exp(1j * t * vals)) @ vecs.T
    return TransitionMatrix(t=float(t), matrix=h)


def amplitude(g: SimpleGraph, u, v, t: float) -> complex:
    """H(t)_{u,v} without forming the full matrix."""
    vals, vecs = g.eigensystem()
    iu, iv = g.index(u), g.index(v)
    return complex(np.sum(np.exp(1j * t * vals) * vecs[iu] * vecs[iv]))


def amplitude_series(g: SimpleGraph, u, v, ts: np.ndarray) -> np.ndarray:
    """H(t)_{u,v} over a vector of times (vectorized over t)."""
    vals, vecs = g.eigensystem()
    w = vecs[g.index(u)] * vecs[g.index(v)]
    return np.exp(1j * np.multiply.outer(np.asarray(ts, float), vals)) @ w


@dataclass(frozen=True)
class FrOutcome:
    """Outcome of a fractional-revival test at one time.

    kind: "pst" (|beta| ~ 1), "periodic" (|alpha| ~ 1), "proper_fr" (both
    amplitudes bounded away from 0), or "no_fr" (probability leaks outside
    the pair).  residual = |1 - |alpha|^2 - |beta|^2|.
    """

    kind: str
    alpha: complex
    beta: complex
    residual: float


def classify_amplitudes(alpha: complex, beta: complex) -> FrOutcome:
    residual = abs(1.0 - abs(alpha) ** 2 - abs(beta) ** 2)
    if residual > FR_THRESHOLD:
        kind = "no_fr"
    elif abs(beta) >= 1.0 - AMP_THRESHOLD:
        kind = "pst"
    elif abs(alpha) >= 1.0 - AMP_THRESHOLD:
        kind = "periodic"
    elif abs(alpha) > AMP_THRESHOLD and abs(beta) > AMP_THRESHOLD:
        kind = "proper_fr"
    else:
        kind = "no_fr"
    return FrOutcome(kind=kind, alpha=alpha, beta=beta, residual=residual)


def fr_test(g: SimpleGraph, u, v, t: float) -> FrOutcome:
    """Test for (alpha, beta)-fractional revival from u to v at time t."""
    if g.index(u) == g.index(v):
        raise ValueError("need two distinct vertices")
    return classify_amplitudes(amplitude(g, u, u, t), amplitude(g, u, v, t))


def quotient_walk_amplitude(g: SimpleGraph, part: Partition, u, v, t: float) -> complex:
    """Walk amplitude between u and v computed on the symmetrized quotient.

    Requires {u} and {v} to be singleton cells of the equitable partition;
    the value then equals the full-graph amplitude H(t)_{u,v}.
    """
    cells = list(part.cells)
    try:
        iu = cells.index((u,))
        iv = cells.index((v,))
    except ValueError:
        raise ValueError("u and v must be singleton cells of the partition") from None
    qm = symmetrize(standard_quotient(g, part))
    vals, vecs = np.linalg.eigh(qm.numeric())
    return complex(np.sum(np.exp(1j * t * vals) * vecs[iu] * vecs[iv]))


def _refine_minimum(f, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Golden-section minimization of f on [lo, hi]."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2.0


def periodicity_search(g: SimpleGraph, u, t_max: float, grid_step: float | None = None) -> list[float]:
    """Times t in (0, t_max] where |H(t)_{u,u}| >= 1 - AMP_THRESHOLD.

    Grid scan plus golden-section refinement of 1 - |H(t)_{u,u}| around the
    promising grid points.  A verification aid: analytic candidate times are
    always checked directly by fr_test.
    """
    vals, vecs = g.eigensystem()
    iu = g.index(u)
    w = vecs[iu] * vecs[iu]
    lam_max = float(np.abs(vals).max()) or 1.0
    if grid_step is None:
        grid_step = 1e-3 * 2.0 * np.pi / lam_max

    def loss(t):
        return 1.0 - np.abs(np.exp(1j * np.multiply.outer(np.asarray(t, float), vals)) @ w)

    ts = np.arange(grid_step, t_max + grid_step, grid_step)
    vals_on_grid = loss(ts)
    out: list[float] = []
    # a sub-0.05 run always brackets the local minimum of the loss
    for idx in _run_argmins(np.flatnonzero(vals_on_grid < 0.05), vals_on_grid):
        lo = ts[max(idx - 1, 0)]
        hi = ts[min(idx + 1, len(ts) - 1)]
        t_star = _refine_minimum(lambda t: float(loss(t)), lo, hi)
        if float(loss(t_star)) <= AMP_THRESHOLD and t_star > 1e-9:
            if not out or t_star - out[-1] > 10 * grid_step:
                out.append(float(t_star))
    return out


def _run_argmins(indices: np.ndarray, values: np.ndarray) -> list[int]:
    """Index of the smallest value inside each run of consecutive indices."""
    if len(indices) == 0:
        return []
    runs = []
    run = [int(indices[0])]
    for i in indices[1:]:
        if int(i) == run[-1] + 1:
            run.append(int(i))
        else:
            runs.append(run)
            run = [int(i)]
    runs.append(run)
    return [min(r, key=lambda k: values[k]) for r in runs]
