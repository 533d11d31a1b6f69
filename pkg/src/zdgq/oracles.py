"""Brute-force oracles for the test suite and the `verify` CLI checks.

These deliberately re-derive everything from first principles (series
expansion, raw projector comparison, companion-matrix roots) instead of
calling into the modules they are used to check.
"""

from __future__ import annotations

import math

import numpy as np

from .graphs import SimpleGraph


def expm_series(a: np.ndarray, t: float, terms: int) -> np.ndarray:
    """Taylor-series exp(i t A), with a hard error when the tail bound
    sum_{k>=terms} (||A|| t)^k / k! cannot be certified below 1e-12."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    norm = float(np.abs(a).sum(axis=1).max()) if n else 0.0  # bounds the spectral norm
    x = norm * abs(t)
    if x >= terms + 1:
        raise ValueError("series truncation too short for the tail bound")
    if x > 0.0:
        # geometric tail bound, in logs to survive large x**terms
        log_tail = (
            terms * math.log(x)
            - math.lgamma(terms + 1)
            - math.log(1.0 - x / (terms + 1))
        )
        if log_tail >= math.log(1e-12):
            raise ValueError(f"series tail bound exp({log_tail:.1f}) not below 1e-12")
    out = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, terms):
        term = term @ a * (1j * t / k)
        out = out + term
    return out


def brute_strong_cospectral(g: SimpleGraph, u, v, tol: float = 1e-8) -> bool:
    """Direct projector comparison: E_j e_u = +/- E_j e_v for every j.

    Projectors are rebuilt here from a fresh eigendecomposition; nothing is
    shared with the spectral module.
    """
    iu, iv = g.index(u), g.index(v)
    if iu == iv:
        raise ValueError("need two distinct vertices")
    vals, vecs = np.linalg.eigh(g.adj.astype(float))
    gap = 1e-7 * max(1.0, float(np.abs(vals).max()))
    start = 0
    nv = len(vals)
    for i in range(1, nv + 1):
        if i < nv and vals[i] - vals[i - 1] <= gap:
            continue
        block = vecs[:, start:i]
        pu = block @ block[iu]
        pv = block @ block[iv]
        if np.linalg.norm(pu - pv) > tol and np.linalg.norm(pu + pv) > tol:
            return False
        start = i
    return True


def brute_quartic_roots(coeffs) -> np.ndarray:
    """Roots of a monic quartic via companion-matrix eigenvalues.

    coeffs ascending: [c0, c1, c2, c3, 1].
    """
    coeffs = list(coeffs)
    if len(coeffs) != 5 or coeffs[-1] != 1:
        raise ValueError("need a monic quartic, ascending coefficients")
    comp = np.zeros((4, 4), dtype=float)
    comp[1:, :3] = np.eye(3)
    comp[:, 3] = [-c for c in coeffs[:4]]
    return np.sort_complex(np.linalg.eigvals(comp))


def brute_degree(n: int, x: int) -> int:
    """Neighbor count of x in Gamma(Z_n) by scanning all residues."""
    return sum(
        1
        for y in range(1, n)
        if y != x and math.gcd(y, n) > 1 and (x * y) % n == 0
    )
