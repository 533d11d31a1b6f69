"""Named verification sweeps behind `zdgq verify` and the acceptance tests.

Each check returns a CheckResult; `detail` keeps enough numbers to audit a
failure without re-running the sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import classify, walk
from .arithmetic import factorize, is_prime, proper_divisors, totient
from .graphs import build_zero_divisor_graph, cartesian_product, make_path, make_star
from .oracles import brute_strong_cospectral
from .partitions import (
    Partition,
    cell_members,
    coarsest_equitable_refinement,
    distance_partition,
)
from .spectral import cluster_eigenvalues, quotient_contains, spectrum_from_quotient


@dataclass
class CheckResult:
    check: str
    passed: bool
    summary: str
    failures: list = field(default_factory=list)


def composites(nmax: int, start: int = 4):
    return (n for n in range(start, nmax + 1) if not is_prime(n))


def check_spectrum_theorem(nmax: int = 300, tol: float = 1e-8) -> CheckResult:
    """Structured spectrum (twin eigenvalues + quotient) against the dense
    eigendecomposition of the adjacency matrix, elementwise after sorting."""
    cap = classify.dense_cap()
    failures = []
    count = 0
    for n in composites(nmax):
        if n - totient(n) - 1 > cap:
            continue
        count += 1
        structured = spectrum_from_quotient(n).values_multiset()
        dense = np.linalg.eigvalsh(build_zero_divisor_graph(n).adj.astype(float))
        if len(structured) != len(dense):
            failures.append((n, "length"))
            continue
        err = float(np.abs(structured - np.sort(dense)).max())
        if err > tol:
            failures.append((n, err))
    return CheckResult(
        "spectrum-thm",
        not failures,
        f"{count} composite n <= {nmax} compared at {tol:g}",
        failures,
    )


def check_quotient_walk(
    nmax: int = 200, times: int = 25, t_hi: float = 20.0, tol: float = 1e-9, seed: int = 7
) -> CheckResult:
    """Full-graph vs quotient-walk amplitudes on every size-2 cell, with the
    cell refined to singletons inside the divisor partition."""
    rng = np.random.default_rng(seed)
    failures = []
    pairs_checked = 0
    for n in composites(nmax):
        cells = classify.candidate_pairs(n)
        if not cells:
            continue
        g = build_zero_divisor_graph(n)
        base = [tuple(cell_members(n, d)) for d in proper_divisors(n)]
        for u, v in cells:
            refined = []
            for cell in base:
                if cell == (u, v):
                    refined.extend([(u,), (v,)])
                else:
                    refined.append(cell)
            part = Partition(refined)
            ts = rng.uniform(0.0, t_hi, size=times)
            worst = 0.0
            for t in ts:
                full = walk.amplitude(g, u, v, float(t))
                quot = walk.quotient_walk_amplitude(g, part, u, v, float(t))
                worst = max(worst, abs(full - quot))
            pairs_checked += 1
            if worst > tol:
                failures.append((n, (u, v), worst))
    return CheckResult(
        "quotient-walk",
        not failures,
        f"{pairs_checked} size-2 cells, n <= {nmax}, {times} times in [0,{t_hi}]",
        failures,
    )


def _family_of(n: int) -> str | None:
    f = factorize(n)
    shape = tuple(sorted(f.exponents, reverse=True))
    if len(f.pairs) == 1 and f.exponents[0] >= 2:
        return "pk"
    if len(f.pairs) == 2 and shape == (1, 1):
        return "pq"
    if len(f.pairs) == 2 and shape == (2, 1):
        return "p2q"
    if len(f.pairs) == 3 and shape == (1, 1, 1):
        return "p1p2p3"
    return None


def check_minus_one(nmax: int = 10_000) -> CheckResult:
    """-1 never in the quotient spectrum for the proved families; the family
    closed form and the exact charpoly evaluation must agree."""
    failures = []
    count = 0
    for n in composites(nmax):
        if _family_of(n) is None:
            continue
        count += 1
        fc = classify.minus_one_family_check(n)
        if fc.exact_value == 0 or not fc.agrees or fc.closed_form_excludes is False:
            failures.append((n, fc.family, fc.closed_form_value, fc.exact_value))
    return CheckResult(
        "minus-one",
        not failures,
        f"{count} family members n <= {nmax}, exact and closed-form evaluation",
        failures,
    )


def check_quartic(pmax: int = 50, qmax: int = 50) -> CheckResult:
    """No quadratic-pair factorization of the degree-4 quotient polynomial
    of n = p^2 q, for all distinct primes in range."""
    failures = []
    count = 0
    for p in range(2, pmax + 1):
        if not is_prime(p):
            continue
        for q in range(2, qmax + 1):
            if p == q or not is_prime(q):
                continue
            count += 1
            report = classify.quartic_factor_search(p, q)
            if report.factorization is not None:
                failures.append((p, q, report.factorization))
    return CheckResult(
        "quartic",
        not failures,
        f"{count} (p, q) pairs with p <= {pmax}, q <= {qmax}",
        failures,
    )


def check_strong_cospectral(nmax: int = 300, tol: float = 1e-8, spot_seed: int = 11) -> CheckResult:
    """Strong cospectrality happens exactly on size-2 divisor cells, for all
    composite n in range with -1 exactly outside the quotient spectrum.

    The sweep vectorizes the projector comparison over all vertex pairs; a
    random sample per n is re-checked against the scalar brute-force oracle.
    """
    rng = np.random.default_rng(spot_seed)
    cap = classify.dense_cap()
    failures = []
    graphs_checked = 0
    for n in composites(nmax):
        if quotient_contains(n, -1):
            continue
        if n - totient(n) - 1 > cap:
            continue
        g = build_zero_divisor_graph(n)
        nv = g.n_vertices
        if nv < 2:
            continue
        graphs_checked += 1
        vals, vecs = g.eigensystem()
        sc = np.ones((nv, nv), dtype=bool)
        for _, _, cols in cluster_eigenvalues(vals):
            block = vecs[:, cols]
            # ||E(e_u -+ e_v)|| equals the row difference/sum norm; forming
            # the difference before squaring keeps true zeros at ~1e-32
            diff = block[:, None, :] - block[None, :, :]
            summ = block[:, None, :] + block[None, :, :]
            ok = ((diff**2).sum(-1) <= tol**2) | ((summ**2).sum(-1) <= tol**2)
            sc &= ok
        np.fill_diagonal(sc, False)

        expected = np.zeros((nv, nv), dtype=bool)
        for u, v in classify.candidate_pairs(n):
            iu, iv = g.index(u), g.index(v)
            expected[iu, iv] = expected[iv, iu] = True
        if not np.array_equal(sc, expected):
            bad = np.argwhere(sc != expected)
            failures.append((n, [(g.labels[i], g.labels[j]) for i, j in bad[:4]]))
            continue
        # spot-check the scalar oracle on a few pairs
        for _ in range(min(4, nv - 1)):
            iu, iv = rng.choice(nv, size=2, replace=False)
            if brute_strong_cospectral(g, g.labels[iu], g.labels[iv]) != bool(sc[iu, iv]):
                failures.append((n, "oracle-mismatch", (g.labels[iu], g.labels[iv])))
    return CheckResult(
        "strong-cospectral",
        not failures,
        f"{graphs_checked} graphs swept, all vertex pairs, n <= {nmax}",
        failures,
    )


def check_counterexample_p2k14() -> CheckResult:
    """The box product of an edge with a 4-star: PST between the two hub
    vertices at pi/2, distance partitions differ, refined partitions agree."""
    g = cartesian_product(make_path(2), make_star(5))
    u, v = (0, 0), (1, 0)
    failures = []
    outcome = walk.fr_test(g, u, v, math.pi / 2)
    if outcome.kind != "pst":
        failures.append(("pst", outcome))
    du, dv = distance_partition(g, u), distance_partition(g, v)
    if du.same_cells(dv):
        failures.append(("distance-partitions-equal",))
    rest_u = [x for x in g.labels if x != u]
    rest_v = [x for x in g.labels if x != v]
    pu = coarsest_equitable_refinement(g, Partition([(u,), rest_u]))
    pv = coarsest_equitable_refinement(g, Partition([(v,), rest_v]))
    if not pu.same_cells(pv):
        failures.append(("refined-partitions-differ", pu, pv))
    leaves0 = frozenset((0, j) for j in range(1, 5))
    leaves1 = frozenset((1, j) for j in range(1, 5))
    want = {frozenset([u]), frozenset([v]), leaves0, leaves1}
    if {frozenset(c) for c in pu.cells} != want:
        failures.append(("refined-partition-shape", pu))
    return CheckResult(
        "counterexample-p2k14",
        not failures,
        "hub pair of P2 box K_{1,4}: PST, distance split, refinement merge",
        failures,
    )


CHECKS = {
    "spectrum-thm": check_spectrum_theorem,
    "quotient-walk": check_quotient_walk,
    "minus-one": check_minus_one,
    "quartic": check_quartic,
    "strong-cospectral": check_strong_cospectral,
    "counterexample-p2k14": check_counterexample_p2k14,
}
