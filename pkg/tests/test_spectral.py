import math

import numpy as np
import pytest

from zdgq.arithmetic import is_prime, proper_divisors, totient
from zdgq.exact import poly_eval
from zdgq.graphs import build_zero_divisor_graph, divisor_partition, make_path
from zdgq.partitions import Partition, cell_members, divisor_quotient, standard_quotient
from zdgq.spectral import (
    ExactInteger,
    ExactQuadratic,
    NumericRoot,
    charpoly_exact,
    cluster_eigenvalues,
    eigendecompose,
    eigenvalue_support,
    factor_charpoly,
    pair_support_exact,
    quotient_contains,
    spectral_projectors,
    spectrum_from_quotient,
    strong_cospectral_decomposition,
    vertex_support_exact,
)


# --- numeric backend --------------------------------------------------------


def test_eigendecompose_p3():
    vals, vecs = eigendecompose(make_path(3).adj.astype(float))
    assert np.allclose(vals, [-np.sqrt(2), 0, np.sqrt(2)], atol=1e-9)
    assert np.allclose(vecs @ vecs.T, np.eye(3), atol=1e-9)


def test_eigendecompose_k24():
    from zdgq.graphs import make_complete_bipartite

    vals, _ = eigendecompose(make_complete_bipartite(2, 4).adj.astype(float))
    assert np.allclose(vals, [-np.sqrt(8), 0, 0, 0, 0, np.sqrt(8)], atol=1e-9)


def test_eigendecompose_rejects_asymmetric():
    with pytest.raises(ValueError):
        eigendecompose(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eigendecompose_matches_exact_charpoly_for_quotient():
    from zdgq.partitions import symmetrize

    q = divisor_quotient(18)
    vals, _ = eigendecompose(symmetrize(q).numeric())
    coeffs = charpoly_exact(q)
    for lam in vals:
        assert abs(poly_eval([float(c) for c in coeffs], lam)) < 1e-9 * 10


def test_cluster_eigenvalues_merges_close_values():
    vals = np.array([0.0, 0.0, 1.0, 1.0 + 1e-12, 2.0])
    clusters = cluster_eigenvalues(vals)
    assert [(round(c, 6), m) for c, m, _ in clusters] == [(0.0, 2), (1.0, 2), (2.0, 1)]


# --- exact charpoly and factor tagging --------------------------------------


def test_charpoly_exact_examples():
    assert charpoly_exact(divisor_quotient(4)) == [0, 1]  # x
    p3 = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    assert charpoly_exact(p3) == [0, -2, 0, 1]


@pytest.mark.parametrize("p,q", [(3, 2), (2, 3), (5, 3), (7, 2), (3, 11)])
def test_charpoly_of_p2q_quotient_matches_quartic_formula(p, q):
    n = p * p * q
    big_n, big_k = p - 2, p * (p - 1) * (q - 1)
    want = [
        p * (p - 1) ** 3 * (q - 1) ** 2,
        big_k * big_n,
        -2 * big_k,
        -big_n,
        1,
    ]
    assert charpoly_exact(divisor_quotient(n)) == want


def test_factor_charpoly_tags_integer_and_quadratic_roots():
    # (x - 4)(x + 3) = x^2 - x - 12 with guides from the true roots
    f = factor_charpoly([-12, -1, 1], [4.0, -3.0])
    assert f.integer_roots == ((-3, 1), (4, 1))
    assert f.quadratics == ()
    # x^2 - 12 is irreducible, tagged as the quadratic (0 +/- 4 sqrt3)/2
    f = factor_charpoly([-12, 0, 1], [math.sqrt(12), -math.sqrt(12)])
    assert f.quadratics == (((0, -12), 1),)
    reprs = dict(f.distinct_reprs())
    assert ExactQuadratic(0, 4, 3) in reprs and ExactQuadratic(0, -4, 3) in reprs


def test_factor_charpoly_leaves_irreducible_quartic():
    coeffs = charpoly_exact(divisor_quotient(18))
    guides = np.linalg.eigvalsh(
        np.array([[0, np.sqrt(6), 0, 0], [np.sqrt(6), 0, np.sqrt(2), 0],
                  [0, np.sqrt(2), 1, 2], [0, 0, 2, 0]])
    )
    f = factor_charpoly(coeffs, guides)
    assert f.integer_roots == () and f.quadratics == ()
    assert list(f.remainder) == coeffs


def test_quotient_contains_examples():
    assert quotient_contains(4, 0)
    assert not quotient_contains(18, -1)
    for p, q in ((2, 3), (3, 2), (5, 2), (3, 7)):
        assert not quotient_contains(p * p * q, -1)
    for n in (30, 42, 105):
        assert not quotient_contains(n, -1)


def test_quotient_eigenvalues_nonzero_for_n_not_4():
    """Constant coefficient of the quotient charpoly never vanishes except
    at n = 4.  Checked through the full charpoly on a prefix, then through
    the fraction-free determinant (the same coefficient up to sign) for the
    rest of the 10^4 range."""
    from zdgq.exact import det_bareiss

    for n in range(4, 1001):
        if is_prime(n):
            continue
        coeffs = charpoly_exact(divisor_quotient(n))
        q = divisor_quotient(n)
        det = det_bareiss([list(r) for r in q.entries])
        assert coeffs[0] == (-1) ** q.order * det
        assert (coeffs[0] == 0) == (n == 4), n
    for n in range(1001, 10_001):
        if is_prime(n):
            continue
        q = divisor_quotient(n)
        assert det_bareiss([list(r) for r in q.entries]) != 0, n


# --- structured spectrum ----------------------------------------------------


def test_spectrum_z18_structure():
    spec = spectrum_from_quotient(18)
    assert spec.multiplicity_of_integer(0) == 6
    assert spec.multiplicity_of_integer(-1) == 1
    assert spec.total == 11
    numerics = [r for r, _ in spec.entries if isinstance(r, NumericRoot)]
    assert len(numerics) == 4


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_spectrum_p_squared(p):
    spec = spectrum_from_quotient(p * p)
    if p == 2:
        assert [(r.value(), m) for r, m in spec.entries] == [(0.0, 1)]
    else:
        assert spec.multiplicity_of_integer(p - 2) == 1
        assert spec.multiplicity_of_integer(-1) == p - 2
        assert spec.total == p - 1


@pytest.mark.parametrize("p,q", [(3, 5), (2, 7), (5, 7)])
def test_spectrum_pq_is_complete_bipartite(p, q):
    spec = spectrum_from_quotient(p * q)
    m = (p - 1) * (q - 1)
    vals = spec.values_multiset()
    assert spec.multiplicity_of_integer(0) == p + q - 4
    assert abs(vals[0] + math.sqrt(m)) < 1e-9
    assert abs(vals[-1] - math.sqrt(m)) < 1e-9


def test_spectrum_matches_dense_for_small_range():
    for n in range(4, 61):
        if is_prime(n):
            continue
        structured = spectrum_from_quotient(n).values_multiset()
        dense = np.sort(np.linalg.eigvalsh(build_zero_divisor_graph(n).adj.astype(float)))
        assert np.abs(structured - dense).max() < 1e-8, n


def test_assemble_spectrum_merges_exact_collisions():
    from zdgq.spectral import assemble_spectrum

    spec = assemble_spectrum([(ExactInteger(-1), 2), (ExactInteger(3), 1)], 4, 5)
    assert spec.multiplicity_of_integer(-1) == 7
    assert spec.multiplicity_of_integer(0) == 4
    assert spec.total == 12
    vals = [r.value() for r, _ in spec.entries]
    assert vals == sorted(vals)


def test_twin_difference_is_exact_eigenvector():
    """e_u - e_v for a cell pair is an integer eigenvector: theta = -1 on
    clique cells, 0 on null cells."""
    for n in (12, 18, 27, 45):
        g = build_zero_divisor_graph(n)
        a = g.adj.astype(int)
        for c in divisor_partition(g).cells:
            if c.size < 2:
                continue
            u, v = c.members[0], c.members[1]
            vec = np.zeros(g.n_vertices, dtype=int)
            vec[g.index(u)], vec[g.index(v)] = 1, -1
            theta = -1 if c.kind.value == "complete" else 0
            assert np.array_equal(a @ vec, theta * vec), (n, c.divisor)


# --- projectors and supports -------------------------------------------------


def test_projectors_of_k2():
    from zdgq.graphs import make_complete

    projs = dict_by_value(spectral_projectors(make_complete(2)))
    assert np.allclose(projs[1.0], 0.5 * np.ones((2, 2)), atol=1e-9)
    assert np.allclose(projs[-1.0], np.array([[0.5, -0.5], [-0.5, 0.5]]), atol=1e-9)


def dict_by_value(pairs):
    return {round(lam, 6): p for lam, p in pairs}


def test_projectors_complete_and_orthogonal(g18):
    projs = spectral_projectors(g18)
    total = sum(p for _, p in projs)
    assert np.abs(total - np.eye(g18.n_vertices)).max() < 1e-10
    for i, (_, pi) in enumerate(projs):
        for j, (_, pj) in enumerate(projs):
            want = pi if i == j else 0
            assert np.abs(pi @ pj - want).max() < 1e-9


def test_support_exclusions_z18(g18):
    # singleton-cell vertex 9 sees neither twin eigenvalue
    support = eigenvalue_support(g18, 9)
    assert all(abs(lam) > 1e-6 and abs(lam + 1) > 1e-6 for lam in support)
    # clique-cell vertices skip 0; null-cell vertices skip -1
    assert all(abs(lam) > 1e-6 for lam in eigenvalue_support(g18, 6))
    assert all(abs(lam + 1) > 1e-6 for lam in eigenvalue_support(g18, 2))


def test_support_z21_contains_pm_sqrt12_and_zero(g21):
    support = eigenvalue_support(g21, 7)
    for want in (math.sqrt(12), -math.sqrt(12), 0.0):
        assert any(abs(lam - want) < 1e-8 for lam in support)


def test_support_z27(g27):
    support = eigenvalue_support(g27, 9)
    for want in (4.0, -3.0, -1.0):
        assert any(abs(lam - want) < 1e-8 for lam in support)


def test_null_cell_projection_formula(g18):
    """E_0 e_u = e_u - (1/|V_d|) 1_{V_d} on null cells when the quotient
    has no zero eigenvalue."""
    assert not quotient_contains(18, 0)
    projs = {round(lam, 8): p for lam, p in spectral_projectors(g18)}
    e0 = projs[0.0]
    for u in cell_members(18, 2):
        eu = np.zeros(g18.n_vertices)
        eu[g18.index(u)] = 1.0
        ind = np.zeros(g18.n_vertices)
        for x in cell_members(18, 2):
            ind[g18.index(x)] = 1.0
        want = eu - ind / 6.0
        assert np.abs(e0 @ eu - want).max() < 1e-9


def test_strong_cospectral_decomposition_z21(g21):
    dec = strong_cospectral_decomposition(g21, 7, 14)
    assert dec is not None
    assert np.allclose(sorted(r.value() for r in dec.plus),
                       [-math.sqrt(12), math.sqrt(12)], atol=1e-8)
    assert [round(r.value(), 8) for r in dec.minus] == [0.0]


def test_strong_cospectral_decomposition_z27(g27):
    dec = strong_cospectral_decomposition(g27, 9, 18)
    assert dec is not None
    assert sorted(round(r.value(), 8) for r in dec.plus) == [-3.0, 4.0]
    assert [round(r.value(), 8) for r in dec.minus] == [-1.0]
    assert dec.theta == -1


def test_not_strongly_cospectral_across_cells(g18):
    assert strong_cospectral_decomposition(g18, 2, 3) is None


def test_pair_support_exact_z21():
    dec = pair_support_exact(21, 7)
    assert (dec.u, dec.v) == (7, 14)
    assert dec.theta == 0
    assert dec.plus == (ExactQuadratic(0, 4, 3), ExactQuadratic(0, -4, 3))
    assert dec.minus == (ExactInteger(0),)


def test_pair_support_exact_z27():
    dec = pair_support_exact(27, 9)
    assert dec.plus == (ExactInteger(4), ExactInteger(-3))
    assert dec.minus == (ExactInteger(-1),)
    assert dec.theta == -1


def test_vertex_support_exact_star_center():
    # central vertex of Gamma(Z_2q) = K_{1,q-1} supports only +/- sqrt(q-1)
    for q in (3, 5, 7):
        support = vertex_support_exact(2 * q, q)
        vals = sorted(r.value() for r in support)
        assert np.allclose(vals, [-math.sqrt(q - 1), math.sqrt(q - 1)], atol=1e-9)
        leaf = cell_members(2 * q, 2)[0]
        leaf_support = vertex_support_exact(2 * q, leaf)
        assert any(isinstance(r, ExactInteger) and r.z == 0 for r in leaf_support)


def test_quotient_eigenvectors_aside_have_zero_cell_sums(g18):
    """Eigenvectors for eigenvalues outside the quotient spectrum sum to
    zero on every divisor cell."""
    q = divisor_quotient(18)
    quotient_vals = np.linalg.eigvalsh(
        np.array([[0, np.sqrt(6), 0, 0], [np.sqrt(6), 0, np.sqrt(2), 0],
                  [0, np.sqrt(2), 1, 2], [0, 0, 2, 0]])
    )
    vals, vecs = g18.eigensystem()
    for k, lam in enumerate(vals):
        if min(abs(lam - mu) for mu in quotient_vals) < 1e-7:
            continue
        for d in proper_divisors(18):
            idx = [g18.index(x) for x in cell_members(18, d)]
            assert abs(vecs[idx, k].sum()) < 1e-8
