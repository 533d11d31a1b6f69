import math

import numpy as np
import pytest

from zdgq.arithmetic import is_prime, proper_divisors, totient
from zdgq.graphs import (
    CellKind,
    TwinKind,
    build_upsilon,
    build_zero_divisor_graph,
    cartesian_product,
    degree_of,
    divisor_partition,
    make_complete,
    make_complete_bipartite,
    make_path,
    make_star,
    twin_kind,
)
from zdgq.oracles import brute_degree


def edge_set(g):
    return {
        frozenset((g.labels[i], g.labels[j]))
        for i, j in zip(*np.nonzero(g.adj))
        if i < j
    }


def test_gamma_z8_is_path_on_2_4_6():
    g = build_zero_divisor_graph(8)
    assert g.labels == (2, 4, 6)
    assert edge_set(g) == {frozenset({2, 4}), frozenset({4, 6})}


def test_gamma_z9_is_single_edge():
    g = build_zero_divisor_graph(9)
    assert g.labels == (3, 6)
    assert edge_set(g) == {frozenset({3, 6})}


def test_gamma_z15_is_k24_with_divisor_parts():
    g = build_zero_divisor_graph(15)
    assert set(g.labels) == {3, 5, 6, 9, 10, 12}
    want = {frozenset({a, b}) for a in (5, 10) for b in (3, 6, 9, 12)}
    assert edge_set(g) == want


def test_rejects_primes_and_tiny_n():
    for n in (2, 3, 5, 7, 97):
        with pytest.raises(ValueError):
            build_zero_divisor_graph(n)


def test_divisor_partition_n18(g18):
    cells = {c.divisor: c for c in divisor_partition(g18).cells}
    assert {d: c.size for d, c in cells.items()} == {2: 6, 9: 1, 6: 2, 3: 2}
    assert cells[6].kind is CellKind.COMPLETE
    for d in (2, 3, 9):
        assert cells[d].kind is CellKind.NULL
    assert cells[3].members == (3, 15)
    assert cells[6].members == (6, 12)


def test_divisor_partition_n4_and_n27():
    p4 = divisor_partition(build_zero_divisor_graph(4))
    assert [(c.divisor, c.size, c.kind) for c in p4.cells] == [(2, 1, CellKind.COMPLETE)]

    p27 = divisor_partition(build_zero_divisor_graph(27))
    by_d = {c.divisor: c for c in p27.cells}
    assert by_d[3].size == 6 and by_d[3].kind is CellKind.NULL
    assert by_d[9].size == 2 and by_d[9].kind is CellKind.COMPLETE


def test_divisor_partition_members_match_gcd_enumeration():
    for n in (12, 27, 30, 45, 100):
        g = build_zero_divisor_graph(n)
        for cell in divisor_partition(g).cells:
            want = tuple(x for x in range(1, n) if math.gcd(x, n) == cell.divisor)
            assert cell.members == want


def test_upsilon_18():
    ups = build_upsilon(18)
    assert set(ups.labels) == {2, 3, 6, 9}
    assert edge_set(ups) == {
        frozenset({2, 9}),
        frozenset({9, 6}),
        frozenset({6, 3}),
    }


def test_upsilon_4_single_isolated_vertex():
    ups = build_upsilon(4)
    assert ups.labels == (2,)
    assert not ups.adj.any()


def test_upsilon_30_edges_by_divisibility():
    ups = build_upsilon(30)
    want = set()
    ds = proper_divisors(30)
    for i, a in enumerate(ds):
        for b in ds[i + 1 :]:
            if (a * b) % 30 == 0:
                want.add(frozenset({a, b}))
    assert edge_set(ups) == want


@pytest.mark.parametrize("x,n,expected", [(9, 18, 8), (6, 18, 4), (2, 4, 0)])
def test_degree_formula_examples(x, n, expected):
    assert degree_of(x, n) == expected
    assert brute_degree(n, x) == expected


def test_degree_formula_matches_row_sums_up_to_500():
    for n in range(4, 501):
        if is_prime(n):
            continue
        g = build_zero_divisor_graph(n)
        sums = g.adj.sum(axis=1)
        for i, x in enumerate(g.labels):
            assert degree_of(x, n) == sums[i], (n, x)


def test_degree_rejects_non_vertices():
    with pytest.raises(ValueError):
        degree_of(5, 18)  # a unit
    with pytest.raises(ValueError):
        degree_of(0, 18)


def test_twin_kinds_in_z18(g18):
    assert twin_kind(g18, 3, 15) is TwinKind.FALSE_TWINS
    assert twin_kind(g18, 6, 12) is TwinKind.TRUE_TWINS
    assert twin_kind(g18, 2, 3) is TwinKind.NOT_TWINS
    with pytest.raises(ValueError):
        twin_kind(g18, 3, 3)


def test_twins_exactly_within_cells():
    """Two vertices are twins iff they share a divisor cell."""
    for n in (12, 18, 27, 30, 50):
        g = build_zero_divisor_graph(n)
        cell_of = {}
        for c in divisor_partition(g).cells:
            for x in c.members:
                cell_of[x] = c.divisor
        for i, u in enumerate(g.labels):
            for v in g.labels[i + 1 :]:
                same = cell_of[u] == cell_of[v]
                assert (twin_kind(g, u, v) is not TwinKind.NOT_TWINS) == same


def test_cells_join_all_or_nothing():
    for n in (18, 24, 36, 60):
        g = build_zero_divisor_graph(n)
        cells = divisor_partition(g).cells
        for i, ca in enumerate(cells):
            ia = [g.index(x) for x in ca.members]
            for cb in cells[i + 1 :]:
                ib = [g.index(x) for x in cb.members]
                cnt = int(g.adj[np.ix_(ia, ib)].sum())
                assert cnt in (0, len(ia) * len(ib)), (n, ca.divisor, cb.divisor)


def test_connected_with_diameter_at_most_3_up_to_500():
    for n in range(4, 501):
        if is_prime(n):
            continue
        a = build_zero_divisor_graph(n).adj.astype(np.float32)
        reach = np.eye(len(a), dtype=np.float32) + a
        a2 = a @ a
        a3 = a2 @ a
        assert ((reach + a2 + a3) > 0).all(), f"diameter > 3 at n={n}"


def test_vertex_count_identity_on_graphs_up_to_500():
    for n in range(4, 501):
        if is_prime(n):
            continue
        g = build_zero_divisor_graph(n)
        assert g.n_vertices == n - totient(n) - 1
        assert g.n_vertices == sum(totient(n // d) for d in proper_divisors(n))


def test_cartesian_product_p2_k14(p2_k14):
    assert p2_k14.n_vertices == 10
    # hub-hub edge from the path factor, hub-leaf edges from the star factor
    assert p2_k14.adjacent((0, 0), (1, 0))
    assert p2_k14.adjacent((0, 0), (0, 3))
    assert not p2_k14.adjacent((0, 1), (1, 2))


def test_cartesian_product_squares_to_4_cycle():
    c4 = cartesian_product(make_path(2), make_path(2))
    assert c4.n_vertices == 4
    assert sorted(c4.adj.sum(axis=1)) == [2, 2, 2, 2]
    vals = np.linalg.eigvalsh(c4.adj.astype(float))
    assert np.allclose(vals, [-2, 0, 0, 2], atol=1e-9)


def test_fixture_constructors():
    assert int(make_path(3).adj.sum()) // 2 == 2
    k = make_complete(5)
    assert int(k.adj.sum()) // 2 == 10
    b = make_complete_bipartite(2, 4)
    vals = np.linalg.eigvalsh(b.adj.astype(float))
    assert np.allclose(sorted(vals), [-np.sqrt(8), 0, 0, 0, 0, np.sqrt(8)], atol=1e-9)
    s = make_star(5)
    assert np.array_equal(s.adj, make_complete_bipartite(1, 4).adj)
