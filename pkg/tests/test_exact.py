from fractions import Fraction

import numpy as np
import pytest

from zdgq.exact import (
    Surd,
    SurdSum,
    charpoly,
    poly_divmod,
    poly_eval,
    poly_mul,
    squarefree_part,
)


@pytest.mark.parametrize(
    "m,expected",
    [(1, (1, 1)), (12, (2, 3)), (49, (7, 1)), (50, (5, 2)), (97, (1, 97)), (360, (6, 10))],
)
def test_squarefree_part(m, expected):
    assert squarefree_part(m) == expected


def test_surd_sqrt_normalizes():
    s = Surd.sqrt_of(48)
    assert (s.coef, s.rad) == (4, 3)
    assert Surd.sqrt_of(0).is_zero()


def test_surd_product_stays_squarefree():
    # sqrt(6) * sqrt(2) = 2 sqrt(3)
    p = Surd.sqrt_of(6) * Surd.sqrt_of(2)
    assert (p.coef, p.rad) == (2, 3)
    assert p.squared() == 12


def test_surd_addition_same_radicand_only():
    a = Surd.of(Fraction(1, 2), 3)
    assert (a + a).coef == 1
    with pytest.raises(ValueError):
        a + Surd.of(1, 2)
    assert (a - a).is_zero()


def test_surdsum_multiplication_collects_radicands():
    x = SurdSum.from_surd(Surd.sqrt_of(6)) + SurdSum.rational(1)
    y = SurdSum.from_surd(Surd.sqrt_of(2))
    prod = x * y
    # (1 + sqrt 6) * sqrt 2 = sqrt 2 + 2 sqrt 3
    assert prod == SurdSum({2: Fraction(1), 3: Fraction(2)})
    assert abs(prod.value() - (np.sqrt(2) + 2 * np.sqrt(3))) < 1e-12


def test_poly_divmod_exact():
    # (x^2 - 2)(x + 3) = x^3 + 3x^2 - 2x - 6
    prod = poly_mul([-2, 0, 1], [3, 1])
    quot, rem = poly_divmod(prod, [3, 1])
    assert quot == [-2, 0, 1]
    assert rem == []
    _, rem = poly_divmod(prod, [1, 1])
    assert rem


def test_poly_eval_horner():
    assert poly_eval([24, 6, -12, -1, 1], -1) == 8
    assert poly_eval([24, 6, -12, -1, 1], 0) == 24


def test_charpoly_path3():
    a = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    assert charpoly(a) == [0, -2, 0, 1]  # x^3 - 2x


def test_charpoly_small_known():
    assert charpoly([[0, 1], [1, 0]]) == [-1, 0, 1]
    assert charpoly([[5]]) == [-5, 1]
    assert charpoly([]) == [1]


def test_charpoly_matches_numpy_on_random_integer_matrices():
    rng = np.random.default_rng(3)
    for _ in range(20):
        k = int(rng.integers(1, 7))
        m = rng.integers(-4, 5, size=(k, k))
        ours = charpoly([[int(x) for x in row] for row in m])
        theirs = np.poly(m.astype(float))  # descending
        assert np.allclose(list(reversed(ours)), theirs, atol=1e-6)


def test_charpoly_rational_entries():
    m = [[Fraction(1, 2), Fraction(1)], [Fraction(1), Fraction(1, 2)]]
    # (x - 1/2)^2 - 1 = x^2 - x - 3/4
    assert charpoly(m) == [Fraction(-3, 4), Fraction(-1), Fraction(1)]
