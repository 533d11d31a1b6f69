import math

import pytest
from hypothesis import assume, given, strategies as st

from zdgq.arithmetic import (
    cell_is_complete,
    divisors,
    factorize,
    is_prime,
    proper_divisors,
    totient,
)


def naive_factorization(n):
    """Independent trial-division oracle, one prime at a time."""
    out = []
    for p in range(2, n + 1):
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return tuple(out)


@pytest.mark.parametrize(
    "n,expected",
    [
        (18, ((2, 1), (3, 2))),
        (8, ((2, 3),)),
        (12250, ((2, 1), (5, 3), (7, 2))),
    ],
)
def test_factorize_examples(n, expected):
    f = factorize(n)
    assert f.pairs == expected
    assert f.pairs == naive_factorization(n)


def test_factorize_reconstructs_and_primes_are_prime():
    for n in range(2, 600):
        f = factorize(n)
        prod = 1
        for p, e in f.pairs:
            assert is_prime(p)
            prod *= p**e
        assert prod == n
        assert list(f.primes) == sorted(f.primes)


def test_factorize_rejects_small():
    with pytest.raises(ValueError):
        factorize(1)
    with pytest.raises(ValueError):
        factorize(0)


@pytest.mark.parametrize("n,expected", [(9, 6), (1, 1), (18 // 2, 6)])
def test_totient_examples(n, expected):
    assert totient(n) == expected


def test_totient_counts_units():
    for n in range(1, 200):
        count = sum(1 for x in range(1, n + 1) if math.gcd(x, n) == 1)
        assert totient(n) == count


def test_totient_rejects_nonpositive():
    with pytest.raises(ValueError):
        totient(0)


@given(st.integers(2, 10_000), st.integers(2, 10_000))
def test_totient_multiplicative_on_coprime_pairs(a, b):
    assume(math.gcd(a, b) == 1)
    assert totient(a * b) == totient(a) * totient(b)


def test_proper_divisor_order_n18():
    # null-inducing cells first: 18 | 36 makes 6 the lone clique divisor
    assert proper_divisors(18) == [2, 3, 9, 6]


def test_proper_divisor_order_n27():
    # 27 | 81, so 9 induces a clique and sorts last
    assert proper_divisors(27) == [3, 9]
    assert not cell_is_complete(27, 3)
    assert cell_is_complete(27, 9)


def test_proper_divisors_small_cases():
    assert proper_divisors(4) == [2]
    with pytest.raises(ValueError):
        proper_divisors(7)
    with pytest.raises(ValueError):
        proper_divisors(3)


def test_proper_divisors_null_block_precedes_complete_block():
    for n in range(4, 400):
        if is_prime(n):
            continue
        kinds = [cell_is_complete(n, d) for d in proper_divisors(n)]
        assert kinds == sorted(kinds), f"n={n}: clique divisor before a null one"


def test_divisor_count_matches_enumeration():
    for n in range(2, 300):
        assert factorize(n).divisor_count() == len(divisors(n))


def test_vertex_count_identity_up_to_1e4():
    # sum of phi(n/d) over proper divisors == n - phi(n) - 1
    for n in range(4, 10_001):
        if is_prime(n):
            continue
        total = sum(totient(n // d) for d in proper_divisors(n))
        assert total == n - totient(n) - 1, f"identity fails at n={n}"
