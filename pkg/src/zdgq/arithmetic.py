"""Integer number theory used by the graph constructions.

Deterministic trial division throughout: target scale is n <= 10^6, so no
probabilistic primality is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as (prime, exponent) pairs, primes ascending."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.pairs)

    def divisor_count(self) -> int:
        out = 1
        for _, e in self.pairs:
            out *= e + 1
        return out


def factorize(n: int) -> Factorization:
    """Trial-division factorization of n >= 2."""
    if n < 2:
        raise ValueError(f"factorize needs n >= 2, got {n}")
    pairs = []
    rem = n
    d = 2
    while d * d <= rem:
        if rem % d == 0:
            e = 0
            while rem % d == 0:
                rem //= d
                e += 1
            pairs.append((d, e))
        d += 1 if d == 2 else 2
    if rem > 1:
        pairs.append((rem, 1))
    return Factorization(n, tuple(pairs))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def totient(n: int) -> int:
    """Euler's phi: number of 1 <= x <= n coprime to n (phi(1) = 1)."""
    if n < 1:
        raise ValueError(f"totient needs n >= 1, got {n}")
    if n == 1:
        return 1
    out = 1
    for p, e in factorize(n).pairs:
        out *= (p - 1) * p ** (e - 1)
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def cell_is_complete(n: int, d: int) -> bool:
    """Whether the vertices with gcd d form a clique: n | d^2."""
    return (d * d) % n == 0


def proper_divisors(n: int) -> list[int]:
    """Proper divisors of composite n >= 4 (excluding 1 and n).

    Order is the canonical cell order used everywhere downstream: divisors
    whose cell induces a null graph first, then clique-inducing ones,
    ascending by value inside each block.
    """
    if n < 4 or is_prime(n):
        raise ValueError(f"proper_divisors needs composite n >= 4, got {n}")
    ds = [d for d in divisors(n) if 1 < d < n]
    ds.sort(key=lambda d: (cell_is_complete(n, d), d))
    return ds
