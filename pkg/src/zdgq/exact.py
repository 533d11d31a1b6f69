"""Exact scalar arithmetic: quadratic surds and integer polynomials.

Everything here works over Fraction/int so the symbolic pipeline never
touches floating point.  Polynomials are coefficient lists in ascending
order: [c0, c1, ..., cd] stands for c0 + c1*x + ... + cd*x^d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def squarefree_part(m: int) -> tuple[int, int]:
    """Write m >= 1 as s*s*r with r squarefree; returns (s, r)."""
    if m < 1:
        raise ValueError("squarefree_part needs m >= 1")
    s = 1
    r = 1
    rem = m
    d = 2
    while d * d <= rem:
        if rem % d == 0:
            e = 0
            while rem % d == 0:
                rem //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                r *= d
        d += 1 if d == 2 else 2
    return s, r * rem


@dataclass(frozen=True)
class Surd:
    """Exact value coef*sqrt(rad), rad squarefree >= 1; zero is coef=0, rad=1."""

    coef: Fraction
    rad: int

    @staticmethod
    def of(coef, rad: int = 1) -> "Surd":
        coef = Fraction(coef)
        if coef == 0:
            return Surd(Fraction(0), 1)
        if rad < 1:
            raise ValueError("radicand must be >= 1")
        s, r = squarefree_part(rad)
        return Surd(coef * s, r)

    @staticmethod
    def sqrt_of(m: int) -> "Surd":
        """Exact sqrt(m) for integer m >= 0."""
        if m < 0:
            raise ValueError("sqrt_of needs m >= 0")
        if m == 0:
            return Surd(Fraction(0), 1)
        s, r = squarefree_part(m)
        return Surd(Fraction(s), r)

    def is_zero(self) -> bool:
        return self.coef == 0

    def __mul__(self, other):
        if isinstance(other, Surd):
            if self.coef == 0 or other.coef == 0:
                return Surd(Fraction(0), 1)
            # both radicands squarefree: rad1*rad2 = g^2 * (rad1/g)*(rad2/g)
            g = math.gcd(self.rad, other.rad)
            return Surd(self.coef * other.coef * g, (self.rad // g) * (other.rad // g))
        return Surd.of(self.coef * Fraction(other), self.rad)

    __rmul__ = __mul__

    def __neg__(self):
        return Surd(-self.coef, self.rad)

    def __add__(self, other: "Surd") -> "Surd":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.rad != other.rad:
            raise ValueError("cannot add surds with different radicands; use SurdSum")
        c = self.coef + other.coef
        return Surd(c, self.rad) if c != 0 else Surd(Fraction(0), 1)

    def __sub__(self, other: "Surd") -> "Surd":
        return self + (-other)

    def squared(self) -> Fraction:
        return self.coef * self.coef * self.rad

    def value(self) -> float:
        return float(self.coef) * math.sqrt(self.rad)

    def __str__(self) -> str:
        if self.rad == 1:
            return str(self.coef)
        if self.coef == 1:
            return f"sqrt({self.rad})"
        return f"{self.coef}*sqrt({self.rad})"


class SurdSum:
    """Finite sum of surds with distinct radicands, as a rad -> coef map."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {r: c for r, c in (terms or {}).items() if c != 0}

    @staticmethod
    def from_surd(s: Surd) -> "SurdSum":
        return SurdSum({s.rad: s.coef})

    @staticmethod
    def rational(q) -> "SurdSum":
        return SurdSum({1: Fraction(q)})

    def __add__(self, other: "SurdSum") -> "SurdSum":
        out = dict(self.terms)
        for r, c in other.terms.items():
            out[r] = out.get(r, Fraction(0)) + c
        return SurdSum(out)

    def __sub__(self, other: "SurdSum") -> "SurdSum":
        out = dict(self.terms)
        for r, c in other.terms.items():
            out[r] = out.get(r, Fraction(0)) - c
        return SurdSum(out)

    def __mul__(self, other: "SurdSum") -> "SurdSum":
        out: dict[int, Fraction] = {}
        for r1, c1 in self.terms.items():
            for r2, c2 in other.terms.items():
                s = Surd(c1, r1) * Surd(c2, r2)
                out[s.rad] = out.get(s.rad, Fraction(0)) + s.coef
        return SurdSum(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, SurdSum) and self.terms == other.terms

    def is_rational(self) -> bool:
        return all(r == 1 for r in self.terms)

    def value(self) -> float:
        return sum(float(c) * math.sqrt(r) for r, c in self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(str(Surd(c, r)) for r, c in sorted(self.terms.items()))


# --- integer/rational polynomials, ascending coefficients ---------------


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def poly_divmod(num, den):
    """Exact polynomial division over the rationals; returns (quot, rem)."""
    num = list(num)
    dd = len(den) - 1
    if dd < 0 or all(c == 0 for c in den):
        raise ZeroDivisionError("division by zero polynomial")
    lead = den[-1]
    quot = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        q = Fraction(num[i], lead) if lead != 1 else num[i]
        quot[i - dd] = q
        if q:
            for j, c in enumerate(den):
                num[i - dd + j] -= q * c
    rem = num[:dd] if dd > 0 else []
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem

def poly_is_divisible(num, den) -> bool:
    _, rem = poly_divmod(num, den)
    return not rem


def det_bareiss(matrix) -> int:
    """Fraction-free integer determinant (Bareiss elimination)."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for swap in range(k + 1, n):
                if m[swap][k] != 0:
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def charpoly(matrix) -> list:
    """Characteristic polynomial det(xI - A), ascending coefficients.

    Division-free (Berkowitz), so integer matrices give integer output and
    rational matrices stay exact.
    """
    n = len(matrix)
    if n == 0:
        return [1]
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    # coefficient vectors in descending order during the recursion
    vec = [1, -matrix[0][0]]
    for r in range(1, n):
        row = matrix[r][:r]
        col = [matrix[j][r] for j in range(r)]
        sub = [matrix[i][:r] for i in range(r)]
        # column of the Toeplitz multiplier: 1, -a_rr, -R C, -R M C, ...
        toep = [1, -matrix[r][r]]
        cur = col
        for k in range(r):
            toep.append(-sum(row[j] * cur[j] for j in range(r)))
            if k < r - 1:
                cur = [sum(sub[i][j] * cur[j] for j in range(r)) for i in range(r)]
        new = [0] * (r + 2)
        for i in range(r + 2):
            acc = 0
            for j in range(min(i, r) + 1):
                k = i - j
                if 0 <= k < len(toep):
                    acc += toep[k] * vec[j]
            new[i] = acc
        vec = new
    vec.reverse()
    return vec
