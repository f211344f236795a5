"""Exact integer arithmetic: factorization, square classes, Hilbert symbols.

Everything here is pure and exact. Inputs are ordinary Python integers (or
Fractions where a rational makes sense); trial division is the intended
factoring strategy, which is ample for the desk-scale inputs this library
targets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

#: 64-bit signed inputs only; trial division makes anything larger a footgun.
INT64_MAX = 2**63 - 1

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class Place:
    """A place of Q: a finite prime, or the infinite (real) place.

    ``p`` is the prime for a finite place and ``None`` at infinity.
    """

    p: int | None

    def __post_init__(self) -> None:
        if self.p is not None:
            if self.p < 2 or not is_prime(self.p):
                raise ValueError(f"finite place requires a prime, got {self.p}")

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.p is None

    def sort_key(self) -> tuple[int, int]:
        # finite places first by prime, infinity last
        return (1, 0) if self.p is None else (0, self.p)

    def __repr__(self) -> str:
        return "oo" if self.p is None else str(self.p)


INFINITY = Place(None)


@dataclass(frozen=True)
class Factorization:
    """sign * prod(p**e) with primes strictly increasing and e >= 1."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (fine for n <= ~1e12)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> Factorization:
    """Factor a nonzero 64-bit integer by trial division."""
    if n == 0:
        raise ValueError("cannot factor 0")
    if abs(n) > INT64_MAX:
        raise ValueError(f"|n| exceeds 2**63-1: {n}")
    sign = 1 if n > 0 else -1
    m = abs(n)
    factors: list[tuple[int, int]] = []
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    # remaining factors are >= 5; wheel over 6k+-1
    f = 5
    while f * f <= m:
        for q in (f, f + 2):
            if m % q == 0:
                e = 0
                while m % q == 0:
                    m //= q
                    e += 1
                factors.append((q, e))
        f += 6
    if m > 1:
        factors.append((m, 1))
    factors.sort()
    return Factorization(sign, tuple(factors))


def valuation(n: int, p: int) -> int:
    """v_p(n) for nonzero n."""
    if n == 0:
        raise ValueError("v_p(0) is undefined here")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def squarefree_part(n: int) -> int:
    """The squarefree integer s with n/s a positive perfect square.

    Keeps the sign of n.
    """
    if n == 0:
        raise ValueError("squarefree_part(0) is undefined")
    fac = factorize(n)
    s = fac.sign
    for p, e in fac.factors:
        if e % 2:
            s *= p
    return s


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(n).factors)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n); equals the Legendre symbol for odd prime n."""
    if n == 0:
        raise ValueError("Kronecker symbol needs n != 0")
    if n < 0:
        result = -1 if a < 0 else 1
        n = -n
    else:
        result = 1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        e = 0
        while n % 2 == 0:
            n //= 2
            e += 1
        if e % 2 and a % 8 in (3, 5):
            result = -result
    # now n odd positive; standard quadratic-reciprocity loop
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _square_class_int(x: Rational) -> int:
    """An integer in the same rational square class as x."""
    if isinstance(x, Fraction):
        if x == 0:
            raise ValueError("nonzero rational required")
        return x.numerator * x.denominator
    if x == 0:
        raise ValueError("nonzero rational required")
    return x


def _epsilon(u: int) -> int:
    """(u-1)/2 mod 2 for odd u."""
    return (u - 1) // 2 % 2


def _omega2(u: int) -> int:
    """(u^2-1)/8 mod 2 for odd u."""
    return (u * u - 1) // 8 % 2


def hilbert_symbol(a: Rational, b: Rational, v: Place) -> int:
    """Hilbert symbol (a, b)_v over Q_v, computed by the tame/dyadic formulas.

    Bimultiplicative, symmetric, depends only on the square classes of a, b.
    """
    a = _square_class_int(a)
    b = _square_class_int(b)
    if v.is_infinite:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    assert p is not None
    alpha = valuation(a, p)
    beta = valuation(b, p)
    u = a // p**alpha
    w = b // p**beta
    if p == 2:
        exp = _epsilon(u) * _epsilon(w) + alpha * _omega2(w) + beta * _omega2(u)
        return -1 if exp % 2 else 1
    sign = 1
    if alpha * beta * ((p - 1) // 2) % 2:
        sign = -1
    if beta % 2:
        sign *= kronecker(u, p)
    if alpha % 2:
        sign *= kronecker(w, p)
    return sign


def relevant_places(*values: Rational) -> list[Place]:
    """Places where a Hilbert symbol built from the given values can be -1.

    Returns {oo, 2} plus the odd primes dividing any value; at every other
    place both arguments are units and the symbol is +1.
    """
    primes: set[int] = {2}
    for x in values:
        n = _square_class_int(x)
        primes.update(p for p in factorize(n).primes())
    places = [Place(p) for p in sorted(primes)]
    places.append(INFINITY)
    return places
