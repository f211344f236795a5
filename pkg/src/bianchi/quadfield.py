"""Imaginary quadratic fields Q(i*sqrt(d)): discriminant, splitting, norm tests."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .arith import (
    factorize,
    hilbert_symbol,
    is_squarefree,
    kronecker,
    relevant_places,
    squarefree_part,
)


class NonSquarefreeError(ValueError):
    """Raised when a d that must be squarefree is not."""


class SplitType(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class ImagQuadField:
    """The field k = Q(i*sqrt(d)) for squarefree d >= 1.

    The ring of integers is Z[omega] with omega = (1 + i*sqrt(d))/2 when
    d = 3 mod 4 and omega = i*sqrt(d) otherwise; the discriminant is D = -d
    in the first case and D = -4d in the second.
    """

    d: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"d must be positive, got {self.d}")
        if not is_squarefree(self.d):
            raise NonSquarefreeError(f"d must be squarefree, got {self.d}")

    @property
    def discriminant(self) -> int:
        return -self.d if self.d % 4 == 3 else -4 * self.d

    @property
    def half_integral(self) -> bool:
        """True iff omega = (1 + i*sqrt(d))/2."""
        return self.d % 4 == 3

    @property
    def ring_generator(self) -> str:
        return "(1+i*sqrt(d))/2" if self.half_integral else "i*sqrt(d)"

    def discriminant_primes(self) -> tuple[int, ...]:
        return factorize(self.discriminant).primes()


def make_field(d: int, *, reduce: bool = False) -> ImagQuadField:
    """Build Q(i*sqrt(d)). Non-squarefree d is rejected unless reduce=True,
    in which case d is explicitly replaced by its squarefree part."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    if reduce:
        d = squarefree_part(d)
    return ImagQuadField(d)


def splitting(k: ImagQuadField, p: int) -> SplitType:
    """Behavior of the rational prime p in k, read off the Kronecker symbol (D/p)."""
    s = kronecker(k.discriminant, p)
    if s == 0:
        return SplitType.RAMIFIED
    return SplitType.SPLIT if s == 1 else SplitType.INERT


def is_ideal_norm(lam: int, k: ImagQuadField) -> bool:
    """Whether lam is the absolute norm of an integral ideal of k.

    Split and ramified primes realize every exponent; an inert prime only
    contributes squares, so the condition is that v_p(lam) is even at every
    inert p.
    """
    if lam < 1:
        raise ValueError(f"lam must be positive, got {lam}")
    for p, e in factorize(lam).factors:
        if e % 2 and splitting(k, p) is SplitType.INERT:
            return False
    return True


def is_global_norm(lam: int, k: ImagQuadField) -> bool:
    """Whether lam is a norm from k^x, by Minkowski-Hasse: (lam, -d)_v = +1
    at every place, with only v in {oo, 2} u primes(lam*d) needing a check."""
    if lam == 0:
        raise ValueError("lam must be nonzero")
    for v in relevant_places(lam, k.d):
        if hilbert_symbol(lam, -k.d, v) != 1:
            return False
    return True
