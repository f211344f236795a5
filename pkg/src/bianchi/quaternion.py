"""Rational quaternion algebras as ramification data.

An algebra is identified with its (even-cardinality) set of ramified places;
that identification is faithful up to isomorphism, and every operation in
this package consumes only ramification data. No structure constants are
stored.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .arith import (
    INFINITY,
    Place,
    hilbert_symbol,
    relevant_places,
    squarefree_part,
)
from .quadfield import ImagQuadField, SplitType, splitting


class SubgroupKind(enum.Enum):
    """The three non-cyclic maximal finite subgroup types of a Bianchi group."""

    D3 = "d3"  # projective 3-dihedral, isomorphic to S3
    T = "t"  # projective tetrahedral, isomorphic to A4
    D2MAX = "d2"  # maximal-finite 2-dihedral, isomorphic to V4


@dataclass(frozen=True)
class QuaternionAlgebraQ:
    """A quaternion algebra over Q, given by its set of ramified places."""

    ramified: frozenset[Place]

    def __post_init__(self) -> None:
        if len(self.ramified) % 2 != 0:
            raise ValueError("the number of ramified places must be even")

    def finite_ramified(self) -> tuple[int, ...]:
        return tuple(sorted(v.p for v in self.ramified if not v.is_infinite))

    @property
    def ramified_at_infinity(self) -> bool:
        return INFINITY in self.ramified

    def __repr__(self) -> str:
        names = sorted(self.ramified, key=Place.sort_key)
        return f"QuaternionAlgebraQ({{{', '.join(map(repr, names))}}})"


MATRIX_ALGEBRA = QuaternionAlgebraQ(frozenset())


def from_hilbert_pair(a: int, b: int) -> QuaternionAlgebraQ:
    """The algebra with presentation (a, b): ramified where (a,b)_v = -1."""
    if a == 0 or b == 0:
        raise ValueError("a and b must be nonzero")
    ram = frozenset(
        v for v in relevant_places(a, b) if hilbert_symbol(a, b, v) == -1
    )
    return QuaternionAlgebraQ(ram)


def local_symbol(F: QuaternionAlgebraQ, v: Place) -> int:
    """-1 where F is ramified, +1 where it splits."""
    return -1 if v in F.ramified else 1


def sigma(F: QuaternionAlgebraQ) -> int:
    """Product of the finite ramified primes, negated if oo is ramified."""
    s = 1
    for p in F.finite_ramified():
        s *= p
    return -s if F.ramified_at_infinity else s


def sigma_k(F: QuaternionAlgebraQ, k: ImagQuadField) -> int:
    """Product of the finite ramified primes of F that split in k.

    This invariant decides which k-quaternion algebra F extends to; it is 1
    exactly when F embeds in M2(k).
    """
    s = 1
    for p in F.finite_ramified():
        if splitting(k, p) is SplitType.SPLIT:
            s *= p
    return s


def embeds_in_common_extension(
    E: QuaternionAlgebraQ, F: QuaternionAlgebraQ, k: ImagQuadField
) -> bool:
    """Whether E embeds in the k-algebra extending F (and vice versa)."""
    return sigma_k(E, k) == sigma_k(F, k)


def normalize_tau(tau: int, k: ImagQuadField) -> int:
    """Reduce tau to a squarefree representative coprime to the discriminant.

    The result tau' is squarefree, coprime to D, satisfies tau' = 1 mod 4
    whenever 2 | d, and has the same Hilbert class as tau with respect to -d
    at every place: each step multiplies tau by a value of the norm form
    x^2 + d*y^2 (namely d + g^2 or d + 1), which has (., -d)_v = +1
    everywhere, and then discards a square factor.
    """
    if tau == 0:
        raise ValueError("tau must be nonzero")
    d = k.d
    tau = squarefree_part(tau)
    # clear common factors with d; one pass suffices, but guard regardless
    for _ in range(64):
        g = gcd(abs(tau), d)
        if g == 1:
            break
        tau_low, d_low = tau // g, d // g
        tau = squarefree_part(tau_low * (d_low + g))
        assert gcd(abs(tau), d) < g, "gcd clearing must strictly decrease"
    else:
        raise AssertionError("gcd clearing failed to terminate")
    # a leftover factor 2 of D is possible only for odd d = 1 mod 4
    if d % 4 == 1 and tau % 2 == 0:
        tau = squarefree_part(tau * (d + 1) // 4)
    if d % 2 == 0 and tau % 4 != 1:
        tau = squarefree_part(tau * (d + 1))
    return tau


@dataclass(frozen=True)
class GroupAlgebraData:
    """The rational quaternion algebra spanned by a finite group's preimage,
    with the index of its group order and its outer automorphism index."""

    kind: SubgroupKind
    algebra: QuaternionAlgebraQ
    lambda_of_group_order: int
    aut_index: int


_D3_ALGEBRA = QuaternionAlgebraQ(frozenset({Place(3), INFINITY}))
_T_ALGEBRA = QuaternionAlgebraQ(frozenset({Place(2), INFINITY}))

_GROUP_ALGEBRAS = {
    SubgroupKind.D3: GroupAlgebraData(SubgroupKind.D3, _D3_ALGEBRA, 1, 2),
    SubgroupKind.T: GroupAlgebraData(SubgroupKind.T, _T_ALGEBRA, 1, 2),
    SubgroupKind.D2MAX: GroupAlgebraData(SubgroupKind.D2MAX, _T_ALGEBRA, 2, 6),
}


def group_algebra(kind: SubgroupKind) -> GroupAlgebraData:
    """Fixed data of the group's algebra: D3 -> ramified {3, oo}; the
    tetrahedral and 2-dihedral groups share the algebra ramified at {2, oo},
    the 2-dihedral order sitting with index 2 in the tetrahedral one."""
    return _GROUP_ALGEBRAS[kind]
