"""Maximal orders and optimal embeddings through the index invariant Lambda.

All order-theoretic questions handled here reduce to square classes of
indices and finitely many Hilbert symbols: compatibility of an index with
the quadratic ring, isomorphism of maximal orders, the forced Hilbert
character of an intersection index, local and global embedding counts, and
the automorphism index of a maximal order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Union

from .arith import (
    Place,
    factorize,
    hilbert_symbol,
    relevant_places,
    squarefree_part,
    valuation,
)
from .quadfield import ImagQuadField, SplitType, is_ideal_norm, splitting
from .quaternion import QuaternionAlgebraQ, local_symbol, sigma, sigma_k


class IncompatibleIndexError(ValueError):
    """The requested index cannot be realized by a compatible order."""


@dataclass(frozen=True)
class LambdaClass:
    """An order index modulo rational squares: a squarefree positive integer."""

    value: int

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError(f"index class must be positive, got {self.value}")
        if squarefree_part(self.value) != self.value:
            raise ValueError(f"index class must be squarefree, got {self.value}")

    @classmethod
    def from_index(cls, n: int) -> "LambdaClass":
        """Reduce a full integer index to its square class."""
        if n < 1:
            raise ValueError(f"index must be positive, got {n}")
        return cls(squarefree_part(n))


LambdaLike = Union[int, LambdaClass]


def _lam(x: LambdaLike) -> LambdaClass:
    return x if isinstance(x, LambdaClass) else LambdaClass.from_index(x)


@dataclass(frozen=True)
class HilbertCharacter:
    """A finitely supported map Place -> {-1, +1}, stored by its -1 set.

    Reciprocity forces the number of -1 entries to be even for every
    character arising here.
    """

    minus_places: frozenset[Place]

    def value(self, v: Place) -> int:
        return -1 if v in self.minus_places else 1

    def __mul__(self, other: "HilbertCharacter") -> "HilbertCharacter":
        return HilbertCharacter(self.minus_places ^ other.minus_places)

    @property
    def is_trivial(self) -> bool:
        return not self.minus_places

    @classmethod
    def of_square_class(cls, m: int, k: ImagQuadField) -> "HilbertCharacter":
        """The character v -> (m, -d)_v."""
        minus = frozenset(
            v for v in relevant_places(m, k.d) if hilbert_symbol(m, -k.d, v) == -1
        )
        return cls(minus)


def character_is_trivial(m: int, k: ImagQuadField) -> bool:
    """(m, -d)_v = +1 at every place of Q."""
    return all(hilbert_symbol(m, -k.d, v) == 1 for v in relevant_places(m, k.d))


def squarefree_divisors(n: int) -> list[int]:
    """All positive divisors of squarefree n >= 1, ascending."""
    primes = factorize(n).primes() if n > 1 else ()
    divs = [1]
    for p in primes:
        divs += [d * p for d in divs]
    return sorted(divs)


def compatible_order_exists(
    lam: int, F: QuaternionAlgebraQ, k: ImagQuadField
) -> bool:
    """Whether some order of index lam in a maximal order of F contains a
    copy of the quadratic ring at all primes dividing lam.

    Holds iff lam is coprime to sigma_k(F) and is an ideal norm of k.
    """
    if lam < 1:
        raise ValueError(f"lam must be positive, got {lam}")
    return gcd(lam, sigma_k(F, k)) == 1 and is_ideal_norm(lam, k)


def maximal_orders_isomorphic(
    lam1: LambdaLike,
    lam2: LambdaLike,
    F: QuaternionAlgebraQ,
    k: ImagQuadField,
) -> bool:
    """Isomorphism test for two maximal orders of the k-algebra extending F,
    given their intersection indices lam1, lam2 against a common reference.

    The mutual intersection index is lam1*lam2 modulo squares, and the
    orders are isomorphic iff some squarefree f | sigma_k(F) makes
    (f * lam1 * lam2, -d)_v = +1 at every place.
    """
    m = squarefree_part(_lam(lam1).value * _lam(lam2).value)
    return any(
        character_is_trivial(f * m, k) for f in squarefree_divisors(sigma_k(F, k))
    )


def intersection_character(
    F: QuaternionAlgebraQ, lam_M: LambdaLike, k: ImagQuadField
) -> HilbertCharacter:
    """The Hilbert character forced on the index of F meet M, for M a maximal
    order of M2(k) of type lam_M (measured against M2(o)).

    Requires sigma_k(F) = 1, i.e. that F embeds in M2(k). The character is
    v -> (F at v) * (sigma(F) * lam_M, -d)_v.
    """
    if sigma_k(F, k) != 1:
        raise ValueError("F does not embed in M2(k): sigma_k(F) != 1")
    lam_M = _lam(lam_M)
    sweep = set(relevant_places(sigma(F) * lam_M.value, k.d)) | F.ramified
    minus = frozenset(
        v
        for v in sweep
        if local_symbol(F, v) * hilbert_symbol(sigma(F) * lam_M.value, -k.d, v) == -1
    )
    return HilbertCharacter(minus)


def joint_intersection_factor(
    F: QuaternionAlgebraQ,
    lam_F: LambdaLike,
    F2: QuaternionAlgebraQ,
    lam_F2: LambdaLike,
    lam_MM2: LambdaLike,
    k: ImagQuadField,
) -> Optional[int]:
    """The squarefree f | sigma_k(F) linking the intersection data of two
    rational algebras inside a common k-algebra.

    Searches for f with, at every place v,
    (sigma(F)*lam_F*f*lam_MM2*sigma(F2)*lam_F2, -d)_v = (F at v)*(F2 at v).
    Returns None when no divisor satisfies the identity, which signals
    inconsistent input data.
    """
    if sigma_k(F, k) != sigma_k(F2, k):
        raise ValueError("no common extension: sigma_k values differ")
    base = (
        sigma(F)
        * _lam(lam_F).value
        * _lam(lam_MM2).value
        * sigma(F2)
        * _lam(lam_F2).value
    )
    sweep = set(relevant_places(base, sigma_k(F, k), k.d)) | F.ramified | F2.ramified
    for f in squarefree_divisors(sigma_k(F, k)):
        if all(
            hilbert_symbol(base * f, -k.d, v)
            == local_symbol(F, v) * local_symbol(F2, v)
            for v in sweep
        ):
            return f
    return None


@dataclass(frozen=True)
class LocalCountQuery:
    """Data of a local embedding-count question at a finite prime p.

    ``split_type`` is the behavior of p in k, ``algebra_split`` says whether
    the algebra splits at p, ``index_exponent`` is e with index p^e, and
    ``d_mod4`` (only consulted for ramified p = 2) is d mod 4 in {1, 2}.
    A prime ramified in k with d = 3 mod 4 does not occur: 2 is then not
    ramified in k and the query routes through the split/inert rows.
    """

    p: int
    split_type: SplitType
    algebra_split: bool
    index_exponent: int
    d_mod4: int | None = None


# ramified p = 2 table: rows by e = 1..6 and >= 7, keyed (d mod 4, split?)
_TWO_ADIC_TABLE = {
    (1, True): (1, 1, 2, 4, 8, 8, 8),
    (1, False): (3, 2, 4, 8, 8, 8, 8),
    (2, True): (1, 1, 2, 4, 4, 8, 16),
    (2, False): (3, 2, 4, 4, 8, 16, 16),
}


def local_embedding_count(q: LocalCountQuery) -> int:
    """Number of local maximal orders of the extended algebra meeting the
    rational algebra in a fixed order of index p^e."""
    e = q.index_exponent
    if e < 0:
        raise ValueError("index exponent must be nonnegative")
    if q.split_type is SplitType.SPLIT:
        return 1 if e == 0 else 2
    if q.split_type is SplitType.INERT:
        if e % 2:
            raise ValueError("inert primes only admit even index exponents")
        return 1 if (e == 0 and q.algebra_split) else 2
    # ramified in k
    if e == 0:
        return 1
    if q.p != 2:
        p = q.p
        if e == 1:
            return 1 if q.algebra_split else p + 1
        if e == 2:
            return p - 1 if q.algebra_split else 2 * p
        return 2 * p
    if q.d_mod4 not in (1, 2):
        raise ValueError("ramified p = 2 requires d mod 4 in {1, 2}")
    row = _TWO_ADIC_TABLE[(q.d_mod4, q.algebra_split)]
    return row[min(e, 7) - 1]


def global_embedding_count(
    lam: int, F: QuaternionAlgebraQ, k: ImagQuadField
) -> int:
    """Number of maximal orders of the extended k-algebra meeting F exactly
    in a fixed compatible order of index lam.

    Product of the local counts over the primes of lam together with the
    finite ramified primes of F that are inert in k (which contribute 2
    even at exponent 0); all other primes contribute 1.
    """
    if not compatible_order_exists(lam, F, k):
        raise IncompatibleIndexError(
            f"index {lam} is not compatible for this algebra over d={k.d}"
        )
    ram = set(F.finite_ramified())
    primes = set(factorize(lam).primes()) if lam > 1 else set()
    primes |= {p for p in ram if splitting(k, p) is SplitType.INERT}
    count = 1
    for p in sorted(primes):
        q = LocalCountQuery(
            p=p,
            split_type=splitting(k, p),
            algebra_split=p not in ram,
            index_exponent=valuation(lam, p) if lam % p == 0 else 0,
            d_mod4=k.d % 4 if p == 2 else None,
        )
        count *= local_embedding_count(q)
    return count


def unit_character_divisors(F: QuaternionAlgebraQ, k: ImagQuadField) -> list[int]:
    """Divisors f of sigma_k(F) with (f, -d)_v = +1 at every place."""
    return [
        f for f in squarefree_divisors(sigma_k(F, k)) if character_is_trivial(f, k)
    ]


def ramified_pairing_rank(F: QuaternionAlgebraQ, k: ImagQuadField) -> int:
    """GF(2)-rank of the pairing matrix h[p][q] = (1 - (q, -d)_p) / 2, with p
    over the primes of the discriminant and q over the primes of sigma_k(F).

    The divisor-enumeration exponent s satisfies s = r - rank: a divisor f
    has everywhere-trivial character iff its exponent vector lies in the
    kernel of the pairing (the symbol (f, -d)_v can be -1 only at v | D).
    """
    sk = sigma_k(F, k)
    qs = factorize(sk).primes() if sk > 1 else ()
    rows = []
    for p in k.discriminant_primes():
        mask = 0
        for j, q in enumerate(qs):
            if hilbert_symbol(q, -k.d, Place(p)) == -1:
                mask |= 1 << j
        rows.append(mask)
    # Gaussian elimination over GF(2) on bitmask rows
    pivots: list[int] = []
    for row in rows:
        cur = row
        for piv in pivots:
            if cur & (1 << (piv.bit_length() - 1)):
                cur ^= piv
        if cur:
            pivots.append(cur)
    return len(pivots)


def automorphism_index(F: QuaternionAlgebraQ, k: ImagQuadField) -> int:
    """Index of inner automorphisms in all automorphisms of a maximal order
    of the k-algebra extending F: 2^(t+r+s-1), with t the number of primes
    of the discriminant, r the number of primes of sigma_k(F), and 2^s the
    number of divisors of sigma_k(F) with everywhere-trivial character."""
    t = len(k.discriminant_primes())
    sk = sigma_k(F, k)
    r = len(factorize(sk).primes()) if sk > 1 else 0
    n_trivial = len(unit_character_divisors(F, k))
    s = n_trivial.bit_length() - 1
    assert 1 << s == n_trivial, "trivial-character divisors must number a power of 2"
    return 1 << (t + r + s - 1)


def embedding_class_counts(
    lam: int, F: QuaternionAlgebraQ, k: ImagQuadField
) -> tuple[int, int]:
    """(B, B1): unit-conjugacy and norm-one-conjugacy class counts of optimal
    embeddings of the compatible order of index lam; B1 = 2B."""
    B = global_embedding_count(lam, F, k) * automorphism_index(F, k)
    return B, 2 * B
