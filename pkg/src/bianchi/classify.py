"""Which non-cyclic finite groups live in PSL2(o) and in unit groups of
maximal orders, and how many conjugacy classes of them there are.

Every question is answered twice where possible: by the closed-form
congruence criteria and by the Hilbert-symbol / embedding-count machinery.
``classify_report`` insists the two conjugacy-count paths agree and raises
on mismatch, which serves as the library's built-in self test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arith import Place, factorize, hilbert_symbol
from .orders import (
    LambdaClass,
    LambdaLike,
    automorphism_index,
    global_embedding_count,
)
from .quadfield import ImagQuadField, is_ideal_norm
from .quaternion import SubgroupKind, group_algebra


class NoHostOrderError(ValueError):
    """The group type exists in no maximal order at all for this d."""


class GammaMismatchError(RuntimeError):
    """The two independent conjugacy-count paths disagree (internal error)."""


def _field(d: int) -> ImagQuadField:
    # NonSquarefreeError propagates: every criterion assumes squarefree d
    return ImagQuadField(d)


def _odd_prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p in factorize(n).primes() if p != 2)


def contains_in_psl2o(kind: SubgroupKind, d: int) -> bool:
    """Existence of the group type in PSL2(o), by congruences on the primes
    of d: D3 needs p = 1 mod 3 for all p != 3 dividing d; T needs p = 1 or
    3 mod 8 for all odd p | d; maximal D2 needs p = 1 mod 4 for all odd p | d.
    """
    _field(d)
    if kind is SubgroupKind.D3:
        return all(p % 3 == 1 for p in factorize(d).primes() if p != 3)
    if kind is SubgroupKind.T:
        return all(p % 8 in (1, 3) for p in _odd_prime_divisors(d))
    return all(p % 4 == 1 for p in _odd_prime_divisors(d))


def failing_primes(kind: SubgroupKind, d: int) -> list[int]:
    """The prime divisors of d violating the kind's congruence condition."""
    _field(d)
    if kind is SubgroupKind.D3:
        return [p for p in factorize(d).primes() if p != 3 and p % 3 != 1]
    if kind is SubgroupKind.T:
        return [p for p in _odd_prime_divisors(d) if p % 8 not in (1, 3)]
    return [p for p in _odd_prime_divisors(d) if p % 4 != 1]


_KIND_MULTIPLIER = {
    SubgroupKind.D3: -3,
    SubgroupKind.T: -2,
    SubgroupKind.D2MAX: -1,
}

_KIND_EXCLUDED_PRIME = {
    SubgroupKind.D3: 3,
    SubgroupKind.T: 2,
    SubgroupKind.D2MAX: 2,
}


def contains_in_order(kind: SubgroupKind, lam_M: LambdaLike, d: int) -> bool:
    """Existence of the group type in the unit group of an M2(k)-maximal
    order of type lam_M: the symbol (m * lam_M, -d)_p with m in {-3, -2, -1}
    must be +1 at every place outside {3, oo} resp. {2, oo}.
    """
    k = _field(d)
    lam = lam_M if isinstance(lam_M, LambdaClass) else LambdaClass.from_index(lam_M)
    if not is_ideal_norm(lam.value, k):
        raise ValueError(
            f"lam={lam.value} is not an admissible M2(k)-order type for d={d}"
        )
    a = _KIND_MULTIPLIER[kind] * lam.value
    excluded = _KIND_EXCLUDED_PRIME[kind]
    # symbols are +1 automatically outside 2*a*d
    sweep = {2} | set(factorize(a * d).primes())
    sweep.discard(excluded)
    return all(hilbert_symbol(a, -d, Place(p)) == 1 for p in sorted(sweep))


def host_algebra_split(kind: SubgroupKind, d: int) -> bool:
    """Whether the k-algebra hosting the group type is the matrix algebra.

    D3: split iff d != 2 mod 3; T: split iff d != 7 mod 8. A maximal D2
    exists in some maximal order only for d != 3 mod 4 (and then the host
    is always split); otherwise NoHostOrderError is raised.
    """
    _field(d)
    if kind is SubgroupKind.D3:
        return d % 3 != 2
    if kind is SubgroupKind.T:
        return d % 8 != 7
    if d % 4 == 3:
        raise NoHostOrderError(
            f"maximal 2-dihedral groups exist in no maximal order for d={d}"
        )
    return True


def gamma(kind: SubgroupKind, d: int) -> int:
    """Conjugacy classes of maximal finite subgroups of the given type in
    the unit group of a maximal order of its host algebra (closed form).

    D3 counts over t = #primes != 3 of the discriminant; T and maximal D2
    count over t = #odd primes of d. The answer is 2^t except in the
    division-host cases, where it doubles exactly when every relevant prime
    of d lies in the trivial congruence class (+-1 mod 12 resp. mod 8).
    """
    k = _field(d)
    if kind is SubgroupKind.D3:
        t = sum(1 for p in k.discriminant_primes() if p != 3)
        if d % 3 != 2:
            return 1 << t
        odd = _odd_prime_divisors(d)
        if all(p % 12 in (1, 11) for p in odd):
            return 1 << (t + 1)
        return 1 << t
    if kind is SubgroupKind.T:
        t = len(_odd_prime_divisors(d))
        if d % 8 != 7:
            return 1 << t
        if all(p % 8 in (1, 7) for p in factorize(d).primes()):
            return 1 << (t + 1)
        return 1 << t
    host_algebra_split(kind, d)  # raises for d = 3 mod 4
    return 1 << len(_odd_prime_divisors(d))


def gamma_composed(kind: SubgroupKind, d: int) -> int:
    """The same count along the independent embedding path:
    2 * C(group order) * [Aut : Inn of the maximal order] / (group aut index).
    """
    k = _field(d)
    data = group_algebra(kind)
    if kind is SubgroupKind.D2MAX:
        host_algebra_split(kind, d)  # raises for d = 3 mod 4
    C = global_embedding_count(data.lambda_of_group_order, data.algebra, k)
    index = automorphism_index(data.algebra, k)
    num = 2 * C * index
    if num % data.aut_index:
        raise GammaMismatchError(
            f"embedding-path count {num} not divisible by {data.aut_index}"
        )
    return num // data.aut_index


@dataclass(frozen=True)
class KindReport:
    kind: SubgroupKind
    exists_in_psl2o: bool
    host_algebra_split: Optional[bool]
    gamma: Optional[int]
    failing_primes: tuple[int, ...]


@dataclass(frozen=True)
class ClassificationReport:
    d: int
    kinds: tuple[KindReport, ...]

    def for_kind(self, kind: SubgroupKind) -> KindReport:
        for entry in self.kinds:
            if entry.kind is kind:
                return entry
        raise KeyError(kind)


def classify_report(d: int) -> ClassificationReport:
    """Full classification for one d, with the conjugacy count computed by
    both paths and checked for equality."""
    _field(d)
    entries = []
    for kind in (SubgroupKind.D3, SubgroupKind.T, SubgroupKind.D2MAX):
        exists = contains_in_psl2o(kind, d)
        fails = tuple(failing_primes(kind, d))
        try:
            split = host_algebra_split(kind, d)
        except NoHostOrderError:
            entries.append(KindReport(kind, exists, None, None, fails))
            continue
        g_closed = gamma(kind, d)
        g_embed = gamma_composed(kind, d)
        if g_closed != g_embed:
            raise GammaMismatchError(
                f"conjugacy-count paths disagree for {kind.value}, d={d}: "
                f"closed form {g_closed} vs embedding path {g_embed}"
            )
        entries.append(KindReport(kind, exists, split, g_closed, fails))
    return ClassificationReport(d, tuple(entries))
