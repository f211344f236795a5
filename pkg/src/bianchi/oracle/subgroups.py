"""Bounded-height search for finite subgroups of SL2(o).

Matrices are kept over the ring of integers o = Z[omega] of Q(i*sqrt(d)),
each entry an integer pair (x, y) meaning x + y*omega. Finite projective
order forces the reduced trace of a non-central element into {0, +1, -1},
so the search enumerates trace-constrained determinant-1 matrices and then
pairs them. The pairing conditions collapse to the single scalar equation
trace(U*V) = 0 in both cases of interest:

* U, V of trace 0 anticommute iff trace(U*V) = 0 (2-dihedral pairs), and
* for U of trace 1 and V of trace 0, V*U*V^-1 = U^-1 iff trace(U*V) = 0
  (3-dihedral pairs),

which makes the pair scan a bilinear-form zero search. A 2-dihedral pair
extends to a tetrahedral group through W = (1 - U - V - UV)/2; the group is
a maximal finite 2-dihedral group exactly when W fails to be integral, and
all eight choices of signs in W are integral or non-integral together.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from ..quadfield import ImagQuadField  # validates d squarefree
from ..quaternion import SubgroupKind

MAX_HEIGHT = 16

Pair = tuple[int, int]
Flat = tuple[int, int, int, int, int, int, int, int]


@dataclass(frozen=True)
class OMatrix:
    """A 2x2 matrix over o, entries (x, y) = x + y*omega."""

    a: Pair
    b: Pair
    c: Pair
    d: Pair

    def flat(self) -> Flat:
        return (*self.a, *self.b, *self.c, *self.d)

    @classmethod
    def from_flat(cls, m: Flat) -> "OMatrix":
        return cls(m[0:2], m[2:4], m[4:6], m[6:8])


@dataclass(frozen=True)
class SubgroupWitness:
    """Generators in SL2(o) realizing the requested group type.

    For D3: [U, V] with U^3 = -I, V^2 = -I, VUV^-1 = U^-1.
    For T: [U, V, W] with U^2 = V^2 = -I anticommuting and integral
    W = (1 - U - V - UV)/2 of order 6.
    For D2MAX: [U, V] as for T but with the extension W non-integral.
    """

    kind: SubgroupKind
    generators: tuple[OMatrix, ...]
    relations_verified: bool


def _ring_constants(d: int) -> tuple[int, int]:
    """(s, t) with omega^2 = s*omega + t."""
    if d % 4 == 3:
        return 1, -(1 + d) // 4
    return 0, -d


def _omul(z1: Pair, z2: Pair, s: int, t: int) -> Pair:
    x1, y1 = z1
    x2, y2 = z2
    yy = y1 * y2
    return (x1 * x2 + t * yy, x1 * y2 + y1 * x2 + s * yy)


def _oconj(z: Pair, s: int) -> Pair:
    # conj(omega) = s - omega
    x, y = z
    return (x + s * y, -y)


def _onorm(z: Pair, s: int, t: int) -> int:
    x, y = z
    return x * x + s * x * y - t * y * y


def _mmul(A: Flat, B: Flat, s: int, t: int) -> Flat:
    a1, b1, c1, d1 = A[0:2], A[2:4], A[4:6], A[6:8]
    a2, b2, c2, d2 = B[0:2], B[2:4], B[4:6], B[6:8]

    def add(u: Pair, v: Pair) -> Pair:
        return (u[0] + v[0], u[1] + v[1])

    return (
        *add(_omul(a1, a2, s, t), _omul(b1, c2, s, t)),
        *add(_omul(a1, b2, s, t), _omul(b1, d2, s, t)),
        *add(_omul(c1, a2, s, t), _omul(d1, c2, s, t)),
        *add(_omul(c1, b2, s, t), _omul(d1, d2, s, t)),
    )


def _mdet(A: Flat, s: int, t: int) -> Pair:
    ad = _omul(A[0:2], A[6:8], s, t)
    bc = _omul(A[2:4], A[4:6], s, t)
    return (ad[0] - bc[0], ad[1] - bc[1])


def _mtrace(A: Flat) -> Pair:
    return (A[0] + A[6], A[1] + A[7])


def _mneg(A: Flat) -> Flat:
    return tuple(-x for x in A)  # type: ignore[return-value]


def _scalar(n: int) -> Flat:
    return (n, 0, 0, 0, 0, 0, n, 0)


@lru_cache(maxsize=None)
def _torsion_flat(d: int, H: int) -> tuple[tuple[Flat, ...], tuple[Flat, ...]]:
    """Sorted trace-0 and trace-1 determinant-1 matrices within the box."""
    s, t = _ring_constants(d)
    box = [(x, y) for x in range(-H, H + 1) for y in range(-H, H + 1)]
    nonzero = [z for z in box if z != (0, 0)]
    out0: set[Flat] = set()
    out1: set[Flat] = set()
    for tr, out in ((0, out0), (1, out1)):
        for alpha in box:
            delta = (tr - alpha[0], -alpha[1])
            if abs(delta[0]) > H:
                continue
            prod = _omul(alpha, delta, s, t)
            n = (prod[0] - 1, prod[1])
            if n == (0, 0):
                # beta = 0 and gamma arbitrary
                for gamma in box:
                    out.add((*alpha, 0, 0, *gamma, *delta))
            for beta in nonzero:
                nb = _onorm(beta, s, t)
                q = _omul(n, _oconj(beta, s), s, t)
                if q[0] % nb or q[1] % nb:
                    continue
                gamma = (q[0] // nb, q[1] // nb)
                if abs(gamma[0]) > H or abs(gamma[1]) > H:
                    continue
                out.add((*alpha, *beta, *gamma, *delta))
    return tuple(sorted(out0)), tuple(sorted(out1))


def enumerate_torsion_elements(d: int, H: int) -> list[OMatrix]:
    """All A in SL2(o) with |x|, |y| <= H in every entry and trace in
    {0, +1, -1}, without duplicates."""
    ImagQuadField(d)
    if not 0 <= H <= MAX_HEIGHT:
        raise ValueError(f"height bound must lie in 0..{MAX_HEIGHT}, got {H}")
    t0, t1 = _torsion_flat(d, H)
    flats = set(t0) | set(t1) | {_mneg(m) for m in t1}
    return [OMatrix.from_flat(m) for m in sorted(flats)]


def _trace_uv_forms(d: int) -> tuple[np.ndarray, np.ndarray]:
    """8x8 integer forms with vec(U).M.vec(V) = the two coordinates of
    trace(U*V)."""
    s, t = _ring_constants(d)
    Mx = np.zeros((8, 8), dtype=np.int64)
    My = np.zeros((8, 8), dtype=np.int64)
    # trace(UV) = aU*aV + bU*cV + cU*bV + dU*dV, entry slots (a,b,c,d)=(0,2,4,6)
    for i, j in ((0, 0), (2, 4), (4, 2), (6, 6)):
        Mx[i][j] += 1
        Mx[i + 1][j + 1] += t
        My[i][j + 1] += 1
        My[i + 1][j] += 1
        My[i + 1][j + 1] += s
    return Mx, My


def _candidate_pairs(
    left: tuple[Flat, ...], right: tuple[Flat, ...], d: int
) -> Iterator[tuple[Flat, Flat]]:
    """Pairs (U, V) with trace(U*V) = 0, in lexicographic order."""
    if not left or not right:
        return
    Mx, My = _trace_uv_forms(d)
    A = np.array(left, dtype=np.float64)
    B = np.array(right, dtype=np.float64)
    BxT = (B @ Mx.T.astype(np.float64)).T
    ByT = (B @ My.T.astype(np.float64)).T
    chunk = max(1, 4_000_000 // max(1, len(right)))
    for lo in range(0, len(A), chunk):
        blk = A[lo : lo + chunk]
        zero = ((blk @ BxT) == 0.0) & ((blk @ ByT) == 0.0)
        for i, j in np.argwhere(zero):
            yield left[lo + int(i)], right[int(j)]


def _half_extension(U: Flat, V: Flat, s: int, t: int) -> tuple[Flat, bool]:
    """2*W for W = (1 - U - V - UV)/2, and whether W is integral."""
    UV = _mmul(U, V, s, t)
    w2 = tuple(
        (1 if i in (0, 6) else 0) - U[i] - V[i] - UV[i] for i in range(8)
    )
    return w2, all(x % 2 == 0 for x in w2)  # type: ignore[return-value]


def _check_d3(U: Flat, V: Flat, s: int, t: int) -> bool:
    if _mtrace(U) != (1, 0) or _mtrace(V) != (0, 0):
        return False
    if _mdet(U, s, t) != (1, 0) or _mdet(V, s, t) != (1, 0):
        return False
    # U^3 = -I and V^2 = -I follow from trace and det; verify anyway
    U2 = _mmul(U, U, s, t)
    if _mmul(U2, U, s, t) != _scalar(-1):
        return False
    if _mmul(V, V, s, t) != _scalar(-1):
        return False
    # VUV^-1 = U^-1 with U^-1 = (1 - U): compare VU against (1-U)V
    VU = _mmul(V, U, s, t)
    one_minus_U = tuple(x - u for x, u in zip(_scalar(1), U))
    return VU == _mmul(one_minus_U, V, s, t)  # type: ignore[arg-type]


def _check_d2_pair(U: Flat, V: Flat, s: int, t: int) -> bool:
    if _mtrace(U) != (0, 0) or _mtrace(V) != (0, 0):
        return False
    if _mdet(U, s, t) != (1, 0) or _mdet(V, s, t) != (1, 0):
        return False
    if _mmul(U, U, s, t) != _scalar(-1) or _mmul(V, V, s, t) != _scalar(-1):
        return False
    UV = _mmul(U, V, s, t)
    VU = _mmul(V, U, s, t)
    return UV == _mneg(VU)


def find_subgroup(
    kind: SubgroupKind, d: int, H: int
) -> Optional[SubgroupWitness]:
    """First witness, in lexicographic candidate order, of the group type
    among height-bounded matrices; None when the bounded search is exhausted.

    Absence is a value, not an error: the bound H caps the search, so None
    only certifies nonexistence within the box.
    """
    ImagQuadField(d)
    if not 0 <= H <= MAX_HEIGHT:
        raise ValueError(f"height bound must lie in 0..{MAX_HEIGHT}, got {H}")
    s, t = _ring_constants(d)
    t0, t1 = _torsion_flat(d, H)
    if kind is SubgroupKind.D3:
        for U, V in _candidate_pairs(t1, t0, d):
            if _check_d3(U, V, s, t):
                gens = (OMatrix.from_flat(U), OMatrix.from_flat(V))
                return SubgroupWitness(kind, gens, True)
        return None
    want_integral = kind is SubgroupKind.T
    for U, V in _candidate_pairs(t0, t0, d):
        if not _check_d2_pair(U, V, s, t):
            continue
        w2, integral = _half_extension(U, V, s, t)
        if integral != want_integral:
            continue
        if integral:
            w2_sq = _mmul(w2, w2, s, t)
            if _mmul(w2_sq, w2, s, t) != _scalar(-8):
                continue
            W = OMatrix.from_flat(tuple(x // 2 for x in w2))  # type: ignore[arg-type]
            gens = (OMatrix.from_flat(U), OMatrix.from_flat(V), W)
        else:
            gens = (OMatrix.from_flat(U), OMatrix.from_flat(V))
        return SubgroupWitness(kind, gens, True)
    return None


def verify_witness(witness: SubgroupWitness, d: int) -> bool:
    """Exact re-verification of a witness's defining relations, independent
    of how it was found."""
    s, t = _ring_constants(d)
    U = witness.generators[0].flat()
    V = witness.generators[1].flat()
    if witness.kind is SubgroupKind.D3:
        return len(witness.generators) == 2 and _check_d3(U, V, s, t)
    if not _check_d2_pair(U, V, s, t):
        return False
    w2, integral = _half_extension(U, V, s, t)
    if witness.kind is SubgroupKind.T:
        if len(witness.generators) != 3 or not integral:
            return False
        W = witness.generators[2].flat()
        if tuple(2 * x for x in W) != w2:
            return False
        w2_sq = _mmul(w2, w2, s, t)
        return _mmul(w2_sq, w2, s, t) == _scalar(-8)
    return len(witness.generators) == 2 and not integral
