"""Lattice enumeration on the tree of maximal orders of M2 over a ramified
local field, recounting local embedding numbers without the count tables.

Setup, for an odd prime p ramified in k = Q(i*sqrt(d)) and a unit class tau:
the rational algebra is realized as F(tau) = {(a, b; tau*conj(b), conj(a))}
inside M2(k_p), together with an explicit F-maximal order, the diagonal
copy of the local quadratic ring with prime element Pi = diag(pi, -pi),
and an anti-diagonal Omega generating an unramified quadratic ring. The
target order of index p^r is O + O * Pi^r * Omega.

Vertices of the tree at distance m from a base lattice class are the
classes h*J*o^2 for J = (pi^a, b; 0, pi^c), a + c = m, b a residue mod
pi^a, with J not divisible by pi. For each vertex the intersection of
F(tau) with the attached maximal order is computed exactly, by solving the
integrality conditions as linear congruences mod p^K, and compared with the
target p-locally. Every computation is exact (integers and Fractions); the
precision K is validated by repeating the count at K + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Optional

from ..arith import Place, hilbert_symbol, is_prime, kronecker, valuation
from ..quadfield import ImagQuadField, SplitType, splitting


class PrecisionError(RuntimeError):
    """The vertex count changed when the working precision was raised."""


# elements of k as (u, w) = u + w * i*sqrt(d); matrices row-major
K = tuple[Fraction, Fraction]
Mat = tuple[K, K, K, K]

_ZERO: K = (Fraction(0), Fraction(0))
_ONE: K = (Fraction(1), Fraction(0))


def _k(u, w=0) -> K:
    return (Fraction(u), Fraction(w))


def _kadd(z: K, w: K) -> K:
    return (z[0] + w[0], z[1] + w[1])


def _ksub(z: K, w: K) -> K:
    return (z[0] - w[0], z[1] - w[1])


def _kmul(d: int, z: K, w: K) -> K:
    return (z[0] * w[0] - d * z[1] * w[1], z[0] * w[1] + z[1] * w[0])


def _kconj(z: K) -> K:
    return (z[0], -z[1])


def _kinv(d: int, z: K) -> K:
    n = z[0] * z[0] + d * z[1] * z[1]
    if n == 0:
        raise ZeroDivisionError("inverting 0 in k")
    return (z[0] / n, -z[1] / n)


def _mat(a, b, c, dd) -> Mat:
    return (a, b, c, dd)


def _mmul(d: int, A: Mat, B: Mat) -> Mat:
    return (
        _kadd(_kmul(d, A[0], B[0]), _kmul(d, A[1], B[2])),
        _kadd(_kmul(d, A[0], B[1]), _kmul(d, A[1], B[3])),
        _kadd(_kmul(d, A[2], B[0]), _kmul(d, A[3], B[2])),
        _kadd(_kmul(d, A[2], B[1]), _kmul(d, A[3], B[3])),
    )


def _minv(d: int, A: Mat) -> Mat:
    det = _ksub(_kmul(d, A[0], A[3]), _kmul(d, A[1], A[2]))
    inv = _kinv(d, det)
    neg = lambda z: (-z[0], -z[1])
    return (
        _kmul(d, A[3], inv),
        _kmul(d, neg(A[1]), inv),
        _kmul(d, neg(A[2]), inv),
        _kmul(d, A[0], inv),
    )


def _mtrace(A: Mat) -> K:
    return _kadd(A[0], A[3])


def _vp_frac(x: Fraction, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0")
    return valuation(x.numerator, p) - valuation(x.denominator, p)


def _p_integral(x: Fraction, p: int) -> bool:
    return x.denominator % p != 0


# --- exact integer lattice algebra -------------------------------------


def _integer_kernel(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {x in Z^ncols : rows . x = 0}, by unimodular column ops."""
    cols = [[rows[r][j] for r in range(len(rows))] for j in range(ncols)]
    ucols = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    active = list(range(ncols))
    for r in range(len(rows)):
        while True:
            nz = [j for j in active if cols[j][r] != 0]
            if len(nz) <= 1:
                if nz:
                    active.remove(nz[0])
                break
            nz.sort(key=lambda j: abs(cols[j][r]))
            j0, j1 = nz[0], nz[1]
            q = cols[j1][r] // cols[j0][r]
            for rr in range(len(rows)):
                cols[j1][rr] -= q * cols[j0][rr]
            for rr in range(ncols):
                ucols[j1][rr] -= q * ucols[j0][rr]
    return [ucols[j] for j in active]


def _congruence_lattice(
    forms: list[tuple[list[int], int]], p: int, dim: int
) -> list[list[int]]:
    """Basis of {x in Z^dim : g.x = 0 mod p^M for each (g, M)}."""
    if not forms:
        return [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    nrows = len(forms)
    rows = []
    for i, (g, M) in enumerate(forms):
        row = list(g) + [0] * nrows
        row[dim + i] = p**M
        rows.append(row)
    kern = _integer_kernel(rows, dim + nrows)
    basis = [v[:dim] for v in kern]
    if len(basis) != dim:
        raise PrecisionError(
            f"congruence system produced rank {len(basis)}, expected {dim}"
        )
    return basis


def _det4(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    det = Fraction(1)
    n = len(m)
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            for c in range(i, n):
                m[r][c] -= f * m[i][c]
    return det


def _inv4(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            raise ValueError("singular lattice basis")
        m[i], m[piv] = m[piv], m[i]
        f = m[i][i]
        m[i] = [x / f for x in m[i]]
        for r in range(n):
            if r != i and m[r][i] != 0:
                g = m[r][i]
                m[r] = [x - g * y for x, y in zip(m[r], m[i])]
    return [r[n:] for r in m]


def _lattice_leq(sub: list[list[Fraction]], sup: list[list[Fraction]], p: int) -> bool:
    """Whether span_Zp(sub) is contained in span_Zp(sup); bases as rows."""
    inv = _inv4(sup)
    for row in sub:
        for j in range(len(inv)):
            entry = sum(row[i] * inv[i][j] for i in range(len(row)))
            if not _p_integral(entry, p):
                return False
    return True


def _lattice_eq(a: list[list[Fraction]], b: list[list[Fraction]], p: int) -> bool:
    return _lattice_leq(a, b, p) and _lattice_leq(b, a, p)


def _p_index_exponent(
    sup: list[list[Fraction]], sub: list[list[Fraction]], p: int
) -> int:
    return _vp_frac(_det4(sub) / _det4(sup), p)


# --- the algebra F(tau) and its distinguished orders ---------------------


def _f_basis(d: int, tau: int) -> list[Mat]:
    """Q-basis of F(tau): a in {1, pi} on the diagonal, b in {1, pi} off it."""
    pi: K = _k(0, 1)
    neg_pi: K = _k(0, -1)
    return [
        _mat(_ONE, _ZERO, _ZERO, _ONE),
        _mat(pi, _ZERO, _ZERO, neg_pi),
        _mat(_ZERO, _ONE, _k(tau), _ZERO),
        _mat(_ZERO, pi, _k(0, -tau), _ZERO),
    ]


def _coords_in_f(X: Mat, d: int, tau: int) -> list[Fraction]:
    """Coordinates of X in the _f_basis; validates membership in F(tau)."""
    a, b = X[0], X[1]
    if X[2] != _kmul(d, _k(tau), _kconj(b)) or X[3] != _kconj(a):
        raise ValueError("matrix does not lie in F(tau)")
    return [a[0], a[1], b[0], b[1]]


@dataclass(frozen=True)
class LocalLatticeVertex:
    """A vertex of the local tree: the lattice class of (pi^a, b; 0, pi^c)
    applied to the base, at distance a + c from it."""

    p: int
    a: int
    c: int
    b: K
    distance: int


def enumerate_vertices(k: ImagQuadField, p: int, max_distance: int) -> list[LocalLatticeVertex]:
    """All tree vertices at distance <= max_distance from the base class,
    as primitive upper-triangular transition matrices."""
    _validate_ramified(k, p)
    out = []
    for m in range(max_distance + 1):
        for a in range(m + 1):
            c = m - a
            xs = p ** ((a + 1) // 2)
            ys = p ** (a // 2)
            for x in range(xs):
                if a > 0 and c > 0 and x % p == 0:
                    continue
                for y in range(ys):
                    out.append(LocalLatticeVertex(p, a, c, _k(x, y), m))
    return out


def _vertex_matrix(d: int, v: LocalLatticeVertex) -> Mat:
    pi: K = _k(0, 1)
    pow_a = reduce(lambda z, _: _kmul(d, z, pi), range(v.a), _ONE)
    pow_c = reduce(lambda z, _: _kmul(d, z, pi), range(v.c), _ONE)
    return _mat(pow_a, v.b, _ZERO, pow_c)


def _intersection_basis(
    d: int, tau: int, p: int, transition: Mat, K_prec: int
) -> list[list[Fraction]]:
    """Basis (rows, coordinates in the F(tau) basis) of the lattice of
    elements of F(tau) lying in transition * M2(o_p) * transition^-1."""
    t_inv = _minv(d, transition)
    basis = _f_basis(d, tau)
    conj = [_mmul(d, _mmul(d, t_inv, e), transition) for e in basis]
    forms: list[tuple[list[int], int]] = []
    for slot in range(4):
        for coord in range(2):
            f = [conj[i][slot][coord] for i in range(4)]
            if all(x == 0 for x in f):
                continue
            s = lcm(*(x.denominator for x in f))
            g = [int(x * s) for x in f]
            M = K_prec + valuation(s, p)
            if M > 0:
                forms.append((g, M))
    rows = _congruence_lattice(forms, p, 4)
    scale = Fraction(1, p**K_prec)
    return [[x * scale for x in row] for row in rows]


def _smallest_nonresidue(p: int) -> int:
    for n in range(2, p):
        if kronecker(n, p) == -1:
            return n
    raise ValueError(f"no quadratic non-residue mod {p}")


def _validate_ramified(k: ImagQuadField, p: int) -> None:
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if splitting(k, p) is not SplitType.RAMIFIED:
        raise ValueError(f"p={p} is not ramified in Q(i*sqrt({k.d}))")


def _mat_coords_basis(mats: list[Mat], d: int, tau: int) -> list[list[Fraction]]:
    return [_coords_in_f(X, d, tau) for X in mats]


def _disc_valuation(mats: list[Mat], d: int, p: int) -> int:
    """v_p of det(trd(b_i * b_j)), the squared reduced discriminant."""
    gram = []
    for bi in mats:
        row = []
        for bj in mats:
            tr = _mtrace(_mmul(d, bi, bj))
            if tr[1] != 0:
                raise ValueError("reduced trace not rational: not in F(tau)")
            row.append(tr[0])
        gram.append(row)
    return _vp_frac(_det4(gram), p)


def _count_at_precision(
    k: ImagQuadField, p: int, eps: int, r: int, K_prec: int
) -> int:
    d = k.d
    pi: K = _k(0, 1)
    n = _smallest_nonresidue(p)
    if eps == 1:
        tau_star = 1
        # F(1) is the fixed algebra of X -> T conj(X) T with T = antidiag(1,1);
        # it equals g^-1 M2(Qp) g for g = (1, 1; pi, -pi), so its maximal
        # orders are the g-conjugates of the integral vertex orders.
        g = _mat(_ONE, _ONE, pi, _k(0, -1))
        g_inv = _minv(d, g)
        conj_in = lambda X: _mmul(d, _mmul(d, g_inv, X), g)
        fmax_mats = [
            conj_in(_mat(_ONE, _ZERO, _ZERO, _ZERO)),
            conj_in(_mat(_ZERO, _ONE, _ZERO, _ZERO)),
            conj_in(_mat(_ZERO, _ZERO, _ONE, _ZERO)),
            conj_in(_mat(_ZERO, _ZERO, _ZERO, _ONE)),
        ]
        Pi = _mat(pi, _ZERO, _ZERO, _k(0, -1))
        Om = conj_in(_mat(_ZERO, _ONE, _k(n), _ZERO))
        base = g_inv
        expected_disc = 0
    else:
        tau_star = n
        basis = _f_basis(d, tau_star)
        fmax_mats = list(basis)
        Pi = basis[1]
        Om = basis[2]
        base = _mat(_ONE, _ZERO, _ZERO, _ONE)
        expected_disc = 2

    if _disc_valuation(fmax_mats, d, p) != expected_disc:
        raise PrecisionError("maximal-order discriminant check failed")

    fmax = _mat_coords_basis(fmax_mats, d, tau_star)
    # O + O Pi^r Omega has Z_p-basis {1, Pi, Pi^r Om, Pi^(r+1) Om}
    pows = [_mat(_ONE, _ZERO, _ZERO, _ONE)]
    for _ in range(r + 1):
        pows.append(_mmul(d, pows[-1], Pi))
    target_mats = [
        pows[0],
        Pi,
        _mmul(d, pows[r], Om),
        _mmul(d, pows[r + 1], Om),
    ]
    target = _mat_coords_basis(target_mats, d, tau_star)
    if not _lattice_leq(target, fmax, p):
        raise PrecisionError("target order not inside the maximal order")
    if _p_index_exponent(fmax, target, p) != r:
        raise PrecisionError("target order has the wrong index")
    if r == 0 and not _lattice_eq(target, fmax, p):
        raise PrecisionError("index-1 target differs from the maximal order")

    base_inv = _minv(d, base)
    for X in fmax_mats:
        Y = _mmul(d, _mmul(d, base_inv, X), base)
        if not all(_p_integral(co, p) for entry in Y for co in entry):
            raise PrecisionError("maximal order not inside the base vertex")

    count = 0
    for v in enumerate_vertices(k, p, r + 1):
        transition = _mmul(d, base, _vertex_matrix(d, v))
        lat = _intersection_basis(d, tau_star, p, transition, K_prec)
        if _lattice_eq(lat, target, p):
            if v.distance != r:
                raise RuntimeError(
                    f"intersection matched target at distance {v.distance} != {r}"
                )
            count += 1
    return count


def count_maximal_orders_local(
    p: int,
    k: ImagQuadField,
    tau: int,
    r: int,
    *,
    precision: Optional[int] = None,
) -> int:
    """Number of local maximal orders of M2(k_p) meeting F(tau) exactly in
    the order of index p^r over the diagonal quadratic ring.

    tau enters only through its square class at p (its Hilbert symbol
    against -d decides whether F(tau) splits); internally a unit
    representative of that class is used. The count is computed at working
    precision K = r + 3 (or the given override) and re-checked at K + 1;
    disagreement raises PrecisionError.
    """
    _validate_ramified(k, p)
    if not 0 <= r <= 3:
        raise ValueError(f"r must lie in 0..3, got {r}")
    if tau == 0 or valuation(tau, p) > 1:
        raise ValueError("tau must be nonzero with v_p(tau) <= 1")
    eps = hilbert_symbol(tau, -k.d, Place(p))
    K_prec = precision if precision is not None else r + 3
    first = _count_at_precision(k, p, eps, r, K_prec)
    second = _count_at_precision(k, p, eps, r, K_prec + 1)
    if first != second:
        raise PrecisionError(
            f"count unstable: {first} at K={K_prec}, {second} at K={K_prec + 1}"
        )
    return first
