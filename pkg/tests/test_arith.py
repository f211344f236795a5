import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bianchi.arith import (
    INFINITY,
    Factorization,
    Place,
    factorize,
    hilbert_symbol,
    is_prime,
    kronecker,
    relevant_places,
    squarefree_part,
)
from solver_oracle import hilbert_symbol_by_search

nonzero_ints = st.integers(min_value=-10**6, max_value=10**6).filter(lambda n: n != 0)
small_nonzero = st.integers(min_value=-300, max_value=300).filter(lambda n: n != 0)


def test_place_validation():
    assert Place.finite(7).p == 7
    assert Place.infinity().is_infinite
    with pytest.raises(ValueError):
        Place(6)
    with pytest.raises(ValueError):
        Place(1)


def test_factorize_examples():
    assert factorize(1) == Factorization(1, ())
    assert factorize(-12) == Factorization(-1, ((2, 2), (3, 1)))
    assert is_prime(9973)
    assert factorize(9973) == Factorization(1, ((9973, 1),))


def test_factorize_rejects_zero_and_overflow():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(2**63)


@given(nonzero_ints)
def test_factorize_roundtrip(n):
    fac = factorize(n)
    assert fac.value() == n
    assert list(fac.primes()) == sorted(set(fac.primes()))
    assert all(e >= 1 and is_prime(p) for p, e in fac.factors)


def test_squarefree_part_examples():
    assert squarefree_part(4) == 1
    assert squarefree_part(-18) == -2
    assert squarefree_part(360) == 10


@given(nonzero_ints)
def test_squarefree_part_contract(n):
    s = squarefree_part(n)
    q = n // s
    assert n == s * q
    r = int(round(q**0.5))
    assert max(r - 1, 0) ** 2 == q or r**2 == q or (r + 1) ** 2 == q
    assert (s > 0) == (n > 0)


@given(small_nonzero, st.integers(min_value=1, max_value=50))
def test_squarefree_part_square_invariance(n, m):
    assert squarefree_part(n * m * m) == squarefree_part(n)


def test_kronecker_examples():
    assert kronecker(2, 7) == 1  # 3^2 = 2 mod 7
    assert all(kronecker(a, 1) == 1 for a in range(-5, 6))
    assert kronecker(-1, 3) == -1


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47])
def test_kronecker_is_legendre_at_odd_primes(p):
    squares = {x * x % p for x in range(1, p)}
    for a in range(p):
        expected = 0 if a == 0 else (1 if a in squares else -1)
        assert kronecker(a, p) == expected


@given(small_nonzero, small_nonzero, small_nonzero)
def test_kronecker_multiplicative(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


def test_hilbert_examples():
    assert hilbert_symbol(-1, -1, INFINITY) == -1
    assert hilbert_symbol(3, 5, Place(11)) == 1
    assert hilbert_symbol(2, 7, Place(7)) == 1
    assert hilbert_symbol(-3, -1, Place(3)) == -1


def test_hilbert_examples_match_search_oracle():
    assert hilbert_symbol_by_search(2, 7, Place(7)) == 1
    assert hilbert_symbol_by_search(-3, -1, Place(3)) == -1
    assert hilbert_symbol_by_search(2, -1, Place(2)) == 1
    assert hilbert_symbol_by_search(-1, -1, INFINITY) == -1


def test_hilbert_formula_matches_search_on_grid():
    values = [-10, -7, -5, -3, -2, -1, 1, 2, 3, 5, 6, 10]
    for a in values:
        for b in values:
            for v in relevant_places(a, b):
                assert hilbert_symbol(a, b, v) == hilbert_symbol_by_search(a, b, v), (
                    a,
                    b,
                    v,
                )


@given(small_nonzero, small_nonzero)
def test_hilbert_symmetric_and_self_negative(a, b):
    for v in relevant_places(a, b):
        assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
        assert hilbert_symbol(a, -a, v) == 1


@given(small_nonzero, small_nonzero, st.integers(min_value=1, max_value=30))
def test_hilbert_square_class_invariance(a, b, s):
    for v in relevant_places(a, b, s):
        assert hilbert_symbol(a * s * s, b, v) == hilbert_symbol(a, b, v)


@given(small_nonzero, small_nonzero, small_nonzero)
def test_hilbert_bimultiplicative(a, a2, b):
    for v in relevant_places(a, a2, b):
        assert hilbert_symbol(a, b, v) * hilbert_symbol(a2, b, v) == hilbert_symbol(
            a * a2, b, v
        )


@given(nonzero_ints, nonzero_ints)
@settings(max_examples=300)
def test_hilbert_reciprocity(a, b):
    prod = 1
    for v in relevant_places(a, b):
        prod *= hilbert_symbol(a, b, v)
    assert prod == 1


def test_symbols_trivial_off_relevant_places():
    # spot checks at places outside the relevant set
    assert hilbert_symbol(3, 5, Place(7)) == 1
    assert hilbert_symbol(-6, 35, Place(11)) == 1


def test_hilbert_accepts_rationals():
    from fractions import Fraction

    # 1/2 and 2 share a square class
    for v in relevant_places(2, -1):
        assert hilbert_symbol(Fraction(1, 2), -1, v) == hilbert_symbol(2, -1, v)
    assert hilbert_symbol(Fraction(-3, 5), Fraction(-1, 5), Place(3)) == hilbert_symbol(
        -15, -5, Place(3)
    )
    with pytest.raises(ValueError):
        hilbert_symbol(Fraction(0), 1, INFINITY)
