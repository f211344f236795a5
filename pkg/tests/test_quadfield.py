import pytest
from hypothesis import given
from hypothesis import strategies as st

from bianchi.arith import is_prime, is_squarefree
from bianchi.quadfield import (
    NonSquarefreeError,
    SplitType,
    is_global_norm,
    is_ideal_norm,
    make_field,
    splitting,
)

SQUAREFREE = [d for d in range(1, 101) if is_squarefree(d)]
PRIMES = [p for p in range(2, 101) if is_prime(p)]


def test_make_field_examples():
    assert make_field(3).discriminant == -3
    assert make_field(1).discriminant == -4
    assert make_field(10).discriminant == -40


def test_make_field_strictness():
    with pytest.raises(NonSquarefreeError):
        make_field(12)
    assert make_field(12, reduce=True).d == 3
    with pytest.raises(ValueError):
        make_field(0)


def test_ring_generator_descriptor():
    assert make_field(3).ring_generator == "(1+i*sqrt(d))/2"
    assert make_field(2).ring_generator == "i*sqrt(d)"


def test_splitting_examples():
    assert splitting(make_field(3), 3) is SplitType.RAMIFIED
    assert splitting(make_field(1), 5) is SplitType.SPLIT
    assert splitting(make_field(1), 3) is SplitType.INERT


def test_splitting_at_two_convention():
    # 2 splits iff d = 7 mod 8, is inert iff d = 3 mod 8, ramified otherwise
    for d in SQUAREFREE:
        s = splitting(make_field(d), 2)
        if d % 8 == 7:
            assert s is SplitType.SPLIT
        elif d % 8 == 3:
            assert s is SplitType.INERT
        else:
            assert s is SplitType.RAMIFIED


def test_ramified_iff_divides_discriminant():
    for d in SQUAREFREE:
        k = make_field(d)
        for p in PRIMES:
            assert (splitting(k, p) is SplitType.RAMIFIED) == (
                k.discriminant % p == 0
            )


def test_is_ideal_norm_examples():
    k1 = make_field(1)
    assert is_ideal_norm(1, k1)
    assert not is_ideal_norm(3, k1)
    assert is_ideal_norm(9, k1)
    assert is_ideal_norm(5, k1)


@given(
    st.sampled_from(SQUAREFREE),
    st.integers(min_value=1, max_value=500),
    st.integers(min_value=1, max_value=500),
)
def test_is_ideal_norm_multiplicative_on_coprimes(d, a, b):
    from math import gcd

    if gcd(a, b) != 1:
        return
    k = make_field(d)
    assert is_ideal_norm(a * b, k) == (is_ideal_norm(a, k) and is_ideal_norm(b, k))


def test_is_global_norm_examples():
    assert is_global_norm(1, make_field(1))
    assert not is_global_norm(-1, make_field(1))
    assert not is_global_norm(3, make_field(5))


@given(
    st.sampled_from(SQUAREFREE),
    st.integers(min_value=-50, max_value=50).filter(lambda n: n != 0),
    st.integers(min_value=-50, max_value=50).filter(lambda n: n != 0),
)
def test_is_global_norm_square_invariance(d, lam, mu):
    k = make_field(d)
    assert is_global_norm(lam * lam * mu, k) == is_global_norm(mu, k)


def test_global_norms_are_values_of_the_norm_form():
    # x^2 + d*y^2 values must pass the local-global test
    for d in (1, 2, 3, 5, 6, 7, 10):
        k = make_field(d)
        for x in range(6):
            for y in range(6):
                n = x * x + d * y * y
                if n:
                    assert is_global_norm(n, k), (d, n)
