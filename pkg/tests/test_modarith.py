import pytest
from hypothesis import given, strategies as st

from gl2degrees.modarith import (PrimeCtx, divisors, factorize, is_prime, legendre, make_ctx,
                                 multiplicative_order, nu2, odd_primes, prime_profile)

SMALL_PRIMES = odd_primes(3, 200)


@pytest.mark.parametrize("a, ell, want", [(-3, 7, 1), (3, 3, 0), (-4, 3167, -1), (2, 7, 1), (3, 7, -1)])
def test_legendre_examples(a, ell, want):
    assert legendre(a, ell) == want


@pytest.mark.parametrize("bad", [2, 9, 1, 0, -7])
def test_legendre_rejects_non_odd_primes(bad):
    with pytest.raises(ValueError):
        legendre(1, bad)


@given(st.sampled_from(SMALL_PRIMES), st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_legendre_multiplicative(ell, a, b):
    assert legendre(a * b, ell) == legendre(a, ell) * legendre(b, ell)


@pytest.mark.parametrize("ell", SMALL_PRIMES)
def test_half_the_units_are_squares(ell):
    squares = {x * x % ell for x in range(1, ell)}
    assert sum(legendre(a, ell) == 1 for a in range(1, ell)) == (ell - 1) // 2 == len(squares)
    assert all(legendre(a, ell) == 1 for a in squares)


@pytest.mark.parametrize("n, want", [(12, 2), (1, 0), (16, 4), (40, 3)])
def test_nu2(n, want):
    assert nu2(n) == want


@given(st.integers(1, 10**12))
def test_nu2_splits_off_the_odd_part(n):
    k = nu2(n)
    assert n % 2**k == 0 and (n >> k) % 2 == 1


def test_nu2_rejects_zero():
    with pytest.raises(ValueError):
        nu2(0)


@pytest.mark.parametrize("n, pi, pi_odd", [(12, {2, 3}, {3}), (8, {2}, set()), (1, set(), set())])
def test_prime_profile(n, pi, pi_odd):
    assert prime_profile(n) == (pi, pi_odd)


@given(st.integers(1, 10**6))
def test_prime_profile_agrees_with_naive_sieve(n):
    naive = {p for p in range(2, n + 1) if n % p == 0 and is_prime(p)}
    assert prime_profile(n)[0] == naive


@pytest.mark.parametrize("n, want", [(12, [1, 2, 3, 4, 6, 12]), (1, [1]),
                                     (48, [1, 2, 3, 4, 6, 8, 12, 16, 24, 48])])
def test_divisors(n, want):
    assert divisors(n) == want


@given(st.integers(1, 5000))
def test_divisors_match_scan(n):
    assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


@given(st.integers(1, 10**9))
def test_factorize_roundtrip(n):
    prod = 1
    for p, e in factorize(n).items():
        assert is_prime(p)
        prod *= p**e
    assert prod == n


@pytest.mark.parametrize("ell, eps, alpha", [(7, 3, 3), (5, 2, 2), (3, 2, 2), (13, 2, 2), (17, 3, 3)])
def test_make_ctx_choices(ell, eps, alpha):
    ctx = make_ctx(ell)
    assert (ctx.epsilon, ctx.alpha) == (eps, alpha)
    assert make_ctx(ell) == ctx


def test_make_ctx_rejects():
    for bad in (2, 15, 1):
        with pytest.raises(ValueError):
            make_ctx(bad)


def test_prime_ctx_validates_fields():
    with pytest.raises(ValueError):
        PrimeCtx(7, 2, 3)      # 2 is a square mod 7
    with pytest.raises(ValueError):
        PrimeCtx(7, 3, 2)      # 2 has order 3 mod 7


@pytest.mark.parametrize("ell", SMALL_PRIMES[:20])
def test_primitive_root_order(ell):
    ctx = make_ctx(ell)
    assert len({pow(ctx.alpha, k, ell) for k in range(ell - 1)}) == ell - 1
    assert multiplicative_order(ctx.alpha, ell) == ell - 1
    assert ctx.gl2_order == ell * (ell + 1) * (ell - 1) ** 2
