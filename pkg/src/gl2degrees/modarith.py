"""Arithmetic mod a prime and the small number-theoretic helpers used by
the index-set formulas (Legendre symbols, 2-adic valuations, prime
divisor profiles, divisor lists)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_odd_prime(ell: int) -> None:
    if not isinstance(ell, int) or ell == 2 or not is_prime(ell):
        raise ValueError(f"expected an odd prime, got {ell!r}")


def _check_positive(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"expected a positive integer, got {n!r}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n`` by trial division, as ``{p: exponent}``."""
    _check_positive(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def legendre(a: int, ell: int) -> int:
    """Legendre symbol (a / ell) via Euler's criterion."""
    _check_odd_prime(ell)
    a %= ell
    if a == 0:
        return 0
    return 1 if pow(a, (ell - 1) // 2, ell) == 1 else -1


def nu2(n: int) -> int:
    """2-adic valuation of a positive integer."""
    _check_positive(n)
    return (n & -n).bit_length() - 1


def prime_profile(n: int) -> tuple[frozenset[int], frozenset[int]]:
    """Return ``(primes dividing n, odd primes dividing n)``."""
    pi = frozenset(factorize(n))
    return pi, pi - {2}


def divisors(n: int) -> list[int]:
    _check_positive(n)
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def multiplicative_order(a: int, ell: int) -> int:
    a %= ell
    if a == 0:
        raise ValueError("0 has no multiplicative order")
    n = ell - 1
    order = n
    for p in factorize(n):
        while order % p == 0 and pow(a, order // p, ell) == 1:
            order //= p
    return order


@dataclass(frozen=True)
class PrimeCtx:
    """An odd prime together with a fixed nonresidue and primitive root."""

    ell: int
    epsilon: int
    alpha: int

    def __post_init__(self) -> None:
        _check_odd_prime(self.ell)
        if legendre(self.epsilon, self.ell) != -1:
            raise ValueError(f"{self.epsilon} is not a nonresidue mod {self.ell}")
        if multiplicative_order(self.alpha, self.ell) != self.ell - 1:
            raise ValueError(f"{self.alpha} is not a primitive root mod {self.ell}")

    @property
    def gl2_order(self) -> int:
        ell = self.ell
        return ell * (ell + 1) * (ell - 1) ** 2


@lru_cache(maxsize=None)
def make_ctx(ell: int) -> PrimeCtx:
    """Context with the smallest positive nonresidue and primitive root."""
    _check_odd_prime(ell)
    epsilon = next(a for a in range(2, ell) if legendre(a, ell) == -1)
    alpha = next(a for a in range(2, ell) if multiplicative_order(a, ell) == ell - 1)
    return PrimeCtx(ell, epsilon, alpha)


def odd_primes(lo: int, hi: int) -> list[int]:
    """Odd primes p with lo <= p <= hi."""
    return [p for p in range(max(lo, 3), hi + 1) if is_prime(p)]
