"""Multiplicative order functions and the Carmichael function.

The central quantity is coprime_order(e, n): the multiplicative order of e
modulo the largest divisor of n that is coprime to e.  It is the eventual
period of the sequence e^i mod n and the building block for both generator
period formulas.  Orders are computed by descending the group exponent
(factor lambda(n), then strip prime factors while the power stays 1), never
by stepping, so single queries stay polylogarithmic.

Functions that need factorizations accept an optional ``factorizer``
callable (same contract as arith.factorize) so that surveys can route them
through a shared cache.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .arith import Factorization, factorize, is_prime, lcm

Factorizer = Callable[[int], Factorization]


def carmichael_lambda(f: Factorization) -> int:
    """lambda(value): the exponent of the multiplicative group mod value.

    Prime-power rule: lambda(p^a) = (p-1)p^(a-1), except lambda(2) = 1,
    lambda(4) = 2 and lambda(2^a) = 2^(a-2) for a >= 3; combined by lcm.
    """
    result = 1
    for p, a in f.factors:
        if p == 2:
            lam = 1 if a == 1 else (2 if a == 2 else 1 << (a - 2))
        else:
            lam = (p - 1) * p ** (a - 1)
        result = lcm(result, lam)
    return result


def coprime_part(n: int, e: int) -> int:
    """Largest divisor of n coprime to e."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    g = math.gcd(n, e)
    while g > 1:
        while n % g == 0:
            n //= g
        g = math.gcd(n, e)
    return n


def multiplicative_order(e: int, n: int, factorizer: Factorizer | None = None) -> int:
    """Least k >= 1 with e^k = 1 mod n; requires gcd(e, n) = 1."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if math.gcd(e, n) != 1:
        raise ValueError(f"gcd({e}, {n}) > 1: order undefined")
    if n == 1:
        return 1
    fac = factorizer or factorize
    k = carmichael_lambda(fac(n))
    for q, _ in fac(k).factors:
        while k % q == 0 and pow(e, k // q, n) == 1:
            k //= q
    return k


def coprime_order(e: int, n: int, factorizer: Factorizer | None = None) -> int:
    """Order of e modulo coprime_part(n, e): the eventual period of e^i mod n."""
    return multiplicative_order(e, coprime_part(n, e), factorizer)


def squarefree_core(n: int) -> int:
    """Product of the distinct primes dividing n; 1 for n = 1."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return math.prod(factorize(n).primes())


def omega(n: int) -> int:
    """Number of distinct prime divisors of n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return len(factorize(n).factors)


def smooth_part(n: int, prime_pred: Callable[[int], bool]) -> int:
    """Largest divisor of n whose prime factors all satisfy prime_pred."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    out = 1
    for p, a in factorize(n).factors:
        if prime_pred(p):
            out *= p**a
    return out


@dataclass(frozen=True)
class OrderProfile:
    """Order data for a pair (e, n).

    index is (n-1)/ord(e, n), populated only for prime n coprime to e.
    """

    n: int
    e: int
    n_coprime: int
    lambda_n: int
    ord_star: int
    index: int | None = None


def order_profile(e: int, n: int, factorizer: Factorizer | None = None) -> OrderProfile:
    fac = factorizer or factorize
    nc = coprime_part(n, e)
    lam = carmichael_lambda(fac(n))
    o = multiplicative_order(e, nc, factorizer)
    index = None
    if is_prime(n) and math.gcd(e, n) == 1:
        index = (n - 1) // o
    return OrderProfile(n=n, e=e, n_coprime=nc, lambda_n=lam, ord_star=o, index=index)
