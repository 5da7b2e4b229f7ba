"""Exact integer arithmetic on the unsigned 64-bit range.

Primality is a deterministic Miller-Rabin with a witness set valid for all
n < 2^64, factorization is trial division by sieved small primes followed
by Brent's cycle variant of Pollard rho with a fixed parameter sequence
(plus a Pollard p-1 fallback), so every result is reproducible bit for bit.
Everything here is a pure function; the sieve helpers return fresh lists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

U64_MAX = 2**64 - 1

_TRIAL_BOUND = 100_000
_small_primes: list[int] | None = None

# Witnesses proving primality for every n < 2^64 (Sinclair's seven-base set).
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


class OverflowError64(OverflowError):
    """A result left the unsigned 64-bit range instead of wrapping."""


@dataclass(frozen=True)
class Factorization:
    """Canonical prime decomposition: factors are (prime, exponent) pairs
    with strictly increasing primes, and value 1 has an empty factor list."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"value must be positive, got {self.value}")
        prev = 1
        prod = 1
        for p, a in self.factors:
            if p <= prev or a < 1:
                raise ValueError(f"malformed factor list for {self.value}")
            prev = p
            prod *= p**a
        if prod != self.value:
            raise ValueError(f"factors do not multiply to {self.value}")

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def pow_mod(base: int, exp: int, modulus: int) -> int:
    """base^exp mod modulus for nonnegative base and exp."""
    if modulus < 1:
        raise ValueError(f"modulus must be >= 1, got {modulus}")
    if base < 0 or exp < 0:
        raise ValueError("base and exponent must be nonnegative")
    return pow(base, exp, modulus)


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    """Least common multiple; raises OverflowError64 past 2^64 - 1."""
    if a == 0 or b == 0:
        return 0
    result = a // math.gcd(a, b) * b
    if result > U64_MAX:
        raise OverflowError64(f"lcm({a}, {b}) = {result} exceeds 64 bits")
    return result


def is_prime(n: int) -> bool:
    """Deterministic primality for all 0 <= n < 2^64."""
    if n > U64_MAX:
        raise ValueError(f"{n} does not fit in 64 bits")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _trial_primes() -> list[int]:
    global _small_primes
    if _small_primes is None:
        _small_primes = sieve_primes(_TRIAL_BOUND)
    return _small_primes


def _brent_rho(n: int, c: int) -> int | None:
    """One Brent-rho round with increment c; a nontrivial factor or None."""
    y, r, q = 2, 1, 1
    g = 1
    m = 128
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r <<= 1
    if g == n:
        # backtrack one step at a time from the saved point
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g if g != n else None


def _pollard_pm1(n: int, bound: int = 10_000) -> int | None:
    a = 2
    for p in _trial_primes():
        if p > bound:
            break
        pk = p
        while pk * p <= bound:
            pk *= p
        a = pow(a, pk, n)
    g = math.gcd(a - 1, n)
    return g if 1 < g < n else None


def _split(n: int, out: dict[int, int]) -> None:
    # n here has no prime factor <= _TRIAL_BOUND
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = None
    c = 1
    while d is None:
        if c == 4:
            d = _pollard_pm1(n)
            if d is not None:
                break
        d = _brent_rho(n, c)
        c += 1
    _split(d, out)
    _split(n // d, out)


def factorize(n: int, trial_bound: int = _TRIAL_BOUND) -> Factorization:
    """Canonical Factorization of n >= 1; deterministic for all 64-bit n."""
    if n == 0:
        raise ValueError("cannot factorize 0")
    if n < 0 or n > U64_MAX:
        raise ValueError(f"{n} is outside the unsigned 64-bit range")
    value = n
    fac: dict[int, int] = {}
    tested = min(trial_bound, _TRIAL_BOUND)
    for p in _trial_primes():
        if p > tested or p * p > n:
            break
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
    if n > 1:
        if n <= tested * tested:
            # cofactor below the trial square has no divisor left: prime
            fac[n] = fac.get(n, 0) + 1
        else:
            _split(n, fac)
    return Factorization(value, tuple(sorted(fac.items())))


def _base_sieve(limit: int) -> bytearray:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            start = p * p
            flags[start :: p] = bytearray(len(range(start, limit + 1, p)))
    return flags


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p < hi, by a segmented sieve over [lo, hi)."""
    if hi <= lo or hi <= 2:
        return []
    lo = max(lo, 2)
    root = math.isqrt(hi - 1)
    base_flags = _base_sieve(root)
    base = [p for p in range(2, root + 1) if base_flags[p]]
    out: list[int] = []
    segment = max(1 << 16, root)
    for start in range(lo, hi, segment):
        end = min(start + segment, hi)
        flags = bytearray([1]) * (end - start)
        for p in base:
            first = max(p * p, (start + p - 1) // p * p)
            if first >= end:
                continue
            flags[first - start :: p] = bytearray(len(range(first, end, p)))
        out.extend(start + i for i, f in enumerate(flags) if f)
    return out


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending."""
    return primes_in_range(2, limit + 1)
