import math
import random

import pytest

from ordstat.arith import factorize, lcm
from ordstat.orders import (OrderProfile, carmichael_lambda, coprime_order,
                            coprime_part, multiplicative_order, omega,
                            order_profile, smooth_part, squarefree_core)


def brute_order(e, m):
    """Least k with e^k = 1 mod m, by stepping."""
    target = 1 % m
    x = e % m
    k = 1
    while x != target:
        x = x * e % m
        k += 1
    return k


def max_element_order(n):
    """Largest multiplicative order mod n, by enumerating every unit."""
    best = 1
    for a in range(1, n):
        if math.gcd(a, n) == 1:
            best = max(best, brute_order(a, n))
    return best if n > 1 else 1


def test_carmichael_prime_power_rule():
    assert carmichael_lambda(factorize(2)) == 1
    assert carmichael_lambda(factorize(4)) == 2
    assert carmichael_lambda(factorize(8)) == 2
    assert carmichael_lambda(factorize(16)) == 4
    assert carmichael_lambda(factorize(27)) == 18
    assert carmichael_lambda(factorize(49)) == 42


def test_carmichael_examples():
    assert carmichael_lambda(factorize(1)) == 1
    assert max_element_order(15) == 4
    assert carmichael_lambda(factorize(15)) == 4
    assert carmichael_lambda(factorize(209)) == 90


def test_carmichael_matches_enumerated_exponent_small():
    for n in range(1, 300):
        assert carmichael_lambda(factorize(n)) == max_element_order(n), n


def test_lambda_of_lcm_identity():
    rng = random.Random(12)
    for _ in range(10_000):
        a = rng.randrange(1, 10**4)
        b = rng.randrange(1, 10**4)
        lhs = carmichael_lambda(factorize(lcm(a, b)))
        rhs = lcm(carmichael_lambda(factorize(a)), carmichael_lambda(factorize(b)))
        assert lhs == rhs, (a, b)


def test_coprime_part_examples():
    assert coprime_part(12, 2) == 3
    assert coprime_part(45, 10) == 9
    for n in (1, 7, 121, 3600):
        e = 7 if n % 7 else 11
        if math.gcd(n, e) == 1:
            assert coprime_part(n, e) == n


def test_coprime_part_is_idempotent():
    for n in range(1, 2000):
        for e in (2, 3, 10):
            d = coprime_part(n, e)
            assert coprime_part(d, e) == d
            assert n % d == 0
            assert math.gcd(d, e) == 1


def test_multiplicative_order_examples():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(3, 10) == 4
    for e in (2, 3, 10, 97):
        assert multiplicative_order(e, 1) == 1
    with pytest.raises(ValueError):
        multiplicative_order(2, 12)


def test_order_matches_bruteforce():
    for n in range(1, 1500):
        for e in (2, 3, 5, 10):
            m = coprime_part(n, e)
            assert coprime_order(e, n) == brute_order(e, m), (e, n)


def test_coprime_order_examples():
    assert coprime_order(2, 12) == 2
    assert coprime_order(10, 45) == 1
    for k in range(1, 7):
        assert coprime_order(2, 2**k) == 1


def test_coprime_order_divides_lambda():
    for n in range(1, 1000):
        lam = carmichael_lambda(factorize(n))
        for e in (2, 3, 10):
            assert lam % coprime_order(e, n) == 0, (e, n)


def test_core_examples():
    assert squarefree_core(12) == 6
    assert squarefree_core(1) == 1
    for p in (2, 13, 997):
        assert squarefree_core(p) == p


def test_core_and_omega_properties():
    for n in range(1, 3000):
        c = squarefree_core(n)
        assert n % c == 0
        assert squarefree_core(c) == c
        assert omega(n) == len(factorize(c).factors)
    assert omega(12) == 2
    assert omega(1) == 0
    assert omega(30) == 3


def test_smooth_part():
    assert smooth_part(90, lambda p: p in (2, 3)) == 18
    assert smooth_part(97, lambda p: p in (2, 3)) == 1
    for n in (1, 12, 97, 3600):
        assert smooth_part(n, lambda p: True) == n
        assert smooth_part(n, lambda p: False) == 1


def test_order_profile_examples():
    prof = order_profile(2, 7)
    assert prof == OrderProfile(n=7, e=2, n_coprime=7, lambda_n=6, ord_star=3, index=2)
    # lambda(12) = lcm(lambda(4), lambda(3)) = 2: units mod 12 all square to 1
    prof = order_profile(2, 12)
    assert (prof.n_coprime, prof.lambda_n, prof.ord_star, prof.index) == (3, 2, 2, None)
    assert max_element_order(12) == 2
    prof = order_profile(5, 1)
    assert (prof.n_coprime, prof.lambda_n, prof.ord_star, prof.index) == (1, 1, 1, None)


def test_order_profile_invariants():
    for n in range(1, 500):
        for e in (2, 3, 10):
            prof = order_profile(e, n)
            assert n % prof.n_coprime == 0
            assert math.gcd(prof.n_coprime, e) == 1
            lam_coprime = carmichael_lambda(factorize(prof.n_coprime))
            assert lam_coprime % prof.ord_star == 0
            assert pow(e, prof.ord_star, prof.n_coprime) == 1 % prof.n_coprime
            for q, _ in factorize(prof.ord_star).factors:
                assert pow(e, prof.ord_star // q, prof.n_coprime) != 1 % prof.n_coprime
            if prof.index is not None:
                assert prof.index * prof.ord_star == n - 1
