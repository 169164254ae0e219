"""Gaussian integer divisors, used to enumerate rational-root candidates over Q(i)."""
from __future__ import annotations

from functools import lru_cache

from sympy import factorint

GInt = tuple[int, int]

UNITS: tuple[GInt, ...] = ((1, 0), (0, 1), (-1, 0), (0, -1))


def gmul(x: GInt, y: GInt) -> GInt:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def gdiv_exact(x: GInt, y: GInt) -> GInt | None:
    n = y[0] * y[0] + y[1] * y[1]
    re = x[0] * y[0] + x[1] * y[1]
    im = x[1] * y[0] - x[0] * y[1]
    if re % n or im % n:
        return None
    return (re // n, im // n)


def _gmod(x: GInt, y: GInt) -> GInt:
    n = y[0] * y[0] + y[1] * y[1]
    re = x[0] * y[0] + x[1] * y[1]
    im = x[1] * y[0] - x[0] * y[1]
    # nearest-integer quotient
    qr = (2 * re + n) // (2 * n)
    qi = (2 * im + n) // (2 * n)
    prod = gmul((qr, qi), y)
    return (x[0] - prod[0], x[1] - prod[1])


def ggcd(x: GInt, y: GInt) -> GInt:
    while y != (0, 0):
        x, y = y, _gmod(x, y)
    return x


def _split_prime(p: int) -> GInt:
    """Gaussian prime above a rational prime ``p = 1 (mod 4)``."""
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    t = pow(c, (p - 1) // 4, p)
    return ggcd((p, 0), (t, 1))


@lru_cache(maxsize=2048)
def gaussian_divisors(a: int, b: int) -> tuple[GInt, ...]:
    """All divisors of ``a + b i`` up to units (one associate each)."""
    if (a, b) == (0, 0):
        raise ValueError("zero has no finite divisor set")
    norm = a * a + b * b
    primes: list[tuple[GInt, int]] = []
    rest = (a, b)
    for p in factorint(norm):
        if p == 2:
            candidates = [(1, 1)]
        elif p % 4 == 3:
            candidates = [(p, 0)]
        else:
            pi = _split_prime(p)
            candidates = [pi, (pi[0], -pi[1])]
        for pi in candidates:
            e = 0
            while True:
                q = gdiv_exact(rest, pi)
                if q is None:
                    break
                rest = q
                e += 1
            if e:
                primes.append((pi, e))
    divisors: list[GInt] = [(1, 0)]
    for pi, e in primes:
        new = []
        for d in divisors:
            power = (1, 0)
            for _ in range(e + 1):
                new.append(gmul(d, power))
                power = gmul(power, pi)
        divisors = new
    return tuple(divisors)
