"""Integer-side helpers: star reduction, base-p digits, Lucas binomials,
cyclotomic cosets and the (a, k', b, c) parameters attached to an exponent k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class NotCoprimeError(ValueError):
    """Raised when gcd(k, q - 1) > 1 and the derived parameters are undefined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p**e, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def gpf(e: int) -> int:
    """Greatest prime factor of e, with gpf(1) = 1."""
    if e < 1:
        raise ValueError("gpf needs e >= 1")
    if e == 1:
        return 1
    return prime_factors(e)[-1]


def star(a: int, q: int) -> int:
    """Representative of a mod q-1 in [1, q-1]; 0 maps to 0."""
    if a < 0:
        raise ValueError(f"star() needs a >= 0, got {a}")
    if q < 2:
        raise ValueError("q must be at least 2")
    if a == 0:
        return 0
    return (a - 1) % (q - 1) + 1


def star_array(a: np.ndarray, q: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    return np.where(a == 0, 0, (a - 1) % (q - 1) + 1)


def digits_base_p(n: int, p: int) -> list[int]:
    """Base-p digits of n, least significant first. digits_base_p(0, p) == [0]."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return [0]
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


@lru_cache(maxsize=None)
def _small_binom_table(p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(math.comb(m, n) % p for n in range(p)) for m in range(p))


def binom_mod_p(m: int, n: int, p: int) -> int:
    """C(m, n) mod p via Lucas' theorem. Out-of-range n (n > m or n < 0) gives 0."""
    if n < 0 or m < 0 or n > m:
        return 0
    table = _small_binom_table(p)
    r = 1
    while n:
        m, mi = divmod(m, p)
        n, ni = divmod(n, p)
        if ni > mi:
            return 0
        r = r * table[mi][ni] % p
    return r


def has_carry(m: int, n: int, p: int) -> bool:
    """True iff adding m and n in base p produces at least one carry."""
    while m or n:
        if m % p + n % p >= p:
            return True
        m //= p
        n //= p
    return False


class LucasTable:
    """Dense table of C(m, n) mod p for 0 <= m, n < size.

    Built digit-wise, so size can be any q = p**e without touching big integers.
    """

    def __init__(self, p: int, size: int):
        self.p = p
        self.size = size
        ndig = max(1, len(digits_base_p(size - 1, p)))
        small = np.array(_small_binom_table(p), dtype=np.int64)
        idx = np.arange(size, dtype=np.int64)
        table = np.ones((size, size), dtype=np.int64)
        for _ in range(ndig):
            d = idx % p
            table = table * small[d[:, None], d[None, :]] % p
            idx = idx // p
        self.table = table
        self.table.flags.writeable = False

    def __call__(self, m, n):
        m = np.asarray(m, dtype=np.int64)
        n = np.asarray(n, dtype=np.int64)
        ok = (n >= 0) & (n <= m)
        return np.where(ok, self.table[np.clip(m, 0, self.size - 1), np.clip(n, 0, self.size - 1)], 0)


@lru_cache(maxsize=64)
def lucas_table(p: int, size: int) -> LucasTable:
    return LucasTable(p, size)


def cyclo_coset(k: int, p: int, q: int) -> list[int]:
    """Orbit of k under multiplication by p modulo q-1, star-normalized and sorted."""
    if not 1 <= k <= q - 1:
        raise ValueError(f"k must lie in [1, {q - 1}]")
    seen = set()
    x = k
    while x not in seen:
        seen.add(x)
        x = star(x * p, q)
    return sorted(seen)


def neg_one_pow(x: int) -> int:
    """(-1)**x as +1/-1, from the parity of the integer x itself."""
    return -1 if x % 2 else 1


def pow2_mod(x: int, p: int) -> int:
    """2**x mod p for odd p; x may be negative (uses the inverse of 2)."""
    if p == 2:
        return 1 if x == 0 else 0
    base = 2 if x >= 0 else pow(2, -1, p)
    return pow(base, abs(x) % (p - 1), p)


def signed_pow2_mod(x: int, p: int) -> int:
    """(-2)**x mod p with the sign taken from the parity of x."""
    return neg_one_pow(x) * pow2_mod(x, p) % p


@dataclass(frozen=True)
class KParams:
    k: int
    q: int
    a: int
    kprime: int
    b: int
    c: int


def kparams(k: int, q: int) -> KParams:
    if not 1 <= k <= q - 1:
        raise ValueError(f"k must lie in [1, {q - 1}]")
    n = q - 1
    if math.gcd(k, n) != 1:
        raise NotCoprimeError(f"gcd({k}, {n}) = {math.gcd(k, n)}")
    kprime = star(pow(k, -1, n), q) if n > 1 else 1
    b = star(n - kprime, q) if n > 1 else 1
    return KParams(k=k, q=q, a=n // k, kprime=kprime, b=b, c=n // kprime)
