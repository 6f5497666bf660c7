"""Finite fields F_q, q = p**e, with elements stored as dense integer indices.

An element with coefficient vector (c_0, ..., c_{e-1}) in the power basis of the
modulus has index c_0 + c_1 p + ... + c_{e-1} p^{e-1}. Index 0 is zero and
index 1 is one. Multiplication goes through discrete log / exp tables, addition
is digit-wise mod p. Every operation accepts plain ints or integer numpy arrays.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .modarith import is_prime, prime_factors, prime_power

TABLE_BOUND = 1 << 20


class FieldError(ValueError):
    pass


# --- polynomials over F_p: coefficient lists, constant term first -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _trim(a)
    return a


def _polymulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _polymod(out, m, p)


def _polypowmod(a: list[int], n: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _polymod(a, m, p)
    while n:
        if n & 1:
            result = _polymulmod(result, base, m, p)
        base = _polymulmod(base, base, m, p)
        n >>= 1
    return result


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _polysub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Ben-Or test: monic f of degree e is irreducible iff
    gcd(X^(p^i) - X mod f, f) = 1 for every 1 <= i <= e // 2."""
    e = len(modulus) - 1
    if e < 1 or modulus[-1] != 1:
        return False
    if e == 1:
        return True
    if modulus[0] == 0:
        return False
    x = [0, 1]
    h = x
    for _ in range(e // 2):
        h = _polypowmod(h, p, modulus, p)
        g = _polygcd(modulus, _polysub(h, x, p), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, e: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree e, comparing the
    coefficient tuple from the constant term upward."""
    for low in itertools.product(range(p), repeat=e):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")  # unreachable


# --- field spec and context --------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    q: int
    modulus: tuple[int, ...]


def _index_to_poly(x: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        x, r = divmod(x, p)
        out.append(r)
    return _trim(out)


def _poly_to_index(a: list[int], p: int) -> int:
    return sum(c * p ** i for i, c in enumerate(a))


@dataclass(frozen=True, eq=False)
class FieldContext:
    spec: FieldSpec
    generator: int
    log_table: np.ndarray = field(repr=False)
    exp_table: np.ndarray = field(repr=False)
    digits: np.ndarray = field(repr=False)
    place: np.ndarray = field(repr=False)

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def e(self) -> int:
        return self.spec.e

    @property
    def q(self) -> int:
        return self.spec.q

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def __reduce__(self):
        # Rebuild from (p, e) on unpickle; construction is deterministic.
        return (field_build, (self.p, self.e))

    # additive structure
    def add(self, x, y):
        if self.e == 1:
            return (np.asarray(x) + y) % self.p if _is_arr(x, y) else (x + y) % self.p
        s = (self.digits[x] + self.digits[y]) % self.p
        return _out(s @ self.place, x, y)

    def neg(self, x):
        if self.e == 1:
            return (-np.asarray(x)) % self.p if _is_arr(x) else (-x) % self.p
        s = (-self.digits[x]) % self.p
        return _out(s @ self.place, x)

    def sub(self, x, y):
        if self.e == 1:
            return (np.asarray(x) - y) % self.p if _is_arr(x, y) else (x - y) % self.p
        s = (self.digits[x] - self.digits[y]) % self.p
        return _out(s @ self.place, x, y)

    def scalar(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    # multiplicative structure
    def mul(self, x, y):
        x_ = np.asarray(x, dtype=np.int64)
        y_ = np.asarray(y, dtype=np.int64)
        r = self.exp_table[(self.log_table[x_] + self.log_table[y_]) % (self.q - 1)]
        r = np.where((x_ == 0) | (y_ == 0), 0, r)
        return _out(r, x, y)

    def inv(self, x):
        x_ = np.asarray(x, dtype=np.int64)
        if np.any(x_ == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        r = self.exp_table[(-self.log_table[x_]) % (self.q - 1)]
        return _out(r, x)

    def pow(self, x, n: int):
        """x**n with 0**0 = 1 and n >= 0."""
        if n < 0:
            raise ValueError("pow() exponent must be nonnegative; use inv() first")
        x_ = np.asarray(x, dtype=np.int64)
        r = self.exp_table[(self.log_table[x_] * (n % (self.q - 1))) % (self.q - 1)]
        r = np.where(x_ == 0, 1 if n == 0 else 0, r)
        return _out(r, x)

    def to_prime_field(self, x: int) -> int:
        """Return x as an integer residue mod p; x must lie in the prime subfield."""
        if not 0 <= x < self.p:
            raise FieldError(f"element {x} is not in the prime subfield")
        return int(x)

    def sum(self, values) -> int:
        """Field sum of a 1-d array of element indices."""
        values = np.asarray(values, dtype=np.int64)
        if self.e == 1:
            return int(values.sum() % self.p)
        s = self.digits[values].sum(axis=0) % self.p
        return int(s @ self.place)


def _is_arr(*xs) -> bool:
    return any(isinstance(x, np.ndarray) for x in xs)


def _out(r, *inputs):
    if _is_arr(*inputs):
        return np.asarray(r, dtype=np.int64)
    return int(r)


@lru_cache(maxsize=32)
def field_build(p: int, e: int = 1) -> FieldContext:
    """Build F_{p^e} deterministically (smallest modulus, smallest primitive element)."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if e < 1:
        raise FieldError("exponent e must be >= 1")
    q = p ** e
    if q > TABLE_BOUND:
        raise FieldError(f"q = {q} exceeds the table bound {TABLE_BOUND}")
    modulus = smallest_irreducible(p, e)
    n = q - 1
    factors = prime_factors(n) if n > 1 else []

    generator = None
    for g in range(1, q):
        poly = _index_to_poly(g, p, e)
        if all(_polypowmod(poly, n // r, modulus, p) != [1] for r in factors):
            generator = g
            break
    assert generator is not None

    exp_table = np.zeros(n, dtype=np.int64)
    log_table = np.zeros(q, dtype=np.int64)
    gpoly = _index_to_poly(generator, p, e)
    cur = [1]
    for i in range(n):
        idx = _poly_to_index(cur, p)
        exp_table[i] = idx
        log_table[idx] = i
        cur = _polymulmod(cur, gpoly, modulus, p)
    if len(set(exp_table.tolist())) != n:
        raise FieldError("generator is not primitive")  # guards the table invariant

    place = np.array([p ** i for i in range(e)], dtype=np.int64)
    idx = np.arange(q, dtype=np.int64)
    digits = np.stack([(idx // p ** i) % p for i in range(e)], axis=1)
    for arr in (exp_table, log_table, digits, place):
        arr.flags.writeable = False
    spec = FieldSpec(p=p, e=e, q=q, modulus=tuple(modulus))
    return FieldContext(spec, generator, log_table, exp_table, digits, place)


def field_for_q(q: int) -> FieldContext:
    pe = prime_power(q)
    if pe is None:
        raise FieldError(f"{q} is not a prime power")
    return field_build(*pe)
