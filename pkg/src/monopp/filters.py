"""Necessary conditions for A_k / B_k to be permutation polynomials, the alpha(p)
function, the two-digit-block floor formula, and the joint A/B identity.

Each check returns PASS, FAIL or NA. NA means the check's hypotheses do not hold
for this (q, k) and it says nothing either way; only FAIL rejects a k.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .modarith import (
    KParams,
    NotCoprimeError,
    binom_mod_p,
    digits_base_p,
    is_prime,
    kparams,
    neg_one_pow,
    pow2_mod,
    prime_power,
)


class Outcome(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NA = "n/a"


def _ok(cond: bool) -> Outcome:
    return Outcome.PASS if cond else Outcome.FAIL


def _p_of(q: int) -> int:
    pe = prime_power(q)
    if pe is None:
        raise ValueError(f"{q} is not a prime power")
    return pe[0]


def _maybe_kparams(k: int, q: int) -> KParams | None:
    try:
        return kparams(k, q)
    except NotCoprimeError:
        return None


# --- alpha(p) ----------------------------------------------------------------

@dataclass(frozen=True)
class AlphaRecord:
    p: int
    alpha: int

    @property
    def is_exception(self) -> bool:
        """True when alpha(p) != p - 1."""
        return self.alpha != self.p - 1


def _check_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise ValueError(f"alpha() needs an odd prime, got {p}")


def alpha_binomial(p: int) -> int:
    """Smallest even u > 0 with C(u, u/2) = (-1)^(u/2) 2^u mod p.

    C(2m, m) is carried as a fraction N/D mod p using
    C(2m+2, m+1) = C(2m, m) * 2(2m+1) / (m+1), so no inverses are needed.
    """
    _check_odd_prime(p)
    num, den = 1, 1  # C(0, 0)
    sign_pow = 1  # (-1)^m 4^m
    for m in range(1, (p - 1) // 2 + 1):
        num = num * 2 * (2 * m - 1) % p
        den = den * m % p
        sign_pow = sign_pow * (-4) % p
        if num == sign_pow * den % p:
            return 2 * m
    raise AssertionError(f"alpha({p}) exceeded p - 1")  # excluded since C(p-1,(p-1)/2) = (-1)^((p-1)/2)


def alpha_double_factorial(p: int) -> int:
    """Same value via (2m-1)!! / (2m)!! = (-1)^m mod p."""
    _check_odd_prime(p)
    odd, even = 1, 1
    for m in range(1, (p - 1) // 2 + 1):
        odd = odd * (2 * m - 1) % p
        even = even * (2 * m) % p
        if odd == neg_one_pow(m) * even % p:
            return 2 * m
    raise AssertionError(f"alpha({p}) exceeded p - 1")


@lru_cache(maxsize=None)
def alpha(p: int) -> AlphaRecord:
    return AlphaRecord(p, alpha_binomial(p))


def double_factorial_condition(p: int, m: int) -> bool:
    """Whether (2m-1)!!/(2m)!! = (-1)^m mod p, for 0 <= m <= (p-1)/2."""
    odd, even = 1, 1
    for t in range(1, m + 1):
        odd = odd * (2 * t - 1) % p
        even = even * (2 * t) % p
    return odd == neg_one_pow(m) * even % p


def theorem1_4_bound(p: int) -> int:
    """Largest m for which B-conjecture truth at q lifts to q^m."""
    a = alpha(p).alpha
    return (p - 1) // ((p - 1) // a)


# --- conditions from A_k being a PP -----------------------------------------

def check_lemma3_2(q: int, p: int, k: int) -> tuple[Outcome, Outcome]:
    """C(ka, q-1-ka) = 0 and C(2c, c) = 0 mod p."""
    if not 1 < k <= q - 1:
        return Outcome.NA, Outcome.NA
    kp = _maybe_kparams(k, q)
    if kp is None:
        return Outcome.NA, Outcome.NA
    ka = k * kp.a
    ok_ka = binom_mod_p(ka, q - 1 - ka, p) == 0
    ok_2c = binom_mod_p(2 * kp.c, kp.c, p) == 0
    return _ok(ok_ka), _ok(ok_2c)


def check_digits_kprime(q: int, p: int, k: int) -> Outcome:
    """All base-p digits of k' are 0 or 1."""
    kp = _maybe_kparams(k, q)
    if kp is None:
        return Outcome.NA
    return _ok(max(digits_base_p(kp.kprime, p)) <= 1)


# --- conditions from B_k being a PP -----------------------------------------

def check_lemma3_4(p: int, k: int) -> Outcome:
    """(-2)^(k-1) = 1 mod p."""
    if p == 2:
        return Outcome.NA
    return _ok(neg_one_pow(k - 1) * pow2_mod(k - 1, p) % p == 1)


STRUCTURE_KEYS = ("k_odd", "a_even", "c_even", "pow2_k", "central_a", "central_a_ka",
                 "binom_b_half", "central_c", "shifted_c")


def check_lemma3_5(q: int, p: int, k: int) -> dict[str, Outcome]:
    """Sub-conditions of the odd-q structure theorem for B_k, each evaluated on its own."""
    out = {key: Outcome.NA for key in STRUCTURE_KEYS}
    if q % 2 == 0 or not 1 < k <= q - 1:
        return out
    out["k_odd"] = _ok(k % 2 == 1)
    kp = _maybe_kparams(k, q)
    if kp is None:
        return out
    a, c, b, kk = kp.a, kp.c, kp.b, kp.kprime
    h = (q - 1) // 2
    out["a_even"] = _ok(a % 2 == 0)
    out["c_even"] = _ok(c % 2 == 0)
    out["pow2_k"] = _ok(pow2_mod(k - 1, p) == 1)
    if a % 2 == 0:
        rhs_a = neg_one_pow(a // 2) * pow2_mod(a, p) % p
        out["central_a"] = _ok(binom_mod_p(a, a // 2, p) == rhs_a)
        lhs_ka = binom_mod_p(a - 1, a // 2, p) * binom_mod_p(k * a, k, p) % p
        rhs_ka = neg_one_pow(a // 2 - 1) * pow2_mod(a - 1, p) % p
        out["central_a_ka"] = _ok(lhs_ka == rhs_ka)
    else:
        out["central_a"] = out["central_a_ka"] = Outcome.FAIL
    rhs_b = neg_one_pow(b + (q + 1) // 2) * pow2_mod(b, p) % p
    out["binom_b_half"] = _ok(binom_mod_p(b, h, p) == rhs_b)
    if c % 2 == 0:
        sign = neg_one_pow(c // 2 + h)
        top = q - 1 - c * kk
        out["central_c"] = _ok(binom_mod_p(top, top // 2, p) == sign * pow2_mod(-c * kk, p) % p)
        lhs_shift = (1 - c) * binom_mod_p(q - 1 - (c - 1) * kk, (q - 1 - (c - 2) * kk) // 2, p) % p
        out["shifted_c"] = _ok(lhs_shift == sign * pow2_mod(-(c - 1) * kk, p) % p)
    else:
        out["central_c"] = out["shifted_c"] = Outcome.FAIL
    return out


def check_lemma3_7(q: int, p: int, k: int) -> Outcome:
    """Every base-p digit of k is <= (p-1)/alpha(p)."""
    if q % 2 == 0 or not 1 < k <= q - 1:
        return Outcome.NA
    bound = (p - 1) // alpha(p).alpha
    return _ok(max(digits_base_p(k, p)) <= bound)


# --- joint condition ----------------------------------------------------------

def joint_identity_sides(q: int, p: int, kp: KParams) -> tuple[int, int]:
    """Both sides (mod p) of the identity relating 2^(-2ck') to two binomials."""
    c, kk = kp.c, kp.kprime
    lhs = pow2_mod(-2 * c * kk, p)
    top = 2 * (q - 1) - 2 * c * kk
    first = binom_mod_p(top, q - 1 - c * kk, p)
    sign = neg_one_pow((q - 1) // 2 + c // 2 + 1)
    second = binom_mod_p(top, (q - 1) // 2 - (c // 2 - 1) * kk, p) * binom_mod_p(2 * c, c + 2, p)
    return lhs, (first + sign * second) % p


def check_lemma6_1(q: int, p: int, k: int) -> Outcome:
    if q % 2 == 0 or not 1 < k <= q - 1:
        return Outcome.NA
    kp = _maybe_kparams(k, q)
    if kp is None or kp.c % 2:
        return Outcome.NA
    lhs, rhs = joint_identity_sides(q, p, kp)
    return _ok(lhs == rhs)


# --- closed form for floor((p^e - 1)/k) ---------------------------------------

@dataclass(frozen=True)
class FloorInput:
    p: int
    e: int
    i: int
    j: int
    low_digits: tuple[int, ...]

    def __post_init__(self):
        if not 0 < self.i < self.j <= self.e - 1:
            raise ValueError("need 0 < i < j <= e - 1")
        if len(self.low_digits) != self.i or any(not 0 <= d < self.p for d in self.low_digits):
            raise ValueError("low_digits must be i digits in [0, p-1]")

    @property
    def k(self) -> int:
        p = self.p
        return sum(d * p ** t for t, d in enumerate(self.low_digits)) + p ** self.i + p ** self.j

    @property
    def u(self) -> int:
        return (self.e - self.j) // (self.j - self.i)


@dataclass(frozen=True)
class FloorReport:
    closed_a: int
    direct_a: int
    bound_holds: bool
    a_even: bool

    @property
    def hypotheses_hold(self) -> bool:
        return self.bound_holds and self.a_even


def lemma5_1_closed_a(inp: FloorInput) -> FloorReport:
    p, e, i, j, u = inp.p, inp.e, inp.i, inp.j, inp.u
    gap = j - i
    closed = sum(neg_one_pow(t) * p ** (e - j - t * gap) for t in range(u + 1))
    if u % 2 == 0:
        closed -= 1
    n = p ** e - 1
    k = inp.k
    bound = Fraction(n, p ** i + p ** j) - Fraction(n, k) <= 1
    direct = n // k
    return FloorReport(closed, direct, bound, direct % 2 == 0)


# --- pipeline -------------------------------------------------------------------

A_KEYS = ("binom_ka", "central_2c", "kprime_digits")
B_KEYS = ("neg2_pow",) + tuple(f"structure.{key}" for key in STRUCTURE_KEYS) + ("digits_alpha",)
JOINT_KEYS = ("joint_identity",)
ALL_KEYS = A_KEYS + B_KEYS + JOINT_KEYS


@dataclass(frozen=True)
class FilterReport:
    q: int
    p: int
    k: int
    outcomes: dict = field(default_factory=dict)
    coprime: bool = True

    def failed(self, keys=ALL_KEYS) -> list[str]:
        return [key for key in keys if self.outcomes[key] is Outcome.FAIL]

    @property
    def a_rejected(self) -> bool:
        return bool(self.failed(A_KEYS))

    @property
    def b_rejected(self) -> bool:
        return bool(self.failed(B_KEYS))

    @property
    def joint_rejected(self) -> bool:
        return bool(self.failed(JOINT_KEYS))

    @property
    def survives_all(self) -> bool:
        return self.coprime and not self.failed()

    @property
    def reason(self) -> str | None:
        if not self.coprime:
            return "gcd"
        failed = self.failed()
        return failed[0] if failed else None

    def as_dict(self) -> dict:
        return {
            "q": self.q, "p": self.p, "k": self.k,
            "outcomes": {key: self.outcomes[key].value for key in ALL_KEYS},
            "survives_all": self.survives_all,
            "reason": self.reason,
        }

    def summary(self) -> dict:
        return {"survives_all": self.survives_all, "failed": self.failed(), "reason": self.reason}


def filter_pipeline(q: int, p: int, k: int) -> FilterReport:
    outcomes: dict[str, Outcome] = {}
    outcomes["binom_ka"], outcomes["central_2c"] = check_lemma3_2(q, p, k)
    outcomes["kprime_digits"] = check_digits_kprime(q, p, k)
    outcomes["neg2_pow"] = check_lemma3_4(p, k)
    for key, val in check_lemma3_5(q, p, k).items():
        outcomes[f"structure.{key}"] = val
    outcomes["digits_alpha"] = check_lemma3_7(q, p, k)
    outcomes["joint_identity"] = check_lemma6_1(q, p, k)
    return FilterReport(q, p, k, outcomes, coprime=math.gcd(k, q - 1) == 1)
