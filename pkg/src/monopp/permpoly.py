"""The polynomials

    A_k = X^k [(X+1)^k - X^k]
    B_k = [(X+1)^(2k) - 1] X^(q-1-k) - 2 X^(q-1)

over F_q, their power sums (directly and in closed form), and two independent
permutation tests: brute-force bijectivity and Hermite's criterion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .ffield import FieldContext
from .modarith import lucas_table, neg_one_pow, signed_pow2_mod, star_array

BRUTE = "brute-force"
HERMITE = "hermite"

Witness = Union[tuple, str, int, None]


@dataclass(frozen=True)
class PPVerdict:
    """Outcome of a permutation test.

    ``witness`` on failure is a colliding pair ``(x, y)`` for brute force,
    ``"gcd(k,q-1)>1"`` or the smallest failing power-sum index ``s`` for Hermite.
    """

    is_pp: bool
    method: str
    witness: Witness = None

    def as_dict(self) -> dict:
        w = list(self.witness) if isinstance(self.witness, tuple) else self.witness
        return {"method": self.method, "is_pp": self.is_pp, "witness": w}


def _check_k(ctx_q: int, k: int) -> None:
    if not 1 <= k <= ctx_q - 1:
        raise ValueError(f"k must lie in [1, {ctx_q - 1}], got {k}")


def eval_A(ctx: FieldContext, k: int, x):
    _check_k(ctx.q, k)
    xk = ctx.pow(x, k)
    return ctx.mul(xk, ctx.sub(ctx.pow(ctx.add(x, 1), k), xk))


def eval_B(ctx: FieldContext, k: int, x):
    _check_k(ctx.q, k)
    q = ctx.q
    head = ctx.mul(ctx.sub(ctx.pow(ctx.add(x, 1), 2 * k), 1), ctx.pow(x, q - 1 - k))
    return ctx.sub(head, ctx.mul(ctx.scalar(2), ctx.pow(x, q - 1)))


def values_A(ctx: FieldContext, k: int) -> np.ndarray:
    return eval_A(ctx, k, ctx.elements())


def values_B(ctx: FieldContext, k: int) -> np.ndarray:
    return eval_B(ctx, k, ctx.elements())


Evaluator = Union[Callable, np.ndarray]


def _values(ctx: FieldContext, evaluator: Evaluator) -> np.ndarray:
    if callable(evaluator):
        out = evaluator(ctx.elements())
        out = np.asarray(out, dtype=np.int64)
        if out.shape != (ctx.q,):
            # scalar-only evaluator
            out = np.array([evaluator(int(x)) for x in range(ctx.q)], dtype=np.int64)
        return out
    return np.asarray(evaluator, dtype=np.int64)


def is_pp_bruteforce(ctx: FieldContext, evaluator: Evaluator) -> PPVerdict:
    """Evaluate at every element; PP iff all q values are distinct.

    ``evaluator`` is either a callable accepting an array of element indices
    or a precomputed value table of length q.
    """
    vals = _values(ctx, evaluator)
    first = np.full(ctx.q, -1, dtype=np.int64)
    # first x hitting each value, scanning x ascending
    order = np.arange(ctx.q - 1, -1, -1)
    first[vals[order]] = order
    dup = np.nonzero(first[vals] != np.arange(ctx.q))[0]
    if dup.size == 0:
        return PPVerdict(True, BRUTE)
    y = int(dup[0])
    return PPVerdict(False, BRUTE, (int(first[vals[y]]), y))


def powsum_direct(ctx: FieldContext, evaluator: Evaluator, s: int) -> int:
    """sum_{x in F_q} f(x)^s as a residue mod p."""
    if not 1 <= s <= ctx.q - 1:
        raise ValueError(f"s must lie in [1, {ctx.q - 1}]")
    vals = _values(ctx, evaluator)
    return ctx.to_prime_field(ctx.sum(ctx.pow(vals, s)))


# --- closed forms --------------------------------------------------------------

def _signs(i: np.ndarray) -> np.ndarray:
    return np.where(i % 2 == 0, 1, -1)


def _A_inner(q: int, p: int, k: int, s: int) -> int:
    """sum_i (-1)^i C(s,i) C((ki)*, (2ks)*) mod p."""
    L = lucas_table(p, q)
    i = np.arange(s + 1, dtype=np.int64)
    top = star_array(k * i, q)
    bottom = int(star_array(np.int64(2 * k * s), q))
    terms = _signs(i) * L(s, i) * L(top, bottom)
    return int(terms.sum() % p)


def _B_inner(q: int, p: int, k: int, s: int) -> int:
    """sum_i (-1)^i C(s,i) C((2ki)*, (ks)*) mod p  (left side of the Hermite condition for B_k)."""
    L = lucas_table(p, q)
    i = np.arange(s + 1, dtype=np.int64)
    top = star_array(2 * k * i, q)
    bottom = int(star_array(np.int64(k * s), q))
    terms = _signs(i) * L(s, i) * L(top, bottom)
    return int(terms.sum() % p)


def powsum_A_closed(q: int, p: int, k: int, s: int) -> int:
    return neg_one_pow(s + 1) * _A_inner(q, p, k, s) % p


def powsum_B_closed(q: int, p: int, k: int, s: int) -> int:
    L = lucas_table(p, q)
    if p == 2:
        i = np.arange(s + 1, dtype=np.int64)
        top = star_array(2 * k * i, q)
        bottom = int(star_array(np.int64(k * s), q))
        return int((L(s, i) * L(top, bottom)).sum() % 2)
    # odd q: -(-2)^s sum_{0<=j<=i<=s} 2^{-i} (-1)^j C(s,i) C(i,j) C((2kj)*, (ki)*)
    i = np.arange(s + 1, dtype=np.int64)[:, None]
    j = np.arange(s + 1, dtype=np.int64)[None, :]
    inv2 = pow(2, -1, p)
    inv2_pows = np.array([pow(inv2, int(t), p) for t in range(s + 1)], dtype=np.int64)[:, None]
    terms = (inv2_pows * _signs(j)) % p
    terms = terms * L(s, i) % p
    terms = terms * L(i, j) % p
    terms = terms * L(star_array(2 * k * j, q), star_array(k * i, q)) % p
    total = int(terms.sum() % p)
    return -signed_pow2_mod(s, p) * total % p


# --- Hermite -------------------------------------------------------------------

def is_pp_A_hermite(q: int, p: int, k: int) -> PPVerdict:
    _check_k(q, k)
    if math.gcd(k, q - 1) != 1:
        return PPVerdict(False, HERMITE, "gcd(k,q-1)>1")
    for s in range(1, q - 1):
        if _A_inner(q, p, k, s) != 0:
            return PPVerdict(False, HERMITE, s)
    return PPVerdict(True, HERMITE)


def is_pp_B_hermite(q: int, p: int, k: int) -> PPVerdict:
    _check_k(q, k)
    if math.gcd(k, q - 1) != 1:
        return PPVerdict(False, HERMITE, "gcd(k,q-1)>1")
    for s in range(1, q - 1):
        if _B_inner(q, p, k, s) != signed_pow2_mod(s, p):
            return PPVerdict(False, HERMITE, s)
    return PPVerdict(True, HERMITE)


def is_pp_A(ctx: FieldContext, k: int, method: str = BRUTE) -> PPVerdict:
    if method == BRUTE:
        return is_pp_bruteforce(ctx, values_A(ctx, k))
    return is_pp_A_hermite(ctx.q, ctx.p, k)


def is_pp_B(ctx: FieldContext, k: int, method: str = BRUTE) -> PPVerdict:
    if method == BRUTE:
        return is_pp_bruteforce(ctx, values_B(ctx, k))
    return is_pp_B_hermite(ctx.q, ctx.p, k)


def p_powers(p: int, q: int) -> list[int]:
    """The exponents p^i, 0 <= i < e, with q = p^e."""
    out, x = [], 1
    while x < q:
        out.append(x)
        x *= p
    return out


def pp_set(ctx: FieldContext, kind: str, method: str = BRUTE,
           ks: Optional[range] = None) -> list[int]:
    """Exponents k for which the chosen polynomial family is a PP."""
    ks = ks if ks is not None else range(1, ctx.q)
    out = []
    for k in ks:
        if kind in ("A", "joint") and not is_pp_A(ctx, k, method).is_pp:
            continue
        if kind in ("B", "joint") and not is_pp_B(ctx, k, method).is_pp:
            continue
        out.append(k)
    return out
