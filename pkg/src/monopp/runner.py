"""Batch tasks behind the CLI: each task turns (q, k-chunk) into plain dict
records, and ``run_tasks`` fans them out over a process pool and restores order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

from .ffield import field_for_q
from .filters import filter_pipeline
from .modarith import prime_power
from .permpoly import (
    BRUTE,
    HERMITE,
    is_pp_A,
    is_pp_B,
    p_powers,
    powsum_A_closed,
    powsum_B_closed,
    powsum_direct,
    values_A,
    values_B,
)

METHODS = {"brute": (BRUTE,), "hermite": (HERMITE,), "both": (BRUTE, HERMITE)}

SCAN_KEYS = ("q", "p", "e", "k", "p_power", "verdict_A", "verdict_B", "agree", "filter", "discrepancy")
FILTER_KEYS = ("q", "p", "k", "outcomes", "survives_all", "reason", "pp_A", "pp_B", "sound")
POWSUM_KEYS = ("q", "p", "k", "s_checked", "mismatch_A", "mismatch_B")


def chunks(q: int, k_from: int, k_to: int, n: int) -> list[tuple[int, int, int]]:
    """Split [k_from, k_to] into at most n contiguous (q, lo, hi) pieces."""
    total = k_to - k_from + 1
    if total <= 0:
        return []
    n = max(1, min(n, total))
    size, extra = divmod(total, n)
    out, lo = [], k_from
    for i in range(n):
        hi = lo + size + (1 if i < extra else 0) - 1
        out.append((q, lo, hi))
        lo = hi + 1
    return out


def scan_chunk(task: tuple[int, int, int], kind: str, method: str) -> list[dict]:
    q, lo, hi = task
    ctx = field_for_q(q)
    p, e = ctx.p, ctx.e
    powers = set(p_powers(p, q))
    methods = METHODS[method]
    out = []
    for k in range(lo, hi + 1):
        rec = dict.fromkeys(SCAN_KEYS)
        rec.update(q=q, p=p, e=e, k=k, p_power=k in powers)
        status = []
        agree = True
        for name, fn in (("A", is_pp_A), ("B", is_pp_B)):
            if kind not in (name, "joint"):
                continue
            vs = [fn(ctx, k, m) for m in methods]
            rec[f"verdict_{name}"] = [v.as_dict() for v in vs]
            agree &= len({v.is_pp for v in vs}) == 1
            status.append(vs[0].is_pp)
        is_pp = all(status)
        if len(methods) > 1:
            rec["agree"] = agree
        if q % 2:
            rec["filter"] = filter_pipeline(q, p, k).summary()
        rec["discrepancy"] = (is_pp != rec["p_power"]) or not agree
        out.append(rec)
    return out


def filters_chunk(task: tuple[int, int, int], soundness: bool) -> list[dict]:
    q, lo, hi = task
    ctx = field_for_q(q)
    out = []
    for k in range(lo, hi + 1):
        rep = filter_pipeline(q, ctx.p, k)
        rec = dict.fromkeys(FILTER_KEYS)
        rec.update(rep.as_dict())
        if soundness:
            a = is_pp_A(ctx, k).is_pp
            b = is_pp_B(ctx, k).is_pp
            rec.update(pp_A=a, pp_B=b)
            rec["sound"] = not ((rep.a_rejected and a) or (rep.b_rejected and b)
                                or (rep.joint_rejected and a and b))
        out.append(rec)
    return out


def powsum_chunk(task: tuple[int, int, int]) -> list[dict]:
    q, lo, hi = task
    ctx = field_for_q(q)
    p = ctx.p
    out = []
    for k in range(lo, hi + 1):
        va, vb = values_A(ctx, k), values_B(ctx, k)
        bad_a = [s for s in range(1, q) if powsum_direct(ctx, va, s) != powsum_A_closed(q, p, k, s)]
        bad_b = [s for s in range(1, q) if powsum_direct(ctx, vb, s) != powsum_B_closed(q, p, k, s)]
        rec = dict(q=q, p=p, k=k, s_checked=q - 1, mismatch_A=bad_a, mismatch_B=bad_b)
        out.append({key: rec[key] for key in POWSUM_KEYS})
    return out


def run_tasks(fn: Callable, tasks: Sequence, jobs: int = 1, **kwargs) -> list[dict]:
    """Apply fn(task, **kwargs) to each task; results come back sorted by (q, k)."""
    if jobs <= 1 or len(tasks) <= 1:
        results = [fn(t, **kwargs) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(fn, t, **kwargs) for t in tasks]
            results = [f.result() for f in futures]
    flat = [rec for chunk in results for rec in chunk]
    flat.sort(key=lambda r: (r["q"], r["k"]))
    return flat


def scan_tasks(qs: Iterable[int], k_from: int, k_to: int | None, jobs: int) -> list:
    tasks = []
    for q in qs:
        hi = q - 1 if k_to is None else min(k_to, q - 1)
        tasks.extend(chunks(q, max(1, k_from), hi, jobs))
    return tasks


def odd_prime_powers(q_max: int, q_min: int = 3) -> list[int]:
    return [q for q in range(max(q_min, 3), q_max + 1) if q % 2 and prime_power(q)]
