"""Figures written next to report files. Headless (Agg) only."""

from __future__ import annotations

from collections import Counter, defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

FIGSIZE = (6.4, 4.0)


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_scan(records: list[dict], path: Path) -> Path:
    """One row per q: p-power exponents vs. exponents with a PP verdict."""
    by_q = defaultdict(list)
    for r in records:
        by_q[r["q"]].append(r)
    qs = sorted(by_q)
    fig, ax = plt.subplots(figsize=(FIGSIZE[0], max(2.5, 0.3 * len(qs) + 1)))
    for row, q in enumerate(qs):
        ks_pp, ks_bad = [], []
        for r in by_q[q]:
            verdicts = [r[key][0]["is_pp"] for key in ("verdict_A", "verdict_B") if r[key]]
            if all(verdicts):
                (ks_bad if r["discrepancy"] else ks_pp).append(r["k"] / (q - 1))
        ax.scatter(ks_pp, [row] * len(ks_pp), s=14, color="tab:blue")
        ax.scatter(ks_bad, [row] * len(ks_bad), s=30, marker="x", color="tab:red")
    ax.set_yticks(range(len(qs)))
    ax.set_yticklabels([str(q) for q in qs], fontsize=7)
    ax.set_xlabel("k / (q - 1) with a PP verdict")
    ax.set_ylabel("q")
    ax.set_xlim(0, 1.02)
    return _save(fig, path)


def plot_alpha(records: list[dict], path: Path) -> Path:
    p = [r["p"] for r in records]
    ratio = [r["alpha"] / (r["p"] - 1) for r in records]
    exc = [r["is_exception"] for r in records]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.scatter([x for x, e in zip(p, exc) if not e], [y for y, e in zip(ratio, exc) if not e],
               s=4, color="tab:gray", label="alpha(p) = p - 1")
    ax.scatter([x for x, e in zip(p, exc) if e], [y for y, e in zip(ratio, exc) if e],
               s=6, color="tab:red", label="exception")
    ax.axhline(0.5, lw=0.8, ls="--", color="k")
    ax.set_xlabel("p")
    ax.set_ylabel("alpha(p) / (p - 1)")
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, path)


def plot_girth(records: list[dict], path: Path) -> Path:
    counts = Counter((r["q"], r["girth"]) for r in records)
    qs = sorted({q for q, _ in counts})
    girths = sorted({g for _, g in counts if g is not None})
    fig, ax = plt.subplots(figsize=FIGSIZE)
    width = 0.8 / max(1, len(girths))
    for i, g in enumerate(girths):
        ax.bar([j + i * width for j in range(len(qs))], [counts[(q, g)] for q in qs],
               width=width, label=f"girth {g}")
    ax.set_xticks([j + 0.4 - width / 2 for j in range(len(qs))])
    ax.set_xticklabels([str(q) for q in qs])
    ax.set_xlabel("q")
    ax.set_ylabel("graphs")
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, path)


def plot_filters(records: list[dict], path: Path) -> Path:
    fails = Counter()
    for r in records:
        for key, val in r["outcomes"].items():
            if val == "fail":
                fails[key] += 1
    keys = list(records[0]["outcomes"]) if records else []
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.barh(keys, [fails[k] for k in keys], color="tab:orange")
    ax.invert_yaxis()
    ax.set_xlabel("exponents rejected")
    ax.tick_params(axis="y", labelsize=7)
    return _save(fig, path)


def plot_powsum(records: list[dict], path: Path) -> Path:
    per_q = Counter()
    bad_q = Counter()
    for r in records:
        per_q[r["q"]] += r["s_checked"]
        bad_q[r["q"]] += len(r["mismatch_A"]) + len(r["mismatch_B"])
    qs = sorted(per_q)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.bar([str(q) for q in qs], [per_q[q] for q in qs], color="tab:blue", label="(k, s) pairs")
    ax.bar([str(q) for q in qs], [bad_q[q] for q in qs], color="tab:red", label="mismatches")
    ax.set_xlabel("q")
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, path)


PLOTTERS = {
    "scan": plot_scan,
    "alpha": plot_alpha,
    "girth": plot_girth,
    "filters": plot_filters,
    "powsum-xcheck": plot_powsum,
}
