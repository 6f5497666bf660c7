"""Monomial graphs G_q(X^m1 Y^n1, X^m2 Y^n2) and their girth.

Point (p1,p2,p3) ~ line [l1,l2,l3]  iff  p2 + l2 = f(p1,l1) and p3 + l3 = g(p1,l1).

The graph is never stored. A vertex is an integer id: points are
``idx(v1) + q idx(v2) + q^2 idx(v3)`` in [0, q^3), lines are the same triple
code shifted by q^3. Neighbour lists are recomputed from two q x q tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .ffield import FieldContext
from .modarith import star

POINT, LINE = "P", "L"
FULL, SYMMETRY = "full", "symmetry"
DEFAULT_FULL_BOUND = 13
DEFAULT_SYMMETRY_BOUND = 32


class GraphBoundError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialGraphSpec:
    q: int
    m1: int
    n1: int
    m2: int
    n2: int

    def __post_init__(self):
        for name in ("m1", "n1", "m2", "n2"):
            v = getattr(self, name)
            if not 1 <= v <= self.q - 1:
                raise ValueError(f"exponent {name}={v} outside [1, {self.q - 1}]")

    @property
    def exponents(self) -> tuple[int, int, int, int]:
        return (self.m1, self.n1, self.m2, self.n2)

    @classmethod
    def gamma3(cls, q: int) -> "MonomialGraphSpec":
        """G_q(XY, XY^2)."""
        return cls(q, 1, 1, 1, star(2, q))

    @classmethod
    def family(cls, q: int, k: int) -> "MonomialGraphSpec":
        """G_q(XY, X^k Y^2k), exponents star-reduced."""
        return cls(q, 1, 1, star(k, q), star(2 * k, q))


@dataclass(frozen=True)
class VertexId:
    side: str
    triple: int

    def coords(self, q: int) -> tuple[int, int, int]:
        t = self.triple
        return (t % q, (t // q) % q, t // (q * q))


@dataclass(frozen=True)
class GirthResult:
    girth: Optional[int]  # None when acyclic
    certificate: tuple[int, ...] = ()

    @property
    def acyclic(self) -> bool:
        return self.girth is None


class MonomialGraph:
    """Implicit adjacency for one spec over one field."""

    def __init__(self, ctx: FieldContext, spec: MonomialGraphSpec):
        if ctx.q != spec.q:
            raise ValueError("field and spec disagree on q")
        self.ctx = ctx
        self.spec = spec
        q = ctx.q
        self.q = q
        self.n_side = q ** 3
        self.order = 2 * self.n_side
        x = ctx.elements()
        px = [ctx.pow(x, m)[:, None] for m in (spec.m1, spec.m2)]
        ly = [ctx.pow(x, n)[None, :] for n in (spec.n1, spec.n2)]
        # F[p1, l1], G[p1, l1]
        self.F = ctx.mul(px[0], ly[0])
        self.G = ctx.mul(px[1], ly[1])
        self.SUB = ctx.sub(x[:, None], x[None, :])

    def vertex(self, v: int) -> VertexId:
        return VertexId(LINE if v >= self.n_side else POINT, v % self.n_side)

    def vertex_id(self, side: str, coords: tuple[int, int, int]) -> int:
        q = self.q
        t = coords[0] + q * coords[1] + q * q * coords[2]
        return t + (self.n_side if side == LINE else 0)

    def neighbors(self, ids) -> np.ndarray:
        """Neighbour ids; shape (len(ids), q) for an array, (q,) for a scalar."""
        scalar = np.ndim(ids) == 0
        ids = np.atleast_1d(np.asarray(ids, dtype=np.int64))
        q, N = self.q, self.n_side
        t = ids % N
        v1 = (t % q)[:, None]
        v2 = ((t // q) % q)[:, None]
        v3 = (t // (q * q))[:, None]
        r = np.arange(q, dtype=np.int64)[None, :]
        is_line = (ids >= N)[:, None]
        # point: free coordinate is l1; line: free coordinate is p1
        p1 = np.where(is_line, r, v1)
        l1 = np.where(is_line, v1, r)
        f = self.F[p1, l1]
        g = self.G[p1, l1]
        out = r + q * self.SUB[f, v2] + q * q * self.SUB[g, v3]
        out = out + np.where(is_line, 0, N)
        return out[0] if scalar else out

    def all_vertices(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)


def neighbors(ctx: FieldContext, spec: MonomialGraphSpec, v: VertexId) -> list[VertexId]:
    g = MonomialGraph(ctx, spec)
    vid = v.triple + (g.n_side if v.side == LINE else 0)
    return [g.vertex(int(u)) for u in g.neighbors(vid)]


# --- shortest cycles --------------------------------------------------------------

def _path(parent: np.ndarray, v: int) -> list[int]:
    out = [v]
    while parent[v] >= 0:
        v = int(parent[v])
        out.append(v)
    return out[::-1]


def _bfs_shortest_cycle(g: MonomialGraph, root: int, best: int):
    """Shortest cycle found by BFS from root that is shorter than best.

    Returns (length, certificate) or None.
    """
    dist = np.full(g.order, -1, dtype=np.int32)
    parent = np.full(g.order, -1, dtype=np.int64)
    dist[root] = 0
    frontier = np.array([root], dtype=np.int64)
    d = 0
    while frontier.size and 2 * d < best:
        nb = g.neighbors(frontier)
        par = parent[frontier][:, None]
        nd = dist[nb]
        if np.any(nd == d):
            raise AssertionError("edge inside a BFS level: graph is not bipartite")
        back = (nd == d - 1) & (nb != par) if d > 0 else np.zeros_like(nb, dtype=bool)
        if back.any():
            r, c = map(int, np.argwhere(back)[0])
            u, v = int(frontier[r]), int(nb[r, c])
            pu, pv = _path(parent, u), _path(parent, v)
            return 2 * d, tuple(pu + pv[:0:-1])
        new_mask = nd == -1
        new = nb[new_mask]
        src = np.broadcast_to(frontier[:, None], nb.shape)[new_mask]
        uniq, first, counts = np.unique(new, return_index=True, return_counts=True)
        if 2 * d + 2 < best and np.any(counts > 1):
            w = int(uniq[np.argmax(counts > 1)])
            hits = np.nonzero(new == w)[0]
            u1, u2 = int(src[hits[0]]), int(src[hits[1]])
            p1, p2 = _path(parent, u1), _path(parent, u2)
            return 2 * d + 2, tuple(p1 + [w] + p2[:0:-1])
        dist[uniq] = d + 1
        parent[uniq] = src[first]
        frontier = uniq
        d += 1
    return None


def symmetry_roots(g: MonomialGraph) -> np.ndarray:
    """Points (p1, 0, 0). Translations (p2, p3) -> (p2 + b, p3 + c) on points and
    (l2, l3) -> (l2 - b, l3 - c) on lines are automorphisms, so every point is
    equivalent to one of these."""
    return np.arange(g.q, dtype=np.int64)


def girth(ctx: FieldContext, spec: MonomialGraphSpec, mode: str = SYMMETRY,
          bound: Optional[int] = None) -> GirthResult:
    if mode not in (FULL, SYMMETRY):
        raise ValueError(f"unknown mode {mode!r}")
    limit = bound if bound is not None else (DEFAULT_FULL_BOUND if mode == FULL else DEFAULT_SYMMETRY_BOUND)
    if spec.q > limit:
        raise GraphBoundError(f"q = {spec.q} exceeds the {mode} girth bound {limit}")
    g = MonomialGraph(ctx, spec)
    roots = g.all_vertices() if mode == FULL else symmetry_roots(g)
    best, cert = g.order + 1, ()
    for root in roots:
        found = _bfs_shortest_cycle(g, int(root), best)
        if found is not None:
            best, cert = found
            if best == 4:
                break
    if not cert:
        return GirthResult(None)
    return GirthResult(best, cert)


def is_valid_cycle(g: MonomialGraph, cycle) -> bool:
    """Closed path, distinct vertices, alternating sides, every step an edge."""
    cyc = [int(v) for v in cycle]
    n = len(cyc)
    if n < 4 or n % 2 or len(set(cyc)) != n:
        return False
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        if (a >= g.n_side) == (b >= g.n_side):
            return False
        if b not in set(g.neighbors(a).tolist()):
            return False
    return True


def _has_duplicate_per_row(rows: np.ndarray) -> bool:
    s = np.sort(rows, axis=1)
    return bool(np.any(s[:, 1:] == s[:, :-1]))


def _point_batches(g: MonomialGraph, size: int = 512) -> Iterator[np.ndarray]:
    for start in range(0, g.n_side, size):
        yield np.arange(start, min(start + size, g.n_side), dtype=np.int64)


def has_c4(g: MonomialGraph) -> bool:
    """Some two distinct points share two lines: from each point, the points two
    steps away (excluding itself) contain a repeat."""
    q = g.q
    for pts in _point_batches(g):
        lines = g.neighbors(pts)  # (n, q)
        second = g.neighbors(lines.ravel()).reshape(len(pts), q * q)
        second = second[second != np.repeat(pts, q * q).reshape(len(pts), q * q)].reshape(len(pts), q * (q - 1))
        if _has_duplicate_per_row(second):
            return True
    return False


def has_c6(g: MonomialGraph) -> bool:
    """Assuming no 4-cycles: some point has two distinct non-backtracking
    3-paths ending at the same line."""
    q = g.q
    for pts in _point_batches(g, max(1, 4096 // q)):
        n = len(pts)
        l1 = g.neighbors(pts)  # (n, q)
        p2 = g.neighbors(l1.ravel()).reshape(n, q, q)
        p2_ok = p2 != pts[:, None, None]
        l2 = g.neighbors(p2.ravel()).reshape(n, q, q, q)
        l2_ok = l2 != l1[:, :, None, None]
        ok = p2_ok[:, :, :, None] & l2_ok
        ends = np.where(ok, l2, -1 - np.arange(q ** 3).reshape(1, q, q, q)).reshape(n, q ** 3)
        if _has_duplicate_per_row(ends):
            return True
    return False


def girth_at_least(ctx: FieldContext, spec: MonomialGraphSpec, bound: int) -> bool:
    if bound not in (6, 8):
        raise ValueError("bound must be 6 or 8")
    g = MonomialGraph(ctx, spec)
    if has_c4(g):
        return False
    return bound == 6 or not has_c6(g)


def degree_check(g: MonomialGraph, ids: Optional[np.ndarray] = None) -> bool:
    """Every listed vertex has q distinct neighbours on the opposite side."""
    ids = g.all_vertices() if ids is None else ids
    nb = g.neighbors(ids)
    distinct = np.sort(nb, axis=1)
    if np.any(distinct[:, 1:] == distinct[:, :-1]):
        return False
    return bool(np.all((nb >= g.n_side) != (ids >= g.n_side)[:, None]))


@dataclass(frozen=True)
class CensusRecord:
    spec: MonomialGraphSpec
    girth: Optional[int]
    certificate: tuple[int, ...] = ()


def census_specs(q: int, family: str = "full") -> list[MonomialGraphSpec]:
    if family == "full":
        r = range(1, q)
        return [MonomialGraphSpec(q, a, b, c, d) for a in r for b in r for c in r for d in r]
    if family == "gamma":
        return [MonomialGraphSpec.family(q, k) for k in range(1, q)]
    if family == "gamma3":
        return [MonomialGraphSpec.gamma3(q)]
    raise ValueError(f"unknown family {family!r}")


def scan_monomial_graphs(ctx: FieldContext, q: int, family: str = "full",
                         mode: str = SYMMETRY) -> list[CensusRecord]:
    if family == "full" and q > 5:
        raise GraphBoundError("full exponent enumeration is limited to q <= 5")
    out = []
    for spec in census_specs(q, family):
        res = girth(ctx, spec, mode)
        out.append(CensusRecord(spec, res.girth, res.certificate))
    return out
