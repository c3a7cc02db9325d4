"""Integer edge families on {1, ..., n} and small-witness constructions.

Builders accept 1-based n and emit hypergraphs on 0-based vertices, so vertex
v represents the integer v + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hypergraph import Hypergraph, VertexSet, induced_edge_count

__all__ = [
    "FamilySpec",
    "Witness",
    "build",
    "build_ap",
    "build_ell_sum",
    "build_schur",
    "greedy_witness",
    "interval_witness",
    "prefix_edge_count",
]

KINDS = ("ap", "schur", "ell_sum")


@dataclass(frozen=True)
class FamilySpec:
    """Which integer family to build: ap(n, k), schur(n), or ell_sum(n, ell)."""

    kind: str
    n: int
    k: int = 3
    ell: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.kind == "ap":
            if self.k < 2:
                raise ValueError("ap requires uniformity k >= 2")
        elif self.k != 3:
            raise ValueError(f"{self.kind} is 3-uniform")
        if self.kind == "ell_sum" and self.ell < 1:
            raise ValueError("ell must be at least 1")


@dataclass(frozen=True)
class Witness:
    """Vertex set W with e(H[W]) >= x and |W| <= d_used * max(sqrt(x), 1)."""

    hypergraph: Hypergraph
    subset: VertexSet
    d_used: float
    x: float

    def __post_init__(self):
        if self.d_used < 0:
            raise ValueError("d_used must be nonnegative")
        achieved = induced_edge_count(self.hypergraph, self.subset)
        if achieved < self.x:
            raise ValueError(f"witness induces {achieved} < {self.x} edges")
        cap = self.d_used * max(math.sqrt(max(self.x, 0.0)), 1.0)
        if len(self.subset) > cap + 1e-9:
            raise ValueError(f"witness size {len(self.subset)} exceeds {cap}")


def build(spec: FamilySpec) -> Hypergraph:
    if spec.kind == "ap":
        return build_ap(spec.n, spec.k)
    if spec.kind == "schur":
        return build_schur(spec.n)
    return build_ell_sum(spec.n, spec.ell)


def build_ap(n: int, k: int) -> Hypergraph:
    """k-term arithmetic progressions {a, a+d, ..., a+(k-1)d}, a >= 1, d >= 1.

    k > n yields the empty hypergraph on n vertices, not an error.
    """
    if k < 2:
        raise ValueError("ap requires uniformity k >= 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    edges = []
    for d in range(1, (n - 1) // (k - 1) + 1 if n >= 1 else 0):
        for a in range(1, n - (k - 1) * d + 1):
            edges.append(tuple(a - 1 + i * d for i in range(k)))
    return Hypergraph(k, n, edges)


def build_schur(n: int) -> Hypergraph:
    """Triples {x, y, x+y} with x < y and x + y <= n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    edges = []
    for x in range(1, n // 2 + 1):
        for y in range(x + 1, n - x + 1):
            edges.append((x - 1, y - 1, x + y - 1))
    return Hypergraph(3, n, edges)


def build_ell_sum(n: int, ell: int) -> Hypergraph:
    """Triples {x, y, z} of distinct integers with x < y and x + y = ell * z.

    ell = 1 reproduces the Schur triples exactly.
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    edges = set()
    for z in range(1, n + 1):
        s = ell * z
        lo = max(1, s - n)
        hi = (s - 1) // 2
        for x in range(lo, hi + 1):
            y = s - x
            if z == x or z == y:
                continue
            edges.add(tuple(sorted((x - 1, y - 1, z - 1))))
    return Hypergraph(3, n, edges)


def prefix_edge_count(spec: FamilySpec, m: int) -> int:
    """Number of family edges inside the prefix {1, ..., m}.

    All three families are prefix-closed, so this is the edge count of the
    same family built on m. Computed arithmetically, without building edges.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    m = min(m, spec.n)
    if spec.kind == "ap":
        k = spec.k
        if m < k:
            return 0
        dmax = (m - 1) // (k - 1)
        return dmax * m - (k - 1) * dmax * (dmax + 1) // 2
    if spec.kind == "schur":
        xmax = (m - 1) // 2
        return xmax * (m - xmax - 1)
    total = 0
    for z in range(1, m + 1):
        s = spec.ell * z
        lo = max(1, s - m)
        hi = (s - 1) // 2
        if hi < lo:
            continue
        total += hi - lo + 1
        if lo <= z <= hi:
            total -= 1
        x_for_y_eq_z = s - z
        if lo <= x_for_y_eq_z <= hi and x_for_y_eq_z < z:
            total -= 1
    return total


def interval_witness(spec: FamilySpec, x: float) -> Witness | None:
    """Smallest prefix {1, ..., m} inducing at least x edges, or None.

    Binary search on the exact prefix edge count; d_used is recovered from
    the resulting size as |W| / max(sqrt(x), 1).
    """
    h = build(spec)
    if x <= 0:
        return Witness(h, VertexSet(spec.n, 0), 0.0, float(x))
    if prefix_edge_count(spec, spec.n) < x:
        return None
    lo, hi = 0, spec.n
    while lo < hi:
        mid = (lo + hi) // 2
        if prefix_edge_count(spec, mid) >= x:
            hi = mid
        else:
            lo = mid + 1
    subset = VertexSet(spec.n, (1 << lo) - 1)
    d_used = lo / max(math.sqrt(x), 1.0)
    return Witness(h, subset, d_used, float(x))


def greedy_witness(h: Hypergraph, x: float) -> Witness | None:
    """Grow W by the vertex completing the most new edges (ties: lowest id).

    No size guarantee; d_used is computed a posteriori.  Returns None when
    the whole hypergraph has fewer than x edges.
    """
    if x <= 0:
        return Witness(h, VertexSet(h.n, 0), 0.0, float(x))
    if len(h.edges) < x:
        return None
    in_w = [False] * h.n
    missing = [h.k] * len(h.edges)
    count = 0
    chosen = 0
    while count < x:
        best_v = -1
        best_gain = -1
        for v in range(h.n):
            if in_w[v]:
                continue
            gain = sum(1 for idx in h.incidence[v] if missing[idx] == 1)
            if gain > best_gain:
                best_v, best_gain = v, gain
        in_w[best_v] = True
        chosen += 1
        for idx in h.incidence[best_v]:
            missing[idx] -= 1
            if missing[idx] == 0:
                count += 1
    subset = VertexSet.from_bool_array(in_w)
    d_used = chosen / max(math.sqrt(x), 1.0)
    return Witness(h, subset, d_used, float(x))
