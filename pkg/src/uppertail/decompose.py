"""Bounded-degree subhypergraphs, star matchings, and dyadic degree pruning.

All routines operate on the subhypergraph induced by a vertex set S.  Exact
searches carry explicit budgets and raise CapacityError beyond them rather
than degrade silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .hypergraph import CapacityError, Hypergraph, VertexSet, induced_edges

__all__ = [
    "CascadeCheck",
    "CascadeLevel",
    "CascadeLevelCheck",
    "CascadeParams",
    "CascadeResult",
    "PruneResult",
    "Star",
    "StarMatching",
    "cascade_prune",
    "check_cascade_event",
    "default_star_scales",
    "degree_prune",
    "greedy_star_matching",
    "make_star_matching",
    "mr_exact",
    "xr_exact",
    "xr_or_lower",
]

XR_EDGE_BUDGET = 22
MR_STAR_BUDGET = 10_000


@dataclass(frozen=True)
class Star:
    """A center vertex together with ceil(r) distinct edges through it."""

    center: int
    edge_ids: tuple[int, ...]

    def __post_init__(self):
        if self.center < 0:
            raise ValueError("center must be a vertex id")
        if not self.edge_ids:
            raise ValueError("a star needs at least one edge")
        if any(a >= b for a, b in zip(self.edge_ids, self.edge_ids[1:])):
            raise ValueError("edge ids must be strictly increasing")


@dataclass(frozen=True)
class StarMatching:
    """Stars whose vertex sets are pairwise disjoint; built by make_star_matching."""

    stars: tuple[Star, ...]
    vertex_bits: int

    @property
    def size(self) -> int:
        return len(self.stars)


def _star_bits(h: Hypergraph, star: Star) -> int:
    bits = 0
    for i in star.edge_ids:
        bits |= h.edge_masks[i]
    return bits


def make_star_matching(h: Hypergraph, stars: tuple[Star, ...]) -> StarMatching:
    """Validate stars against h (center membership, disjoint vertex sets)."""
    sizes = {len(star.edge_ids) for star in stars}
    if len(sizes) > 1:
        raise ValueError("stars in one matching must have equal edge counts")
    used = 0
    for star in stars:
        for i in star.edge_ids:
            if not 0 <= i < len(h.edges):
                raise ValueError(f"edge id {i} out of range")
            if star.center not in h.edges[i]:
                raise ValueError(f"edge {i} does not contain center {star.center}")
        bits = _star_bits(h, star)
        if used & bits:
            raise ValueError("star vertex sets overlap")
        used |= bits
    return StarMatching(stars=tuple(stars), vertex_bits=used)


@dataclass(frozen=True)
class CascadeParams:
    """Dyadic cascade parameters; level j uses radius r_j = 2^j * r.

    The soft scale s = log(e / p^gamma) separates the two per-level
    matching thresholds.
    """

    beta: float
    gamma: float
    r: float
    t: float
    p: float

    def __post_init__(self):
        if not 0.0 < self.beta <= 1.0:
            raise ValueError("beta must lie in (0, 1]")
        if not 0.0 < self.gamma <= 0.125:
            raise ValueError("gamma must lie in (0, 1/8]")
        if self.r <= 0 or self.t <= 0:
            raise ValueError("r and t must be positive")
        if not 0.0 < self.p < 1.0:
            raise ValueError("p must lie in (0, 1)")

    @property
    def s(self) -> float:
        return 1.0 + self.gamma * math.log(1.0 / self.p)

    def r_level(self, j: int) -> float:
        return math.ldexp(self.r, j)

    @property
    def level_count(self) -> int:
        """Smallest J >= 0 with r * 2^J >= sqrt(t)."""
        target = math.sqrt(self.t)
        j = 0
        while self.r_level(j) < target:
            j += 1
        return j


def default_star_scales(mu: float, eps: float, k: int, r: float) -> tuple[float, float]:
    """Default degree scale z = sqrt(eps * mu / (4k)) and count scale y = z / r."""
    if mu < 0 or eps <= 0 or k < 1 or r <= 0:
        raise ValueError("need mu >= 0, eps > 0, k >= 1, r > 0")
    z = math.sqrt(eps * mu / (4.0 * k))
    return z, z / r


def _local_incidence(h: Hypergraph, edge_ids: tuple[int, ...]) -> dict[int, list[int]]:
    inc: dict[int, list[int]] = {}
    for i in edge_ids:
        for v in h.edges[i]:
            inc.setdefault(v, []).append(i)
    return inc


def _induced_max_degree(h: Hypergraph, edge_ids: tuple[int, ...]) -> int:
    inc = _local_incidence(h, edge_ids)
    return max((len(ids) for ids in inc.values()), default=0)


def xr_exact(h: Hypergraph, s: VertexSet, r: float, budget: int = XR_EDGE_BUDGET) -> int:
    """Maximum edges of a subhypergraph of H[S] with max degree <= r.

    Exhaustive branch-and-bound over the induced edges; refuses instances
    with more than `budget` induced edges.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    ids = induced_edges(h, s)
    if len(ids) > budget:
        raise CapacityError(f"{len(ids)} induced edges exceed budget {budget}")
    return _xr_exact_on(h, ids, r)


def _xr_exact_on(h: Hypergraph, ids: tuple[int, ...], r: float) -> int:
    cap = math.floor(r)
    if cap < 1 or not ids:
        return 0
    verts = sorted({v for i in ids for v in h.edges[i]})
    vid = {v: loc for loc, v in enumerate(verts)}
    local = [tuple(vid[v] for v in h.edges[i]) for i in ids]
    nv = len(verts)
    m = len(local)

    deg = [0] * nv
    best = 0
    for e in local:
        if all(deg[v] < cap for v in e):
            for v in e:
                deg[v] += 1
            best += 1
    if best == m:
        return best

    # rem[idx][v]: occurrences of v among edges idx..m-1
    rem = [[0] * nv for _ in range(m + 1)]
    for idx in range(m - 1, -1, -1):
        row = rem[idx + 1][:]
        for v in local[idx]:
            row[v] += 1
        rem[idx] = row

    chosen = [0] * nv
    k = h.k

    def dfs(idx: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if idx == m or count + (m - idx) <= best:
            return
        row = rem[idx]
        potential = 0
        for v in range(nv):
            potential += min(chosen[v] + row[v], cap)
        if potential // k <= best:
            return
        e = local[idx]
        if all(chosen[v] < cap for v in e):
            for v in e:
                chosen[v] += 1
            dfs(idx + 1, count + 1)
            for v in e:
                chosen[v] -= 1
        dfs(idx + 1, count)

    dfs(0, 0)
    return best


def xr_or_lower(
    h: Hypergraph, s: VertexSet, r: float, budget: int = XR_EDGE_BUDGET
) -> tuple[int, bool]:
    """X_r when it is cheap, else a certified lower bound, with an exactness flag.

    Delta_1(H[S]) <= r forces X_r = e(H[S]); small instances go through the
    exhaustive search; beyond `budget` induced edges the greedy pruned-edge
    count stands in (every pruned subgraph is feasible, so it never exceeds
    X_r).
    """
    if r <= 0:
        raise ValueError("r must be positive")
    ids = induced_edges(h, s)
    if _induced_max_degree(h, ids) <= r:
        return len(ids), True
    if len(ids) <= budget:
        return _xr_exact_on(h, ids, r), True
    return len(_degree_prune_on(h, ids, r).kept_edge_ids), False


def _greedy_matching_on(h: Hypergraph, edge_ids: tuple[int, ...], r: float) -> StarMatching:
    c = math.ceil(r)
    inc = _local_incidence(h, edge_ids)
    blocked = 0
    stars = []
    for v in sorted(inc):
        if (blocked >> v) & 1:
            continue
        avail = [i for i in inc[v] if h.edge_masks[i] & blocked == 0]
        if len(avail) >= c:
            star = Star(v, tuple(avail[:c]))
            stars.append(star)
            blocked |= _star_bits(h, star)
    return make_star_matching(h, tuple(stars))


def greedy_star_matching(h: Hypergraph, s: VertexSet, r: float) -> StarMatching:
    """Scan centers in increasing id order, taking the ceil(r) lowest-indexed
    unblocked induced edges at each eligible center and blocking their vertices.

    The result is maximal: afterwards no vertex has ceil(r) induced edges
    avoiding all blocked vertices.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    return _greedy_matching_on(h, induced_edges(h, s), r)


@dataclass(frozen=True)
class PruneResult:
    """Greedy matching plus the induced edges avoiding its vertices."""

    matching: StarMatching
    kept_edge_ids: tuple[int, ...]


def _degree_prune_on(h: Hypergraph, edge_ids: tuple[int, ...], r: float) -> PruneResult:
    matching = _greedy_matching_on(h, edge_ids, r)
    blocked = matching.vertex_bits
    kept = tuple(i for i in edge_ids if h.edge_masks[i] & blocked == 0)
    cap = math.ceil(r) - 1
    worst = _induced_max_degree(h, kept)
    if worst > cap:
        raise AssertionError(f"pruned degree {worst} exceeds {cap}")
    return PruneResult(matching, kept)


def degree_prune(h: Hypergraph, s: VertexSet, r: float) -> PruneResult:
    """Remove every induced edge meeting the greedy stars' vertices.

    The remainder has max degree <= ceil(r) - 1 <= r by maximality of the
    greedy matching; violated expectations raise.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    return _degree_prune_on(h, induced_edges(h, s), r)


@dataclass(frozen=True)
class CascadeLevel:
    j: int
    r_j: float
    matching_size: int
    removed: int
    kept: int
    delta1_before: int


@dataclass(frozen=True)
class CascadeResult:
    levels: tuple[CascadeLevel, ...]
    kept_edge_ids: tuple[int, ...]
    level_count: int


def cascade_prune(h: Hypergraph, s: VertexSet, params: CascadeParams) -> CascadeResult:
    """Prune greedily at radii r_{J-1}, ..., r_0 (just r_0 when J = 0).

    The final edge set has max degree <= floor(r); per-level matching sizes
    are reported for the removal accounting.
    """
    current = induced_edges(h, s)
    big_j = params.level_count
    levels = []
    for j in (range(big_j - 1, -1, -1) if big_j > 0 else [0]):
        r_j = params.r_level(j)
        result = _degree_prune_on(h, current, r_j)
        kept = result.kept_edge_ids
        levels.append(
            CascadeLevel(
                j=j,
                r_j=r_j,
                matching_size=result.matching.size,
                removed=len(current) - len(kept),
                kept=len(kept),
                delta1_before=_induced_max_degree(h, current),
            )
        )
        current = kept
    final_cap = math.floor(params.r)
    worst = _induced_max_degree(h, current)
    if worst > final_cap:
        raise AssertionError(f"final degree {worst} exceeds floor(r) = {final_cap}")
    return CascadeResult(tuple(levels), current, big_j)


def _mr_exact_on(h: Hypergraph, edge_ids: tuple[int, ...], r: float, budget: int) -> int:
    c = math.ceil(r)
    inc = _local_incidence(h, edge_ids)
    eligible = {v: ids for v, ids in inc.items() if len(ids) >= c}
    candidates = sum(comb(len(ids), c) for ids in eligible.values())
    if candidates > budget:
        raise CapacityError(f"{candidates} candidate stars exceed budget {budget}")
    centers = sorted(eligible)
    best = _greedy_matching_on(h, edge_ids, r).size

    def dfs(ci: int, blocked: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if ci == len(centers) or count + (len(centers) - ci) <= best:
            return
        v = centers[ci]
        if not (blocked >> v) & 1:
            avail = [i for i in eligible[v] if h.edge_masks[i] & blocked == 0]
            if len(avail) >= c:
                for chosen in combinations(avail, c):
                    bits = 0
                    for i in chosen:
                        bits |= h.edge_masks[i]
                    dfs(ci + 1, blocked | bits, count + 1)
        dfs(ci + 1, blocked, count)

    dfs(0, 0, 0)
    return best


def mr_exact(h: Hypergraph, s: VertexSet, r: float, budget: int = MR_STAR_BUDGET) -> int:
    """Maximum number of vertex-disjoint stars of ceil(r) induced edges.

    Branch-and-bound set packing over candidate stars, seeded with the greedy
    matching; refuses instances with more than `budget` candidate stars.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    return _mr_exact_on(h, induced_edges(h, s), r, budget)


@dataclass(frozen=True)
class CascadeLevelCheck:
    j: int
    r_j: float
    threshold: float
    matching_value: int
    exact: bool
    passed: bool | None


@dataclass(frozen=True)
class CascadeCheck:
    """verdict True/False, or None when a level was indeterminate."""

    verdict: bool | None
    levels: tuple[CascadeLevelCheck, ...]


def check_cascade_event(
    h: Hypergraph,
    s: VertexSet,
    params: CascadeParams,
    star_budget: int = MR_STAR_BUDGET,
) -> CascadeCheck:
    """Test the per-level matching thresholds on the sample S.

    Level j requires M_{r_j} < beta * sqrt(t) * s / r_j while r_j < sqrt(t)/s
    and M_{r_j} < beta * sqrt(t) / r_j afterwards.  The greedy matching is a
    lower bound for M, so a greedy violation falsifies outright; a greedy pass
    with the exact search over budget leaves that level indeterminate.  The
    scan stops once r_j > max(2 sqrt(t), Delta_1(H[S])), beyond which M = 0.
    """
    ids = induced_edges(h, s)
    delta1 = _induced_max_degree(h, ids)
    sqrt_t = math.sqrt(params.t)
    scan_cap = max(2.0 * sqrt_t, float(delta1))
    levels = []
    saw_indeterminate = False
    j = 0
    while True:
        r_j = params.r_level(j)
        if r_j > scan_cap:
            break
        if r_j < sqrt_t / params.s:
            threshold = params.beta * sqrt_t * params.s / r_j
        else:
            threshold = params.beta * sqrt_t / r_j
        greedy_size = _greedy_matching_on(h, ids, r_j).size
        if greedy_size >= threshold:
            levels.append(CascadeLevelCheck(j, r_j, threshold, greedy_size, False, False))
            return CascadeCheck(False, tuple(levels))
        try:
            exact_val = _mr_exact_on(h, ids, r_j, star_budget)
        except CapacityError:
            levels.append(CascadeLevelCheck(j, r_j, threshold, greedy_size, False, None))
            saw_indeterminate = True
        else:
            passed = exact_val < threshold
            levels.append(CascadeLevelCheck(j, r_j, threshold, exact_val, True, passed))
            if not passed:
                return CascadeCheck(False, tuple(levels))
        j += 1
    return CascadeCheck(None if saw_indeterminate else True, tuple(levels))
