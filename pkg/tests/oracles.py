"""Naive reference implementations used to cross-check the library.

Everything here favors obviousness over speed: plain Python loops and
exhaustive enumeration, sharing no code with the package under test.
Vertices are 0-based; edges are sorted tuples.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations


# ------------------------------------------------------------- families


def ap_edges(n: int, k: int) -> list[tuple[int, ...]]:
    """k-term arithmetic progressions inside {1..n}, as 0-based sorted tuples."""
    found = set()
    for a in range(1, n + 1):
        for d in range(1, n):
            terms = [a + i * d for i in range(k)]
            if terms[-1] <= n:
                found.add(tuple(sorted(v - 1 for v in terms)))
    return sorted(found)


def schur_edges(n: int) -> list[tuple[int, ...]]:
    """Triples {x, y, x+y} with x < y and x + y <= n, 0-based."""
    found = set()
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            if x + y <= n:
                found.add(tuple(sorted((x - 1, y - 1, x + y - 1))))
    return sorted(found)


def ell_sum_edges(n: int, ell: int) -> list[tuple[int, ...]]:
    """Distinct triples {x, y, z} in {1..n} with x + y = ell * z, 0-based."""
    found = set()
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            if x == y:
                continue
            s = x + y
            if s % ell:
                continue
            z = s // ell
            if 1 <= z <= n and z != x and z != y:
                found.add(tuple(sorted((x - 1, y - 1, z - 1))))
    return sorted(found)


# ------------------------------------------------- induced-count probability


def edge_bitmasks(edges: list[tuple[int, ...]]) -> list[int]:
    return [sum(1 << v for v in e) for e in edges]


def induced_count(edges: list[tuple[int, ...]], bits: int) -> int:
    total = 0
    for e in edges:
        if all((bits >> v) & 1 for v in e):
            total += 1
    return total


def size_value_histogram(edges: list[tuple[int, ...]], n: int) -> dict[tuple[int, int], int]:
    """counts[(|S|, X(S))] over all 2^n subsets, via bitmask subset tests."""
    masks = edge_bitmasks(edges)
    hist: dict[tuple[int, int], int] = {}
    for bits in range(1 << n):
        x = 0
        for m in masks:
            if bits & m == m:
                x += 1
        key = (bin(bits).count("1"), x)
        hist[key] = hist.get(key, 0) + 1
    return hist


def tail_from_histogram(
    hist: dict[tuple[int, int], int], n: int, p: float, threshold: float
) -> float:
    return math.fsum(
        c * p**j * (1.0 - p) ** (n - j) for (j, x), c in hist.items() if x >= threshold
    )


def naive_tail(edges: list[tuple[int, ...]], n: int, p: float, threshold: float) -> float:
    return tail_from_histogram(size_value_histogram(edges, n), n, p, threshold)


def naive_moments(hist: dict[tuple[int, int], int], n: int, p: float) -> tuple[float, float]:
    """(mean, variance) of the induced edge count from a size-value histogram."""
    weights = {j: p**j * (1.0 - p) ** (n - j) for j in range(n + 1)}
    mean = math.fsum(c * weights[j] * x for (j, x), c in hist.items())
    second = math.fsum(c * weights[j] * x * x for (j, x), c in hist.items())
    return mean, second - mean * mean


def naive_conditional_mean(edges: list[tuple[int, ...]], n: int, m: int) -> Fraction:
    """Average induced edge count over all m-subsets, as an exact fraction."""
    total = 0
    count = 0
    for combo in combinations(range(n), m):
        bits = 0
        for v in combo:
            bits |= 1 << v
        total += induced_count(edges, bits)
        count += 1
    return Fraction(total, count)


# ------------------------------------------------------ bounded-degree X_r


def naive_xr(edges: list[tuple[int, ...]], r: float) -> int:
    """Max size of an edge subset whose every vertex degree stays <= r."""
    best = 0
    m = len(edges)
    for mask in range(1 << m):
        deg: dict[int, int] = {}
        size = 0
        feasible = True
        for i in range(m):
            if not (mask >> i) & 1:
                continue
            size += 1
            for v in edges[i]:
                deg[v] = deg.get(v, 0) + 1
                if deg[v] > r:
                    feasible = False
                    break
            if not feasible:
                break
        if feasible and size > best:
            best = size
    return best


def naive_mr(edges: list[tuple[int, ...]], r: float) -> int:
    """Max number of vertex-disjoint stars of ceil(r) edges, by exhaustion."""
    c = math.ceil(r)
    by_center: dict[int, list[int]] = {}
    for i, e in enumerate(edges):
        for v in e:
            by_center.setdefault(v, []).append(i)
    stars = []
    for v, ids in sorted(by_center.items()):
        for combo in combinations(ids, c):
            verts = set()
            for i in combo:
                verts.update(edges[i])
            stars.append(verts)
    best = 0

    def extend(idx: int, used: set, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if idx == len(stars) or count + (len(stars) - idx) <= best:
            return
        if not (stars[idx] & used):
            extend(idx + 1, used | stars[idx], count + 1)
        extend(idx + 1, used, count)

    extend(0, set(), 0)
    return best


# ------------------------------------------------------ disjoint occurrence


def cylinder_forces(omega: int, coord_mask: int, outcomes: set[int], m: int) -> bool:
    """True when every outcome agreeing with omega on coord_mask is in outcomes."""
    free = [i for i in range(m) if not (coord_mask >> i) & 1]
    for assign in range(1 << len(free)):
        w = omega
        for pos, i in enumerate(free):
            if (assign >> pos) & 1:
                w |= 1 << i
            else:
                w &= ~(1 << i)
        if w not in outcomes:
            return False
    return True


def naive_box(a: set[int], b: set[int], m: int) -> set[int]:
    """Disjoint occurrence of two outcome sets, straight from the definition.

    Certificate tables are precomputed per (outcome, coordinate set) so the
    disjoint-pair scan stays quadratic in 2^m rather than cubic.
    """
    forces_a = {
        (w, k): cylinder_forces(w, k, a, m)
        for w in range(1 << m)
        for k in range(1 << m)
    }
    forces_b = {
        (w, k): cylinder_forces(w, k, b, m)
        for w in range(1 << m)
        for k in range(1 << m)
    }
    out = set()
    for omega in range(1 << m):
        if any(
            forces_a[(omega, i)] and forces_b[(omega, j)]
            for i in range(1 << m)
            for j in range(1 << m)
            if i & j == 0
        ):
            out.add(omega)
    return out


def naive_z_disjoint(events: list[set[int]], omega: int, m: int) -> int:
    """Max events certifiable at omega on pairwise-disjoint coordinate sets.

    Any working certificate contains a minimal one, so searching over minimal
    certificates only is still exact.
    """
    minimal = []
    for ev in events:
        ok = [cylinder_forces(omega, k, ev, m) for k in range(1 << m)]
        minimal.append(
            [
                k
                for k in range(1 << m)
                if ok[k]
                and not any(ok[k & ~(1 << i)] for i in range(m) if (k >> i) & 1)
            ]
        )
    best = 0

    def extend(idx: int, used: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if idx == len(minimal) or count + (len(minimal) - idx) <= best:
            return
        for k in minimal[idx]:
            if k & used == 0:
                extend(idx + 1, used | k, count + 1)
        extend(idx + 1, used, count)

    extend(0, 0, 0)
    return best


def naive_event_probability(outcomes: set[int], probs: list[float]) -> float:
    m = len(probs)
    total = 0.0
    for omega in outcomes:
        w = 1.0
        for i in range(m):
            w *= probs[i] if (omega >> i) & 1 else 1.0 - probs[i]
        total += w
    return total


# ---------------------------------------------------------------- scalars


def naive_phi(x: float) -> float:
    return (1.0 + x) * math.log(1.0 + x) - x
