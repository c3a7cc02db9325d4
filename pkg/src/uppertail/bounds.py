"""Closed-form moments, tail exponents, and point-probability bounds.

Everything is evaluated in natural-log space where a bound can underflow;
log-values of -inf denote a bound of zero.  Existential constants from the
underlying inequalities appear as caller parameters defaulting to 1.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .hypergraph import Hypergraph

__all__ = [
    "BoundReport",
    "MomentReport",
    "binomial_point_lower",
    "binomial_point_lower_refined",
    "et_bound",
    "exact_mean",
    "exact_variance",
    "exponent_ap",
    "exponent_appp",
    "exponent_apt",
    "exponent_hg",
    "hypergeom_conditional_mean",
    "lb_cluster_bound",
    "moment_report",
    "paley_zygmund_lower",
    "phi",
    "theorem_c_bound",
]

_REL_SLACK = 1e-9


def phi(x: float) -> float:
    """Rate function (1 + x) * log(1 + x) - x on [-1, inf).

    Uses the series x^2/2 - x^3/6 + x^4/12 for small |x| to avoid the
    cancellation in the direct form; log1p otherwise.
    """
    if x < -1.0:
        raise ValueError("phi is defined on [-1, inf)")
    if x == -1.0:
        return 1.0
    if abs(x) < 1e-4:
        return x * x * (0.5 - x / 6.0 + x * x / 12.0)
    return (1.0 + x) * math.log1p(x) - x


@dataclass(frozen=True)
class MomentReport:
    """First two moments plus the degree-weighted scale mu * (1 + n p^(k-1))."""

    mu: float
    var: float
    lam: float

    def __post_init__(self):
        if self.mu < 0 or self.var < 0 or self.lam < 0:
            raise ValueError("moments must be nonnegative")


@dataclass(frozen=True)
class BoundReport:
    """A named bound: tag, natural-log value, and the inputs that produced it."""

    tag: str
    log_value: float
    inputs: dict = field(default_factory=dict)


def exact_mean(h: Hypergraph, p: float) -> float:
    """E[X] = e(H) * p^k for the induced edge count under vertex density p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    return len(h.edges) * p**h.k


@lru_cache(maxsize=64)
def _pair_union_counts(h: Hypergraph) -> tuple[tuple[int, int], ...]:
    """(union size, ordered pair count) over intersecting ordered edge pairs."""
    counts: Counter = Counter()
    counts[h.k] += len(h.edges)
    for i, edge in enumerate(h.edges):
        partners = set()
        for v in edge:
            for j in h.incidence[v]:
                if j > i:
                    partners.add(j)
        for j in partners:
            union = len(set(edge) | set(h.edges[j]))
            counts[union] += 2
    return tuple(sorted(counts.items()))


def exact_variance(h: Hypergraph, p: float) -> float:
    """Var[X] = sum over ordered intersecting edge pairs of p^|e u f| - p^2k."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if not h.edges:
        return 0.0
    p2k = p ** (2 * h.k)
    return math.fsum(cnt * (p**u - p2k) for u, cnt in _pair_union_counts(h))


def moment_report(h: Hypergraph, p: float, n_declared: int | None = None) -> MomentReport:
    """Moments of the induced edge count; n_declared defaults to v(H)."""
    n = h.n if n_declared is None else n_declared
    mu = exact_mean(h, p)
    lam = mu * (1.0 + n * p ** (h.k - 1)) if h.k >= 1 else mu
    return MomentReport(mu=mu, var=exact_variance(h, p), lam=lam)


def _chain_check(primary: float, weaker: float, tags: str) -> None:
    if math.isinf(primary) and primary < 0:
        return
    if math.isinf(weaker) and weaker < 0:
        raise AssertionError(f"bound chain violated ({tags}): {primary} > {weaker}")
    slack = _REL_SLACK * max(abs(primary), abs(weaker), 1.0)
    if primary > weaker + slack:
        raise AssertionError(f"bound chain violated ({tags}): {primary} > {weaker}")


def theorem_c_bound(mu: float, capacity: float, t: float, form: str = "phi") -> BoundReport:
    """log Pr(X >= mu + t) bound -phi(t/mu) * mu / C and its two weaker forms.

    form selects 'phi', 'quadratic' (-t^2 / (2C(mu + t/3))), or 'ratio_log'
    (-(t/(2C)) * log(1 + t/(2mu))).  The chain phi <= quadratic and
    phi <= ratio_log is asserted numerically on every call.
    """
    if mu < 0 or t <= 0 or capacity <= 0:
        raise ValueError("need mu >= 0, t > 0, capacity > 0")
    if mu == 0.0:
        main = -math.inf
        ratio = -math.inf
    else:
        main = -phi(t / mu) * mu / capacity
        ratio = -(t / (2.0 * capacity)) * math.log1p(t / (2.0 * mu))
    quad = -t * t / (2.0 * capacity * (mu + t / 3.0))
    _chain_check(main, quad, "phi vs quadratic")
    _chain_check(main, ratio, "phi vs ratio_log")
    values = {"phi": main, "quadratic": quad, "ratio_log": ratio}
    if form not in values:
        raise ValueError(f"form must be one of {sorted(values)}")
    tag = "theorem_c" if form == "phi" else f"theorem_c_{form}"
    return BoundReport(tag, values[form], {"mu": mu, "capacity": capacity, "t": t})


def et_bound(mu: float, capacity: float, x: float, stirling: bool = False) -> BoundReport:
    """log Pr(X >= x * C) bound x*log(mu/C) - log(x!) or its Stirling form."""
    if mu < 0 or capacity <= 0 or x <= 0:
        raise ValueError("need mu >= 0, capacity > 0, x > 0")
    if mu == 0.0:
        main = -math.inf
        stirling_val = -math.inf
    else:
        main = x * math.log(mu / capacity) - math.lgamma(x + 1.0)
        stirling_val = x * math.log(math.e * mu / (x * capacity)) - 0.5 * math.log(2.0 * math.pi * x)
        _chain_check(main, stirling_val, "factorial vs stirling")
    if stirling:
        return BoundReport("et_stirling", stirling_val, {"mu": mu, "capacity": capacity, "x": x})
    return BoundReport("et", main, {"mu": mu, "capacity": capacity, "x": x})


def exponent_appp(mu: float, p: float) -> float:
    """Tail exponent min(mu, sqrt(mu) * log(1/p)) at the doubled mean."""
    if mu < 0 or not 0.0 < p <= 1.0:
        raise ValueError("need mu >= 0 and p in (0, 1]")
    return min(mu, math.sqrt(mu) * math.log(1.0 / p))


def exponent_ap(mu: float, var: float, p: float, eps: float) -> float:
    """Tail exponent min(phi(eps) mu^2 / var, sqrt(eps mu) log(1/p))."""
    if mu < 0 or var < 0 or eps <= 0 or not 0.0 < p <= 1.0:
        raise ValueError("need mu, var >= 0, eps > 0, p in (0, 1]")
    first = math.inf if var == 0.0 else phi(eps) * mu * mu / var
    return min(first, math.sqrt(eps * mu) * math.log(1.0 / p))


def exponent_apt(var: float, p: float, t: float) -> float:
    """Tail exponent min(t^2 / var, sqrt(t) * log(1/p))."""
    if var < 0 or t <= 0 or not 0.0 < p <= 1.0:
        raise ValueError("need var >= 0, t > 0, p in (0, 1]")
    first = math.inf if var == 0.0 else t * t / var
    return min(first, math.sqrt(t) * math.log(1.0 / p))


def exponent_hg(mu: float, lam: float, p: float, t: float, use_remark: bool = False) -> float:
    """Tail exponent min(phi(t/mu) mu^2 / lam, sqrt(t) * log(e/p)).

    use_remark swaps the first term for t^2 / lam.
    """
    if mu < 0 or lam < 0 or t <= 0 or not 0.0 < p <= 1.0:
        raise ValueError("need mu, lam >= 0, t > 0, p in (0, 1]")
    if lam == 0.0:
        first = math.inf
    elif use_remark:
        first = t * t / lam
    elif mu == 0.0:
        first = math.inf
    else:
        first = phi(t / mu) * mu * mu / lam
    return min(first, math.sqrt(t) * math.log(math.e / p))


def lb_cluster_bound(d: float, mu: float, t: float, p: float) -> BoundReport:
    """Lower bound log Pr(X >= mu + t) >= -d * sqrt(mu + t) * log(1/p).

    Valid given a clustered witness certifying x = mu + t edges within
    d * sqrt(mu + t) vertices, for mu + t >= 1.
    """
    if d < 0 or mu < 0 or t <= 0 or not 0.0 < p <= 1.0:
        raise ValueError("need d, mu >= 0, t > 0, p in (0, 1]")
    if mu + t < 1.0:
        raise ValueError("requires mu + t >= 1")
    log_value = -d * math.sqrt(mu + t) * math.log(1.0 / p)
    return BoundReport("lb_cluster", log_value, {"d": d, "mu": mu, "t": t, "p": p})


def binomial_point_lower(n: int, q: float, m: int, b: float = 1.0) -> BoundReport:
    """log of e^-b * C(n, m) * q^m * (1-q)^(n-m), via lgamma."""
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0, 1)")
    log_comb = math.lgamma(n + 1) - math.lgamma(m + 1) - math.lgamma(n - m + 1)
    log_value = -b + log_comb + m * math.log(q) + (n - m) * math.log1p(-q)
    return BoundReport("binomial_point", log_value, {"n": n, "q": q, "m": m, "b": b})


def binomial_point_lower_refined(n: int, q: float, m: int) -> BoundReport:
    """Stirling-refined point lower bound for the binomial pmf at m >= nq.

    log value: -1/6 - phi(j/mu) mu - j^2 / ((1-q) n) - log(sqrt(2 pi m)),
    with mu = nq and j = m - mu.
    """
    if not 0 < m < n:
        raise ValueError("need 0 < m < n")
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0, 1)")
    mu = n * q
    j = m - mu
    if j < 0:
        raise ValueError("refined form requires m >= n * q")
    log_value = (
        -1.0 / 6.0
        - phi(j / mu) * mu
        - j * j / ((1.0 - q) * n)
        - 0.5 * math.log(2.0 * math.pi * m)
    )
    return BoundReport("binomial_point_stirling", log_value, {"n": n, "q": q, "m": m})


def paley_zygmund_lower(var: float, t: float) -> float:
    """Pr(Y >= E[Y] - t) >= t^2 / (var + t^2)."""
    if var < 0 or t <= 0:
        raise ValueError("need var >= 0 and t > 0")
    return t * t / (var + t * t)


def hypergeom_conditional_mean(h: Hypergraph, m: int) -> float:
    """E[X | exactly m vertices kept] = e(H) * prod_{i<k} (m - i) / (n - i)."""
    if not 0 <= m <= h.n:
        raise ValueError(f"m must lie in [0, {h.n}]")
    if m < h.k or not h.edges:
        return 0.0
    value = float(len(h.edges))
    for i in range(h.k):
        value *= (m - i) / (h.n - i)
    return value
