"""Extensional events on {0,1}^m, disjoint-certificate composition, BK checks.

Outcomes are integers whose bit i is coordinate i; an event is a 2^m-bit
membership table.  A certificate for omega in E is a coordinate set K such
that every outcome agreeing with omega on K lies in E; the disjoint
occurrence of two events asks for certificates on disjoint coordinate sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .decompose import mr_exact
from .hypergraph import CapacityError, Hypergraph, VertexSet

__all__ = [
    "BKResult",
    "EventTable",
    "MrZResult",
    "bk_check",
    "box",
    "degree_event",
    "event_probability",
    "mr_le_z_check",
    "z_disjoint",
]

EVENT_COORD_BUDGET = 20
BOX_COORD_BUDGET = 14
Z_EVENT_BUDGET = 8


class EventTable:
    """Event over m binary coordinates as an extensional 2^m membership table.

    Bit omega of `table` is set iff outcome omega belongs to the event.
    """

    __slots__ = ("m", "table")

    def __init__(self, m: int, table: int):
        if m < 0:
            raise ValueError("m must be nonnegative")
        if m > EVENT_COORD_BUDGET:
            raise CapacityError(f"{m} coordinates exceed budget {EVENT_COORD_BUDGET}")
        size = 1 << m
        if not 0 <= table < (1 << size):
            raise ValueError("membership table wider than 2^m outcomes")
        self.m = m
        self.table = table

    @classmethod
    def from_indicator(cls, m: int, indicator: Callable[[int], bool]) -> "EventTable":
        table = 0
        for omega in range(1 << m):
            if indicator(omega):
                table |= 1 << omega
        return cls(m, table)

    @classmethod
    def empty(cls, m: int) -> "EventTable":
        return cls(m, 0)

    @classmethod
    def full(cls, m: int) -> "EventTable":
        return cls(m, (1 << (1 << m)) - 1)

    def contains(self, omega: int) -> bool:
        if not 0 <= omega < (1 << self.m):
            raise ValueError("outcome outside {0,1}^m")
        return (self.table >> omega) & 1 == 1

    def count(self) -> int:
        return self.table.bit_count()

    def to_bool_array(self) -> np.ndarray:
        size = 1 << self.m
        nbytes = (size + 7) // 8
        raw = np.frombuffer(self.table.to_bytes(max(nbytes, 1), "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[:size].astype(bool)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EventTable)
            and self.m == other.m
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash((self.m, self.table))

    def __repr__(self) -> str:
        return f"EventTable(m={self.m}, outcomes={self.count()})"


@lru_cache(maxsize=None)
def _coord_zero_mask(i: int, m: int) -> int:
    """Mask over outcome codes whose coordinate i is 0."""
    block = (1 << (1 << i)) - 1
    period = 1 << (i + 1)
    out = 0
    for start in range(0, 1 << m, period):
        out |= block << start
    return out


def _forall_coord(table: int, i: int, m: int) -> int:
    """From the table for K | {i}, the table for K: require both settings of i."""
    mask0 = _coord_zero_mask(i, m)
    shift = 1 << i
    both = table & (table >> shift) & mask0
    return both | (both << shift)


def _universal_tables(event: EventTable) -> list[int]:
    """tables[K] has bit omega set iff every outcome agreeing with omega on K
    lies in the event."""
    m = event.m
    full = (1 << m) - 1
    tables = [0] * (1 << m)
    tables[full] = event.table
    for k in range(full - 1, -1, -1):
        low = (~k & full) & -(~k & full)
        parent = k | low
        tables[k] = _forall_coord(tables[parent], low.bit_length() - 1, m)
    return tables


def box(a: EventTable, b: EventTable) -> EventTable:
    """Disjoint occurrence: outcomes certifiable for a and b on disjoint K, L.

    Since certificates are monotone in K, it suffices to pair each K with the
    full complement, so the scan is one pass over the 2^m coordinate sets.
    """
    if a.m != b.m:
        raise ValueError("events live on different coordinate counts")
    m = a.m
    if m > BOX_COORD_BUDGET:
        raise CapacityError(f"{m} coordinates exceed box budget {BOX_COORD_BUDGET}")
    ta = _universal_tables(a)
    tb = _universal_tables(b)
    full = (1 << m) - 1
    out = 0
    for k in range(1 << m):
        out |= ta[k] & tb[full ^ k]
    return EventTable(m, out)


def _agreement_masks(m: int, omega: int) -> list[int]:
    agree = []
    for i in range(m):
        mask0 = _coord_zero_mask(i, m)
        agree.append(mask0 << (1 << i) if (omega >> i) & 1 else mask0)
    return agree


def z_disjoint(
    events: Sequence[EventTable], omega: int, max_events: int = Z_EVENT_BUDGET
) -> int:
    """Maximum number of events holding at omega with pairwise-disjoint
    certificates, via minimal certificates and exhaustive assignment."""
    if not events:
        return 0
    m = events[0].m
    if any(e.m != m for e in events):
        raise ValueError("events live on different coordinate counts")
    if m > BOX_COORD_BUDGET:
        raise CapacityError(f"{m} coordinates exceed budget {BOX_COORD_BUDGET}")
    if len(events) > max_events:
        raise CapacityError(f"{len(events)} events exceed budget {max_events}")
    if not 0 <= omega < (1 << m):
        raise ValueError("outcome outside {0,1}^m")

    outcomes_full = (1 << (1 << m)) - 1
    agree = _agreement_masks(m, omega)
    masks = [0] * (1 << m)
    masks[0] = outcomes_full
    for k in range(1, 1 << m):
        low = k & -k
        masks[k] = masks[k ^ low] & agree[low.bit_length() - 1]

    minimal_certs = []
    for event in events:
        outside = outcomes_full ^ event.table
        cert = [masks[k] & outside == 0 for k in range(1 << m)]
        mins = [
            k
            for k in range(1 << m)
            if cert[k]
            and all(not cert[k ^ (1 << i)] for i in range(m) if (k >> i) & 1)
        ]
        minimal_certs.append(mins)

    order = sorted(range(len(events)), key=lambda idx: len(minimal_certs[idx]))
    best = 0

    def dfs(pos: int, used: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if pos == len(order) or count + (len(order) - pos) <= best:
            return
        for kmask in minimal_certs[order[pos]]:
            if kmask & used == 0:
                dfs(pos + 1, used | kmask, count + 1)
        dfs(pos + 1, used, count)

    dfs(0, 0, 0)
    return best


def _outcome_weights(m: int, probs: Sequence[float]) -> np.ndarray:
    arr = np.asarray(probs, dtype=float)
    if arr.shape != (m,):
        raise ValueError(f"need exactly {m} coordinate probabilities")
    if np.any(arr < 0) or np.any(arr > 1):
        raise ValueError("probabilities must lie in [0, 1]")
    w = np.array([1.0])
    for i in range(m):
        w = np.concatenate([w * (1.0 - arr[i]), w * arr[i]])
    return w


def event_probability(event: EventTable, probs: Sequence[float]) -> float:
    """Exact probability of the event under the product measure."""
    return float(np.dot(event.to_bool_array(), _outcome_weights(event.m, probs)))


@dataclass(frozen=True)
class BKResult:
    p_box: float
    p_a: float
    p_b: float
    ok: bool


def bk_check(a: EventTable, b: EventTable, probs: Sequence[float]) -> BKResult:
    """Verify Pr(A box B) <= Pr(A) Pr(B) + 1e-12 under the product measure."""
    boxed = box(a, b)
    p_box = event_probability(boxed, probs)
    p_a = event_probability(a, probs)
    p_b = event_probability(b, probs)
    return BKResult(p_box, p_a, p_b, p_box <= p_a * p_b + 1e-12)


def degree_event(h: Hypergraph, v: int, c: int) -> EventTable:
    """Event (over vertex subsets as outcomes) that v has >= c induced edges."""
    if h.n > BOX_COORD_BUDGET:
        raise CapacityError(f"{h.n} vertices exceed budget {BOX_COORD_BUDGET}")
    codes = np.arange(1 << h.n, dtype=np.uint32)
    deg = np.zeros(codes.size, dtype=np.int32)
    for i in h.incidence[v]:
        mask = h.edge_masks[i]
        deg += ((codes & mask) == mask).astype(np.int32)
    members = np.packbits(deg >= c, bitorder="little").tobytes()
    return EventTable(h.n, int.from_bytes(members, "little"))


@dataclass(frozen=True)
class MrZResult:
    m_r: int
    z: int
    ok: bool


def mr_le_z_check(h: Hypergraph, s: VertexSet, r: float) -> MrZResult:
    """Check mr_exact(H, S, r) <= Z over the degree events at omega = S.

    Each star in a matching certifies its center's degree event on the star's
    vertex set, and those sets are disjoint, so M_r <= Z must hold.
    """
    if h.n > BOX_COORD_BUDGET:
        raise CapacityError(f"{h.n} vertices exceed budget {BOX_COORD_BUDGET}")
    c = math.ceil(r)
    events = [degree_event(h, v, c) for v in range(h.n) if len(h.incidence[v]) >= c]
    m_r = mr_exact(h, s, r)
    if not events:
        return MrZResult(m_r, 0, m_r <= 0)
    z = z_disjoint(events, s.bits, max_events=len(events))
    return MrZResult(m_r, z, m_r <= z)
