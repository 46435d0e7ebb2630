"""Minimum piercing of interval and circular-arc systems.

Positions are ``0..m-1``. An arc ``(start, length)`` covers the positions
``start, start+1, ..., start+length-1`` (taken mod ``m`` for circular
systems). A piercing set picks positions so that every arc covers at least
one of them. On caterpillar backbones the positions are backbone edges and
the arcs are colour-critical bad paths, so a minimum piercing set is a
minimum set of backbone edges to delete.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import EmptyArc


@dataclass(frozen=True, eq=False)
class ArcSystem:
    m: int
    starts: np.ndarray
    lengths: np.ndarray
    circular: bool = False

    @classmethod
    def from_arcs(cls, m: int, arcs: Iterable[tuple[int, int]], circular: bool = False) -> "ArcSystem":
        arcs = list(arcs)
        starts = np.array([a[0] for a in arcs], dtype=np.int64)
        lengths = np.array([a[1] for a in arcs], dtype=np.int64)
        return cls(m, starts, lengths, circular)

    def __post_init__(self):
        starts = np.asarray(self.starts, dtype=np.int64).reshape(-1)
        lengths = np.asarray(self.lengths, dtype=np.int64).reshape(-1)
        if starts.shape != lengths.shape:
            raise ValueError("starts and lengths differ in size")
        if lengths.size:
            if lengths.min() < 1:
                raise EmptyArc("every arc must cover at least one position")
            if lengths.max() > self.m:
                raise ValueError("arc longer than the number of positions")
            if self.circular:
                starts = starts % self.m
            elif starts.min() < 0 or (starts + lengths).max() > self.m:
                raise ValueError("linear arc runs past the end of the line")
        object.__setattr__(self, "starts", starts)
        object.__setattr__(self, "lengths", lengths)

    def __len__(self) -> int:
        return int(self.starts.size)

    def arcs(self) -> list[tuple[int, int]]:
        return list(zip(self.starts.tolist(), self.lengths.tolist()))

    def covers(self, point: int) -> np.ndarray:
        """Mask of arcs covering ``point``."""
        if self.circular:
            return (point - self.starts) % self.m < self.lengths
        return (self.starts <= point) & (point < self.starts + self.lengths)


@dataclass(frozen=True)
class PiercingSet:
    points: frozenset[int] = field(default_factory=frozenset)

    def __len__(self) -> int:
        return len(self.points)

    def pierces(self, system: ArcSystem) -> bool:
        hit = np.zeros(len(system), dtype=bool)
        for q in self.points:
            hit |= system.covers(q)
        return bool(hit.all())


def _greedy(starts: list[int], ends: list[int]) -> list[int]:
    # Arcs must already be ordered by end; a point at the smallest
    # unpierced end hits every arc that starts at or before it.
    chosen = []
    last = -1
    for s, e in zip(starts, ends):
        if s > last:
            last = e
            chosen.append(e)
    return chosen


def _linear_points(starts: np.ndarray, lengths: np.ndarray) -> list[int]:
    ends = starts + lengths - 1
    order = np.argsort(ends * (int(ends.max()) + 1) + starts)
    return _greedy(starts[order].tolist(), ends[order].tolist())


def pierce_linear(system: ArcSystem) -> PiercingSet:
    """Minimum piercing set of a linear system via earliest-end greedy."""
    if system.circular:
        raise ValueError("pierce_linear needs a linear arc system")
    if len(system) == 0:
        return PiercingSet()
    return PiercingSet(frozenset(_linear_points(system.starts, system.lengths)))


def _circular_points(m: int, starts: np.ndarray, lengths: np.ndarray) -> list[int]:
    # A shortest arc contains no other arc, and any piercing set hits it.
    # For each of its positions e, cut the circle just after e; the arcs
    # missing e become intervals on the line of the other m-1 positions.
    z = int(np.argmin(lengths * m + starts))
    ends_abs = (starts + lengths - 1) % m
    order = np.argsort(ends_abs * m + starts)
    s_sorted, l_sorted, e_sorted = starts[order], lengths[order], ends_abs[order]

    best: list[int] | None = None
    best_e = -1
    candidates = sorted((int(starts[z]) + k) % m for k in range(int(lengths[z])))
    for e in candidates:
        # rotate so that linear ends come out in increasing order
        cut = int(np.searchsorted(e_sorted, e + 1))
        idx = np.r_[cut:s_sorted.size, 0:cut]
        s, ln = s_sorted[idx], l_sorted[idx]
        keep = (e - s) % m >= ln
        s, ln = s[keep], ln[keep]
        lin_start = (s - e - 1) % m
        lin_end = lin_start + ln - 1
        rest = _greedy(lin_start.tolist(), lin_end.tolist())
        if best is None or len(rest) + 1 < len(best):
            best = [e] + [(y + e + 1) % m for y in rest]
            best_e = e
    assert best is not None and best_e >= 0
    return best


def pierce_circular(system: ArcSystem) -> PiercingSet:
    """Minimum piercing set of a circular system.

    Runs one linear greedy per position of a shortest arc, so the cost is
    ``O(len(z) * (A + m))`` after an ``O(A log A)`` sort.
    """
    if not system.circular:
        raise ValueError("pierce_circular needs a circular arc system")
    if len(system) == 0:
        return PiercingSet()
    return PiercingSet(frozenset(_circular_points(system.m, system.starts, system.lengths)))


def pierce(system: ArcSystem) -> PiercingSet:
    return pierce_circular(system) if system.circular else pierce_linear(system)
