"""Universal query schedules from per-oracle budget vectors.

Given a budget vector ``q = (q_1, ..., q_n)`` over the 1-based alphabet of
oracle ids, this module builds a fixed string that contains exactly
``n * q_sigma`` copies of every symbol ``sigma`` and into which every string
with per-symbol counts at most ``q`` embeds as a subsequence.  The copies of
each symbol are spread evenly: symbol ``sigma`` is placed at the times
``k / q_sigma`` for ``k = 1 .. n * q_sigma`` (all inside ``(0, n]``) and the
placed symbols are read off in time order.

Time arithmetic is exact.  Times are rationals compared by integer
cross-multiplication, never floats, so coinciding times (for example
``3/q_1 == 2/q_2``) are detected exactly and broken deterministically by
ascending symbol id.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from functools import total_ordering
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "MAX_CHECKED",
    "ScheduleOverflowError",
    "Characteristic",
    "TimePoint",
    "LineSequence",
    "Schedule",
    "build_line_sequence",
    "project",
    "build_universal_schedule",
    "characteristic_of",
    "schedule_to_dict",
    "schedule_from_dict",
    "schedule_to_json",
    "schedule_from_json",
]

# Budgets and schedule lengths are kept within the signed 64-bit range.
# Python integers cannot wrap, but a budget past this bound is a nonsensical
# request and gets a loud error instead of an absurd allocation.
MAX_CHECKED = 2**63 - 1


class ScheduleOverflowError(OverflowError):
    """A budget vector exceeds the checked 64-bit range."""


def _checked(value: int, what: str) -> int:
    if value > MAX_CHECKED:
        raise ScheduleOverflowError(f"{what} ({value}) exceeds the checked integer range")
    return value


@dataclass(frozen=True)
class Characteristic:
    """Per-symbol budget vector ``(q_1, ..., q_n)``; symbol ids are 1-based."""

    counts: tuple[int, ...]

    def __init__(self, counts: Iterable[int]) -> None:
        counts = tuple(counts)
        if not counts:
            raise ValueError("budget vector must cover at least one symbol")
        for c in counts:
            if not isinstance(c, int):
                raise TypeError(f"budgets must be integers, got {c!r}")
            if c < 0:
                raise ValueError(f"budgets must be non-negative, got {c}")
        object.__setattr__(self, "counts", counts)
        _checked(sum(counts), "total budget")

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def scaled(self, factor: int) -> tuple[int, ...]:
        return tuple(factor * c for c in self.counts)


@total_ordering
@dataclass(frozen=True)
class TimePoint:
    """Exact positive rational time ``numerator / denominator``."""

    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        if self.numerator < 1 or self.denominator < 1:
            raise ValueError("time points must be positive rationals")
        g = gcd(self.numerator, self.denominator)
        if g > 1:
            object.__setattr__(self, "numerator", self.numerator // g)
            object.__setattr__(self, "denominator", self.denominator // g)

    def __lt__(self, other: "TimePoint") -> bool:
        # a/b < c/d  <=>  a*d < c*b, exact for any magnitude (b, d > 0)
        return self.numerator * other.denominator < other.numerator * self.denominator

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class LineSequence:
    """Finite set of ``(time, symbol)`` placements; duplicate pairs collapse."""

    entries: frozenset[tuple[TimePoint, int]]

    def __init__(self, entries: Iterable[tuple[TimePoint, int]] = ()) -> None:
        object.__setattr__(self, "entries", frozenset(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __or__(self, other: "LineSequence") -> "LineSequence":
        return LineSequence(self.entries | other.entries)


@dataclass(frozen=True)
class Schedule:
    """Fixed query order holding exactly ``n * q_sigma`` slots per symbol."""

    symbols: tuple[int, ...]
    source: Characteristic

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))
        expected = self.source.scaled(self.source.n)
        actual = characteristic_of(self.symbols, self.source.n).counts
        if actual != expected:
            raise ValueError(
                f"schedule characteristic {actual} does not match n*q = {expected}"
            )

    def __len__(self) -> int:
        return len(self.symbols)


def build_line_sequence(q: Characteristic) -> LineSequence:
    """Place ``n * q_sigma`` copies of each symbol at the times ``k / q_sigma``.

    Symbols with a zero budget contribute no entries.  All times fall in
    ``(0, n]`` since the largest one is ``n * q_sigma / q_sigma == n``.
    """
    n = q.n
    entries: set[tuple[TimePoint, int]] = set()
    for symbol, budget in enumerate(q.counts, start=1):
        if budget == 0:
            continue
        copies = _checked(n * budget, f"copy count for symbol {symbol}")
        entries.update((TimePoint(k, budget), symbol) for k in range(1, copies + 1))
    return LineSequence(entries)


def project(line_sequence: LineSequence) -> tuple[int, ...]:
    """Read a line sequence off in time order; equal times by ascending symbol."""
    ordered = sorted(line_sequence.entries, key=lambda entry: (entry[0], entry[1]))
    return tuple(symbol for _, symbol in ordered)


def build_universal_schedule(q: Characteristic) -> Schedule:
    """Build the universal schedule for budget vector ``q``.

    Result equals ``project(build_line_sequence(q))`` but is computed as an
    n-way merge over the per-symbol time progressions ``k / q_sigma`` using a
    priority queue, without materializing and sorting the full point set:
    O(n Q log n) time for ``Q = sum(q)``.
    """
    n = q.n
    _checked(n * q.total, "schedule length")
    heap: list[tuple[TimePoint, int, int]] = []
    for symbol, budget in enumerate(q.counts, start=1):
        if budget:
            _checked(n * budget, f"copy count for symbol {symbol}")
            heap.append((TimePoint(1, budget), symbol, 1))
    heapq.heapify(heap)
    out: list[int] = []
    while heap:
        _, symbol, k = heapq.heappop(heap)
        out.append(symbol)
        budget = q.counts[symbol - 1]
        if k < n * budget:
            heapq.heappush(heap, (TimePoint(k + 1, budget), symbol, k + 1))
    return Schedule(tuple(out), q)


def characteristic_of(symbols: Sequence[int], n: int) -> Characteristic:
    """Count the occurrences of each symbol ``1..n`` in ``symbols``."""
    counts = [0] * n
    for symbol in symbols:
        if not isinstance(symbol, int) or not 1 <= symbol <= n:
            raise ValueError(f"symbol {symbol!r} outside alphabet 1..{n}")
        counts[symbol - 1] += 1
    return Characteristic(counts)


def schedule_to_dict(schedule: Schedule) -> dict:
    """Plain document form: ``{"n": int, "q": [int], "schedule": [int]}``."""
    return {
        "n": schedule.source.n,
        "q": list(schedule.source.counts),
        "schedule": list(schedule.symbols),
    }


def schedule_from_dict(doc: dict) -> Schedule:
    """Rebuild a schedule from its document form, re-validating the characteristic."""
    if not isinstance(doc, dict):
        raise ValueError("schedule document must be a JSON object")
    for key in ("n", "q", "schedule"):
        if key not in doc:
            raise ValueError(f"schedule document missing key {key!r}")
    n, q, symbols = doc["n"], doc["q"], doc["schedule"]
    if not isinstance(n, int) or not isinstance(q, list) or not isinstance(symbols, list):
        raise ValueError("schedule document fields have wrong types")
    if n != len(q):
        raise ValueError(f"declared n = {n} does not match len(q) = {len(q)}")
    return Schedule(tuple(symbols), Characteristic(q))


def schedule_to_json(schedule: Schedule) -> str:
    return json.dumps(schedule_to_dict(schedule))


def schedule_from_json(text: str) -> Schedule:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"schedule document is not valid JSON: {exc}") from exc
    return schedule_from_dict(doc)
