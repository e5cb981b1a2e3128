"""Brute-force checks for schedule universality.

Deliberately independent of the fast paths: enumeration is plain
backtracking and the subsequence decision is a two-pointer scan, with no
code shared with the schedule builder or the greedy embedder, so these can
serve as oracles for both.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .schedule import Characteristic, build_universal_schedule

__all__ = [
    "GuardLimits",
    "GuardViolation",
    "enumerate_bounded",
    "is_subsequence_dp",
    "find_counterexample",
    "check_universal",
]


@dataclass(frozen=True)
class GuardLimits:
    """Bounds that keep exhaustive enumeration feasible."""

    max_symbols: int = 4
    max_total: int = 8


class GuardViolation(ValueError):
    """Requested enumeration exceeds the configured guard bounds."""


def _check_guard(q: Characteristic, guard: GuardLimits) -> None:
    if q.n > guard.max_symbols:
        raise GuardViolation(f"alphabet size {q.n} exceeds guard {guard.max_symbols}")
    if q.total > guard.max_total:
        raise GuardViolation(f"total budget {q.total} exceeds guard {guard.max_total}")


def enumerate_bounded(
    q: Characteristic, guard: GuardLimits = GuardLimits()
) -> Iterator[tuple[int, ...]]:
    """Every string with per-symbol counts at most ``q``, exactly once.

    Ordered by length, lexicographically within each length, so reported
    counterexamples are reproducible.
    """
    _check_guard(q, guard)
    n = q.n
    remaining = list(q.counts)
    buf: list[int] = []

    def emit(length: int) -> Iterator[tuple[int, ...]]:
        if len(buf) == length:
            yield tuple(buf)
            return
        for symbol in range(1, n + 1):
            if remaining[symbol - 1]:
                remaining[symbol - 1] -= 1
                buf.append(symbol)
                yield from emit(length)
                buf.pop()
                remaining[symbol - 1] += 1

    for length in range(q.total + 1):
        yield from emit(length)


def is_subsequence_dp(needle: Sequence[int], haystack: Sequence[int]) -> bool:
    """Two-pointer subsequence decision, independent of the greedy embedder."""
    i = 0
    for symbol in haystack:
        if i < len(needle) and needle[i] == symbol:
            i += 1
    return i == len(needle)


def find_counterexample(
    candidate: Sequence[int],
    q: Characteristic,
    guard: GuardLimits = GuardLimits(),
) -> tuple[int, ...] | None:
    """First bounded string (in enumeration order) not embeddable in ``candidate``.

    Returns None when every string with counts at most ``q`` is a
    subsequence of ``candidate``.
    """
    for revealed in enumerate_bounded(q, guard):
        if not is_subsequence_dp(revealed, candidate):
            return revealed
    return None


def check_universal(
    q: Characteristic, guard: GuardLimits = GuardLimits()
) -> tuple[int, ...] | None:
    """Exhaustively validate the built schedule for ``q``; None means no failures."""
    schedule = build_universal_schedule(q)
    return find_counterexample(schedule.symbols, q, guard)
