"""Online greedy embedding of a revealed string into a fixed target string.

The cursor answers, one symbol at a time, "which slot of the target does my
next symbol occupy?": each call returns the least 1-based index past the
previously returned one that holds the requested symbol.  Per-symbol position
lists with monotone cursors keep the total work linear in the target length
plus the number of requests.
"""

from __future__ import annotations

from typing import Hashable, Sequence

__all__ = ["Exhausted", "EmbeddingState", "embed_offline"]


class Exhausted(Exception):
    """No slot for the requested symbol remains past the cursor.

    Recoverable by design: in the session layer this becomes a
    budget-violation report rather than a crash.
    """

    def __init__(self, symbol: Hashable, last_index: int) -> None:
        super().__init__(f"no slot for symbol {symbol!r} after index {last_index}")
        self.symbol = symbol
        self.last_index = last_index


class EmbeddingState:
    """Greedy cursor into a fixed symbol sequence.

    Emitted indices are 1-based and strictly increasing across calls.  The
    state is sequential: one call at a time, though it may move between
    threads between calls.
    """

    def __init__(self, target: Sequence[int]) -> None:
        positions: dict[Hashable, list[int]] = {}
        for index, symbol in enumerate(target, start=1):
            positions.setdefault(symbol, []).append(index)
        self._positions = positions
        self._cursors = {symbol: 0 for symbol in positions}
        self._last_index = 0
        self._target_length = len(target)

    @property
    def last_index(self) -> int:
        return self._last_index

    @property
    def target_length(self) -> int:
        return self._target_length

    def next_index(self, symbol: Hashable) -> int:
        """Least index ``k > last_index`` with ``target[k] == symbol``.

        Advances the cursor to ``k``.  Raises :class:`Exhausted` when no such
        slot remains, which signals that the revealed string is not
        embeddable from this point on.
        """
        positions = self._positions.get(symbol)
        if positions is None:
            raise Exhausted(symbol, self._last_index)
        cursor = self._cursors[symbol]
        while cursor < len(positions) and positions[cursor] <= self._last_index:
            cursor += 1
        if cursor == len(positions):
            self._cursors[symbol] = cursor
            raise Exhausted(symbol, self._last_index)
        self._cursors[symbol] = cursor + 1
        self._last_index = positions[cursor]
        return self._last_index


def embed_offline(
    target: Sequence[int], revealed: Sequence[int]
) -> tuple[int, ...] | None:
    """Greedy embedding indices of ``revealed`` into ``target``.

    Returns the strictly increasing 1-based index sequence chosen by the
    greedy rule, or None when ``revealed`` is not a subsequence of
    ``target``.  Equals the sequence produced by repeated
    :meth:`EmbeddingState.next_index` calls.
    """
    state = EmbeddingState(target)
    indices: list[int] = []
    for symbol in revealed:
        try:
            indices.append(state.next_index(symbol))
        except Exhausted:
            return None
    return tuple(indices)
