"""Greedy online embedding against brute-force and two-pointer oracles."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from statq.embedding import EmbeddingState, Exhausted, embed_offline
from statq.verify import is_subsequence_dp

REFERENCE = (1, 2, 1, 1, 2, 1, 2, 1, 1, 2)


class TestNextIndex:
    def test_hand_run(self):
        state = EmbeddingState(REFERENCE)
        assert [state.next_index(s) for s in (2, 2, 1)] == [2, 5, 6]

    def test_single_slot(self):
        state = EmbeddingState((1,))
        assert state.next_index(1) == 1

    def test_exhaustion_past_budget(self):
        state = EmbeddingState((1, 1))
        assert state.next_index(1) == 1
        assert state.next_index(1) == 2
        with pytest.raises(Exhausted) as err:
            state.next_index(1)
        assert err.value.symbol == 1
        assert err.value.last_index == 2

    def test_unknown_symbol_exhausts(self):
        state = EmbeddingState((1, 1))
        with pytest.raises(Exhausted):
            state.next_index(7)

    def test_indices_strictly_increase(self):
        state = EmbeddingState(REFERENCE)
        emitted = [state.next_index(s) for s in (1, 2, 1, 2)]
        assert emitted == sorted(set(emitted))


class TestEmbedOffline:
    def test_empty_embeds_everywhere(self):
        assert embed_offline((), ()) == ()
        assert embed_offline(REFERENCE, ()) == ()

    def test_hand_run(self):
        assert embed_offline(REFERENCE, (1, 1, 1, 2, 2)) == (1, 3, 4, 5, 7)

    def test_order_violation(self):
        assert embed_offline((1, 2), (2, 1)) is None

    def test_matches_online_calls(self):
        revealed = (2, 1, 1, 2, 1)
        state = EmbeddingState(REFERENCE)
        online = tuple(state.next_index(s) for s in revealed)
        assert embed_offline(REFERENCE, revealed) == online


def all_strings(alphabet, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


@pytest.mark.parametrize("alphabet,max_len", [((1, 2), 6), ((1, 2, 3), 4)])
def test_greedy_complete_on_small_universe(alphabet, max_len):
    # greedy never gets stuck on a true subsequence: compare the success set
    # against the independent two-pointer decision over the whole universe
    targets = list(all_strings(alphabet, max_len))
    for target in targets:
        for revealed in all_strings(alphabet, len(target)):
            indices = embed_offline(target, revealed)
            assert (indices is not None) == is_subsequence_dp(revealed, target)
            if indices is not None:
                assert list(indices) == sorted(set(indices))
                assert tuple(target[j - 1] for j in indices) == tuple(revealed)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_online_equals_offline_on_sampled_subsequences(data):
    target = tuple(
        data.draw(st.lists(st.integers(min_value=1, max_value=4), max_size=40))
    )
    keep = data.draw(st.lists(st.booleans(), min_size=len(target), max_size=len(target)))
    revealed = tuple(s for s, k in zip(target, keep) if k)
    state = EmbeddingState(target)
    online = tuple(state.next_index(s) for s in revealed)  # never exhausts
    assert embed_offline(target, revealed) == online


def test_universality_end_to_end_small_budgets():
    # every bounded string embeds into the built schedule, via the greedy
    # route this time (the DP route lives in test_verify)
    from statq.schedule import Characteristic, build_universal_schedule
    from statq.verify import enumerate_bounded

    for counts in [(1,), (2,), (1, 1), (2, 1), (2, 2), (1, 1, 1), (2, 0, 1)]:
        q = Characteristic(counts)
        schedule = build_universal_schedule(q).symbols
        for revealed in enumerate_bounded(q):
            assert embed_offline(schedule, revealed) is not None


def test_amortized_cursor_large_input():
    rng = random.Random(11)
    target = tuple(rng.randrange(1, 4) for _ in range(60_000))
    revealed = tuple(s for s in target if rng.random() < 0.4)
    state = EmbeddingState(target)
    last = 0
    for symbol in revealed:
        index = state.next_index(symbol)
        assert index > last and target[index - 1] == symbol
        last = index
