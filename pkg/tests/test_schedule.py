"""Schedule construction: exact times, projection order, characteristic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from statq.schedule import (
    Characteristic,
    LineSequence,
    Schedule,
    ScheduleOverflowError,
    TimePoint,
    build_line_sequence,
    build_universal_schedule,
    characteristic_of,
    project,
    schedule_from_json,
    schedule_to_json,
)


def oracle_schedule(counts):
    """Independent reference: materialize every point with stdlib Fraction and sort."""
    n = len(counts)
    points = []
    for symbol, budget in enumerate(counts, start=1):
        for k in range(1, n * budget + 1):
            points.append((Fraction(k, budget), symbol))
    points.sort()
    return tuple(symbol for _, symbol in points)


def entry_times(line_sequence, symbol):
    return {Fraction(t.numerator, t.denominator) for t, s in line_sequence.entries if s == symbol}


class TestCharacteristic:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Characteristic(())

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            Characteristic((1, -1))

    def test_rejects_non_integer(self):
        with pytest.raises(TypeError):
            Characteristic((1.5, 2))

    def test_rejects_total_beyond_checked_range(self):
        with pytest.raises(ScheduleOverflowError):
            Characteristic((2**62, 2**62))

    def test_accepts_zero_entries(self):
        q = Characteristic((0, 0, 0))
        assert q.n == 3 and q.total == 0


class TestTimePoint:
    def test_normalizes(self):
        assert TimePoint(2, 4) == TimePoint(1, 2)
        assert hash(TimePoint(2, 4)) == hash(TimePoint(1, 2))

    def test_exact_comparison(self):
        assert TimePoint(1, 3) < TimePoint(1, 2)
        assert TimePoint(3, 3) == TimePoint(2, 2)
        # magnitudes where floats would collide compare exactly
        assert TimePoint(10**18 + 1, 10**18) > TimePoint(1, 1)

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            TimePoint(0, 1)
        with pytest.raises(ValueError):
            TimePoint(1, 0)


class TestBuildLineSequence:
    def test_single_symbol_single_copy(self):
        ls = build_line_sequence(Characteristic((1,)))
        assert ls.entries == frozenset({(TimePoint(1, 1), 1)})

    def test_two_symbols(self):
        # hand execution of the per-symbol time formula for q=(3,2)
        ls = build_line_sequence(Characteristic((3, 2)))
        assert entry_times(ls, 1) == {Fraction(k, 3) for k in range(1, 7)}
        assert entry_times(ls, 2) == {Fraction(k, 2) for k in range(1, 5)}
        assert len(ls) == 10

    def test_zero_budget_symbol_contributes_nothing(self):
        ls = build_line_sequence(Characteristic((0, 1)))
        assert ls.entries == frozenset({(TimePoint(1, 1), 2), (TimePoint(2, 1), 2)})

    def test_all_times_within_interval(self):
        q = Characteristic((2, 3, 1))
        ls = build_line_sequence(q)
        for t, _ in ls.entries:
            assert 0 < Fraction(t.numerator, t.denominator) <= q.n

    def test_overflow(self):
        with pytest.raises(ScheduleOverflowError):
            build_line_sequence(Characteristic((2**62, 0)))


class TestProject:
    def test_empty(self):
        assert project(LineSequence()) == ()

    def test_time_order(self):
        ls = LineSequence({(TimePoint(1, 2), 2), (TimePoint(1, 3), 1)})
        assert project(ls) == (1, 2)

    def test_tie_break_by_symbol(self):
        ls = LineSequence({(TimePoint(1, 1), 2), (TimePoint(1, 1), 1)})
        assert project(ls) == (1, 2)


class TestBuildUniversalSchedule:
    def test_reference_example(self):
        s = build_universal_schedule(Characteristic((3, 2)))
        assert s.symbols == (1, 2, 1, 1, 2, 1, 2, 1, 1, 2)
        assert len(s) == 10

    def test_single_symbol(self):
        assert build_universal_schedule(Characteristic((3,))).symbols == (1, 1, 1)

    def test_all_zero(self):
        assert build_universal_schedule(Characteristic((0, 0, 0))).symbols == ()

    def test_matches_projection_route(self):
        for counts in [(1,), (2, 1), (3, 2), (1, 1, 1), (0, 2, 1), (4, 0, 1)]:
            q = Characteristic(counts)
            assert build_universal_schedule(q).symbols == project(build_line_sequence(q))

    def test_deterministic(self):
        q = Characteristic((2, 5, 3))
        assert build_universal_schedule(q) == build_universal_schedule(q)

    def test_overflow(self):
        with pytest.raises(ScheduleOverflowError):
            build_universal_schedule(Characteristic((2**62, 0)))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=8), min_size=1, max_size=5))
def test_merge_matches_fraction_sort_oracle(counts):
    q = Characteristic(tuple(counts))
    assert build_universal_schedule(q).symbols == oracle_schedule(counts)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=10), min_size=1, max_size=6))
def test_characteristic_is_exactly_n_times_q(counts):
    q = Characteristic(tuple(counts))
    s = build_universal_schedule(q)
    assert characteristic_of(s.symbols, q.n).counts == q.scaled(q.n)
    assert len(s) == q.n * q.total


line_sequences = st.sets(
    st.tuples(
        st.builds(
            TimePoint,
            st.integers(min_value=1, max_value=40),
            st.integers(min_value=1, max_value=12),
        ),
        st.integers(min_value=1, max_value=4),
    ),
    max_size=25,
).map(LineSequence)


@settings(max_examples=200, deadline=None)
@given(line_sequences)
def test_project_preserves_characteristic(ls):
    projected = project(ls)
    for symbol in range(1, 5):
        placed = sum(1 for _, s in ls.entries if s == symbol)
        assert placed == sum(1 for s in projected if s == symbol)


@settings(max_examples=200, deadline=None)
@given(line_sequences, line_sequences)
def test_project_concatenates_over_disjoint_time_ranges(low, high):
    # shift the second set strictly above the first: times there are <= 40,
    # so adding 41 makes every shifted time larger than every original one
    shifted = LineSequence(
        {(TimePoint(t.numerator + 41 * t.denominator, t.denominator), s) for t, s in high.entries}
    )
    combined = project(low | shifted)
    assert combined == project(low) + project(shifted)


class TestCharacteristicOf:
    def test_reference_schedule(self):
        assert characteristic_of((1, 2, 1, 1, 2, 1, 2, 1, 1, 2), 2).counts == (6, 4)

    def test_empty(self):
        assert characteristic_of((), 2).counts == (0, 0)

    def test_unused_symbols(self):
        assert characteristic_of((3, 3), 3).counts == (0, 0, 2)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            characteristic_of((1, 4), 3)
        with pytest.raises(ValueError):
            characteristic_of((0,), 2)


class TestScheduleDocument:
    def test_round_trip(self):
        s = build_universal_schedule(Characteristic((3, 2)))
        assert schedule_from_json(schedule_to_json(s)) == s

    def test_expected_document_shape(self):
        s = build_universal_schedule(Characteristic((3, 2)))
        assert schedule_to_json(s) == (
            '{"n": 2, "q": [3, 2], "schedule": [1, 2, 1, 1, 2, 1, 2, 1, 1, 2]}'
        )

    def test_load_rejects_wrong_characteristic(self):
        with pytest.raises(ValueError):
            schedule_from_json('{"n": 2, "q": [3, 2], "schedule": [1, 2]}')

    def test_load_rejects_n_mismatch(self):
        with pytest.raises(ValueError):
            schedule_from_json('{"n": 3, "q": [1, 1], "schedule": [1, 1, 2, 2]}')

    def test_load_rejects_malformed(self):
        with pytest.raises(ValueError):
            schedule_from_json("not json")
        with pytest.raises(ValueError):
            schedule_from_json('{"n": 1}')

    def test_schedule_constructor_validates(self):
        with pytest.raises(ValueError):
            Schedule((1, 1), Characteristic((1, 1)))
