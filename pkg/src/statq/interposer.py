"""Static-order sessions for adaptive multi-oracle clients.

A session pins the order in which oracles are contacted to the universal
schedule computed from the declared per-oracle budgets.  The client still
decides adaptively which oracle to query next and with what payload; the
session walks the schedule, fills the slots ahead of the client's next real
query with dummy queries (default payload, response discarded) or marks
them skipped, and forwards the real payload at the matching slot.  The
contacted sequence is therefore always a prefix of the fixed schedule and
never depends on the client's choices.

Dummy mode requires every oracle to be stateless, since dummy traffic would
otherwise perturb oracle state; skip mode never invokes the handler for a
filler slot (the slot still counts) and is safe for stateful oracles.

Each session is strictly sequential: one in-flight query at a time.
Distinct sessions are independent.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from .embedding import EmbeddingState, Exhausted
from .schedule import Characteristic, Schedule, build_universal_schedule

__all__ = [
    "MODE_DUMMY",
    "MODE_SKIP",
    "KIND_REAL",
    "KIND_DUMMY",
    "KIND_SKIPPED",
    "BudgetExceeded",
    "OracleBinding",
    "TranscriptRecord",
    "QueryTranscript",
    "Session",
    "run_wrapped",
    "check_transcript",
]

MODE_DUMMY = "dummy"
MODE_SKIP = "skip"
_MODES = (MODE_DUMMY, MODE_SKIP)

KIND_REAL = "real"
KIND_DUMMY = "dummy"
KIND_SKIPPED = "skipped"
_KINDS = (KIND_REAL, KIND_DUMMY, KIND_SKIPPED)


class BudgetExceeded(Exception):
    """The client queried an oracle more often than its declared budget."""

    def __init__(self, oracle_id: int, attempted: int, declared: int) -> None:
        super().__init__(
            f"oracle {oracle_id}: query {attempted} exceeds declared budget {declared}"
        )
        self.oracle_id = oracle_id
        self.attempted = attempted
        self.declared = declared


@dataclass(frozen=True)
class OracleBinding:
    """One oracle endpoint: id, handler, and the default payload for dummies."""

    oracle_id: int
    handler: Callable[[Any], Any]
    dummy_payload: Any = b""
    stateful: bool = False


def _fingerprint(payload: Any) -> str:
    data = bytes(payload) if isinstance(payload, (bytes, bytearray)) else repr(payload).encode()
    return hashlib.sha256(data).hexdigest()[:16]


@dataclass(frozen=True)
class TranscriptRecord:
    pos: int
    oracle_id: int
    kind: str
    fingerprint: str | None

    def to_dict(self) -> dict:
        return {
            "pos": self.pos,
            "oracle": self.oracle_id,
            "kind": self.kind,
            "fingerprint": self.fingerprint,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "TranscriptRecord":
        try:
            return cls(doc["pos"], doc["oracle"], doc["kind"], doc["fingerprint"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed transcript record: {doc!r}") from exc


class QueryTranscript:
    """Ordered per-slot record of a session, one line per consumed slot."""

    def __init__(self, records: Iterable[TranscriptRecord] = ()) -> None:
        self.records: list[TranscriptRecord] = []
        for record in records:
            self.append(record)

    def append(self, record: TranscriptRecord) -> None:
        if self.records and record.pos <= self.records[-1].pos:
            raise ValueError("transcript positions must be strictly increasing")
        if record.kind not in _KINDS:
            raise ValueError(f"unknown transcript kind {record.kind!r}")
        self.records.append(record)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def real_count(self, oracle_id: int) -> int:
        return sum(1 for r in self.records if r.kind == KIND_REAL and r.oracle_id == oracle_id)

    def slot_count(self, oracle_id: int) -> int:
        return sum(1 for r in self.records if r.oracle_id == oracle_id)

    def contacted_sequence(self) -> tuple[int, ...]:
        """Oracle ids actually contacted, in slot order (skipped slots excluded)."""
        return tuple(r.oracle_id for r in self.records if r.kind != KIND_SKIPPED)

    def slot_sequence(self) -> tuple[int, ...]:
        """Oracle ids of every consumed slot, skipped ones included."""
        return tuple(r.oracle_id for r in self.records)

    def real_indices(self) -> tuple[int, ...]:
        """Schedule positions that carried real client payloads."""
        return tuple(r.pos for r in self.records if r.kind == KIND_REAL)

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r.to_dict()) + "\n" for r in self.records)

    @classmethod
    def from_jsonl(cls, text: str) -> "QueryTranscript":
        records = []
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"transcript line {line_no} is not valid JSON") from exc
            records.append(TranscriptRecord.from_dict(doc))
        return cls(records)


class Session:
    """One wrapped client run against ``n`` bound oracles.

    The declared budget vector ``q`` fixes the schedule.  Real queries to
    oracle ``i`` beyond ``q_i`` raise :class:`BudgetExceeded`; total slot
    consumption per oracle is bounded by ``n * q_i`` by construction.
    """

    def __init__(
        self,
        q: Characteristic,
        bindings: Iterable[OracleBinding],
        mode: str = MODE_DUMMY,
        schedule: Schedule | None = None,
    ) -> None:
        if mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
        binding_map: dict[int, OracleBinding] = {}
        for binding in bindings:
            if binding.oracle_id in binding_map:
                raise ValueError(f"duplicate binding for oracle {binding.oracle_id}")
            binding_map[binding.oracle_id] = binding
        if set(binding_map) != set(range(1, q.n + 1)):
            raise ValueError(
                f"bindings must cover oracle ids 1..{q.n}, got {sorted(binding_map)}"
            )
        if mode == MODE_DUMMY:
            stateful = [b.oracle_id for b in binding_map.values() if b.stateful]
            if stateful:
                raise ValueError(
                    f"dummy mode requires stateless oracles; stateful: {stateful} "
                    "(use skip mode instead)"
                )
        if schedule is None:
            schedule = build_universal_schedule(q)
        elif schedule.source != q:
            raise ValueError("provided schedule was built for a different budget vector")
        self.q = q
        self.mode = mode
        self.schedule = schedule
        self.transcript = QueryTranscript()
        self._bindings = binding_map
        self._embedding = EmbeddingState(schedule.symbols)
        self._real_counts = [0] * q.n
        self._finished = False

    def real_count(self, oracle_id: int) -> int:
        return self._real_counts[oracle_id - 1]

    def query(self, oracle_id: int, payload: Any) -> Any:
        """Forward one client query, filling schedule slots up to its own.

        Returns the handler's response unchanged.  Handler errors propagate.
        """
        if self._finished:
            raise RuntimeError("session is finished")
        binding = self._bindings.get(oracle_id)
        if binding is None:
            # interface inconsistency: abort rather than guess
            raise ValueError(f"query to unbound oracle id {oracle_id!r}")
        declared = self.q.counts[oracle_id - 1]
        used = self._real_counts[oracle_id - 1]
        if used >= declared:
            raise BudgetExceeded(oracle_id, used + 1, declared)
        before = self._embedding.last_index
        try:
            target = self._embedding.next_index(oracle_id)
        except Exhausted as exc:
            # unreachable while the budget check above holds; kept so that an
            # exhausted schedule still surfaces as a budget violation
            raise BudgetExceeded(oracle_id, used + 1, declared) from exc
        self._fill(before + 1, target)
        self.transcript.append(
            TranscriptRecord(target, oracle_id, KIND_REAL, _fingerprint(payload))
        )
        self._real_counts[oracle_id - 1] += 1
        return binding.handler(payload)

    def _fill(self, start: int, stop: int) -> None:
        """Consume slots ``start .. stop-1`` as dummy or skipped traffic."""
        for pos in range(start, stop):
            slot_symbol = self.schedule.symbols[pos - 1]
            if self.mode == MODE_DUMMY:
                binding = self._bindings[slot_symbol]
                binding.handler(binding.dummy_payload)  # response discarded
                self.transcript.append(
                    TranscriptRecord(pos, slot_symbol, KIND_DUMMY, None)
                )
            else:
                self.transcript.append(
                    TranscriptRecord(pos, slot_symbol, KIND_SKIPPED, None)
                )

    def finish(self, flush: bool = False) -> QueryTranscript:
        """Close the session and return its transcript.

        Without ``flush`` the consumed slots stay a prefix of the schedule
        (still a fixed, input-independent order).  With ``flush`` the
        remaining slots are consumed as dummy or skipped traffic so every
        run touches the full ``n * Q`` schedule.
        """
        if not self._finished and flush:
            self._fill(self._embedding.last_index + 1, len(self.schedule) + 1)
        self._finished = True
        return self.transcript


def run_wrapped(
    client: Callable[[Callable[[int, Any], Any]], Any],
    q: Characteristic,
    bindings: Iterable[OracleBinding],
    mode: str = MODE_DUMMY,
    flush: bool = False,
) -> tuple[Any, QueryTranscript]:
    """Run ``client`` with its oracle access routed through a static-order session.

    ``client`` is a callable receiving a single ``query(oracle_id, payload)``
    function; its return value is passed through unchanged.  For stateless
    oracles the output matches a direct run with unmediated oracle access.
    """
    session = Session(q, bindings, mode)
    output = client(session.query)
    transcript = session.finish(flush=flush)
    return output, transcript


def check_transcript(transcript: QueryTranscript, schedule: Schedule) -> str | None:
    """Validate an exported transcript against its schedule.

    Returns None when consistent, otherwise a human-readable reason for the
    first violation found.  Checks: slots form a prefix of the schedule in
    order, each record names the oracle the schedule pins at that slot, real
    records carry payload fingerprints, and per-oracle real queries stay
    within the declared budget.
    """
    n = schedule.source.n
    real_counts = [0] * n
    expected_pos = 1
    for record in transcript:
        if record.pos != expected_pos:
            return f"slot {expected_pos} expected, found pos {record.pos}"
        if record.pos > len(schedule):
            return f"pos {record.pos} beyond schedule length {len(schedule)}"
        pinned = schedule.symbols[record.pos - 1]
        if record.oracle_id != pinned:
            return (
                f"pos {record.pos}: oracle {record.oracle_id} recorded, "
                f"schedule pins oracle {pinned}"
            )
        if record.kind not in _KINDS:
            return f"pos {record.pos}: unknown kind {record.kind!r}"
        if record.kind == KIND_REAL:
            if record.fingerprint is None:
                return f"pos {record.pos}: real record lacks a fingerprint"
            real_counts[record.oracle_id - 1] += 1
            if real_counts[record.oracle_id - 1] > schedule.source.counts[record.oracle_id - 1]:
                return (
                    f"oracle {record.oracle_id}: real queries exceed declared "
                    f"budget {schedule.source.counts[record.oracle_id - 1]}"
                )
        expected_pos += 1
    return None
