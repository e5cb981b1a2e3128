"""Shared test fixtures: seeded adaptive clients and toy oracles."""

import hashlib
import random

from statq.interposer import OracleBinding


def stateless_handler(oracle_id):
    """Pure bytes -> bytes oracle, distinct per id."""

    def handler(payload):
        data = payload if isinstance(payload, bytes) else repr(payload).encode()
        return hashlib.shake_256(b"oracle" + bytes([oracle_id]) + data).digest(8)

    return handler


def stateless_bindings(n):
    return [OracleBinding(i, stateless_handler(i)) for i in range(1, n + 1)]


class CountingOracle:
    """Stateful oracle: every invocation bumps and returns a counter."""

    def __init__(self):
        self.count = 0

    def __call__(self, payload):
        self.count += 1
        return self.count.to_bytes(4, "big")


def make_scripted_client(seed, q_counts):
    """Seeded adaptive client honoring the budget vector ``q_counts``.

    The choice of which oracle to query next is fed from both the seed and
    the previous oracle response, so any response mismatch between a direct
    and a wrapped run diverges the whole query pattern.  Re-running the
    returned callable replays the identical strategy.
    """

    def client(query):
        rng = random.Random(seed)
        remaining = list(q_counts)
        digest = hashlib.sha256()
        last = b"\x00"
        while any(remaining):
            live = [i for i, r in enumerate(remaining) if r > 0]
            pick = live[(rng.randrange(256) ^ last[0]) % len(live)]
            payload = bytes([pick + 1]) + last + rng.randbytes(4)
            response = query(pick + 1, payload)
            digest.update(response)
            last = response[:1] or b"\x00"
            remaining[pick] -= 1
            if rng.random() < 0.15:
                break
        return digest.digest()

    return client


def run_direct(client, bindings):
    """Run a client with unmediated oracle access; returns (output, call ids)."""
    handlers = {b.oracle_id: b.handler for b in bindings}
    calls = []

    def query(oracle_id, payload):
        calls.append(oracle_id)
        return handlers[oracle_id](payload)

    return client(query), calls


def random_budget(rng, n, max_each=4, ensure_positive=True):
    counts = [rng.randrange(max_each + 1) for _ in range(n)]
    if ensure_positive and not any(counts):
        counts[rng.randrange(n)] = 1 + rng.randrange(max_each)
    return tuple(counts)
