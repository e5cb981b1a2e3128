"""Seed derivation and lazily materialized random functions.

All simulation randomness flows from one master seed through labeled
substreams, so every run is reproducible bit for bit.
"""

from __future__ import annotations

import hashlib
import random

__all__ = ["derive_seed", "derive_int", "substream", "LazyRandomFunction"]


def _encode_part(part: bytes | str | int) -> bytes:
    if isinstance(part, bytes):
        tag, body = b"b", part
    elif isinstance(part, str):
        tag, body = b"s", part.encode()
    elif isinstance(part, int):
        tag, body = b"i", str(part).encode()
    else:
        raise TypeError(f"seed parts must be bytes, str or int, got {type(part)}")
    return tag + len(body).to_bytes(4, "big") + body


def derive_seed(*parts: bytes | str | int) -> bytes:
    """16-byte seed, a pure function of the labeled parts."""
    shake = hashlib.shake_256()
    for part in parts:
        shake.update(_encode_part(part))
    return shake.digest(16)


def derive_int(*parts: bytes | str | int) -> int:
    return int.from_bytes(derive_seed(*parts), "big")


def substream(*parts: bytes | str | int) -> random.Random:
    """Pseudorandom stream independent per label tuple."""
    return random.Random(derive_int(*parts))


class LazyRandomFunction:
    """Seeded function ``bytes -> bytes`` materialized point by point.

    The value at a point is derived from (seed, point) alone, so it does not
    depend on the order in which points are first touched; the table exists
    for memoization and inspection.  Calls must be externally serialized if
    shared across threads.
    """

    def __init__(self, seed: bytes, out_len: int) -> None:
        if len(seed) != 16:
            raise ValueError("seed must be exactly 16 bytes (see derive_seed)")
        if out_len < 1:
            raise ValueError("output length must be positive")
        self.seed = seed
        self.out_len = out_len
        self.table: dict[bytes, bytes] = {}

    def __call__(self, point: bytes) -> bytes:
        point = bytes(point)
        value = self.table.get(point)
        if value is None:
            value = hashlib.shake_256(self.seed + point).digest(self.out_len)
            self.table[point] = value
        return value
