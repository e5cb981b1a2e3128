"""Hash-based split-key PRF and the KEM combiner built on it.

The PRF hashes a mixing of the key parts together with the input:
``F(k_1, ..., k_n, x) = H(g(k_1, ..., k_n), x)``.  The mixing function ``g``
must leave the mixed value unpredictable when any single part is redrawn:
for every position ``i`` and every fixing of the other parts, the chance
that ``g`` hits any particular value over the draw of part ``i`` is at most
a declared ``epsilon``.  Both provided variants (concatenation and bytewise
XOR) are injective in each part separately, giving ``epsilon = 2^-bits``
for parts of a fixed bit length.

The pair ``(w, x)`` is fed to the hash with an injective framing (a 4-byte
big-endian length of ``w``, then ``w``, then ``x``); bare concatenation
would be ambiguous when ``|w|`` varies.

The combiner runs ``n`` component KEMs, concatenates their ciphertexts into
one wire blob, and derives the combined session key as the PRF of the
component session keys applied to that blob.
"""

from __future__ import annotations

import hashlib
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Protocol, Sequence

from .randomness import substream

__all__ = [
    "G_CONCAT",
    "G_XOR_SUM",
    "GFunction",
    "g_eval",
    "SplitKey",
    "encode_hash_input",
    "HashBackend",
    "Shake256Hash",
    "SkPrfInstance",
    "skprf_eval",
    "KemScheme",
    "ToyXorKem",
    "encode_ciphertexts",
    "decode_ciphertexts",
    "CombinedKem",
]

G_CONCAT = "concat"
G_XOR_SUM = "xor-sum"
_G_VARIANTS = (G_CONCAT, G_XOR_SUM)


@dataclass(frozen=True)
class GFunction:
    """Key-part mixing function with its declared unpredictability bound."""

    variant: str
    epsilon: Fraction

    def __post_init__(self) -> None:
        if self.variant not in _G_VARIANTS:
            raise ValueError(f"variant must be one of {_G_VARIANTS}, got {self.variant!r}")
        if not 0 < self.epsilon <= 1:
            raise ValueError(f"epsilon must lie in (0, 1], got {self.epsilon}")

    @classmethod
    def for_part_bits(cls, variant: str, bits: int) -> "GFunction":
        """Instance for fixed ``bits``-bit parts; both variants give 2^-bits."""
        return cls(variant, Fraction(1, 2**bits))


def _xor_bytes(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b))


def g_eval(g: GFunction, parts: Sequence[bytes]) -> bytes:
    """Mix the key parts: concatenation, or bytewise XOR of equal-length parts.

    XOR instantiates the group sum of fixed-length strings; modular addition
    would work as well but XOR makes the per-part bound immediate.
    """
    if not parts:
        raise ValueError("at least one key part required")
    parts = [bytes(p) for p in parts]
    if g.variant == G_CONCAT:
        return b"".join(parts)
    length = len(parts[0])
    for i, part in enumerate(parts, start=1):
        if len(part) != length:
            raise ValueError(
                f"xor-sum requires equal part lengths: part 1 has {length} bytes, "
                f"part {i} has {len(part)}"
            )
    acc = parts[0]
    for part in parts[1:]:
        acc = _xor_bytes(acc, part)
    return acc


@dataclass(frozen=True)
class SplitKey:
    """Key split into per-oracle parts ``(k_1, ..., k_n)``."""

    parts: tuple[bytes, ...]

    def __init__(self, parts: Sequence[bytes]) -> None:
        parts = tuple(bytes(p) for p in parts)
        if not parts:
            raise ValueError("a split key needs at least one part")
        object.__setattr__(self, "parts", parts)


def encode_hash_input(w: bytes, x: bytes) -> bytes:
    """Injective framing of the (mixed key, input) pair fed to the hash."""
    return len(w).to_bytes(4, "big") + w + x


class HashBackend(Protocol):
    out_len: int

    def __call__(self, message: bytes) -> bytes: ...


class Shake256Hash:
    """Cryptographic hash backend with a fixed output length."""

    def __init__(self, out_len: int = 32) -> None:
        if out_len < 1:
            raise ValueError("output length must be positive")
        self.out_len = out_len

    def __call__(self, message: bytes) -> bytes:
        return hashlib.shake_256(message).digest(self.out_len)


@dataclass(frozen=True)
class SkPrfInstance:
    """Split-key PRF: hash of the framed (mixed key parts, input) pair.

    ``hash_fn`` maps the framed message to a fixed-length digest; a
    :class:`Shake256Hash` for the production path, or a seeded
    :class:`~statq.randomness.LazyRandomFunction` when simulations need an
    inspectable random function.
    """

    n: int
    g: GFunction
    hash_fn: Callable[[bytes], bytes]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one key part")

    @property
    def out_len(self) -> int:
        return self.hash_fn.out_len  # type: ignore[attr-defined]


def skprf_eval(instance: SkPrfInstance, key: SplitKey, x: bytes) -> bytes:
    """Evaluate the PRF; a pure, deterministic function of (key, x, hash)."""
    if len(key.parts) != instance.n:
        raise ValueError(
            f"key has {len(key.parts)} parts, instance expects {instance.n}"
        )
    w = g_eval(instance.g, key.parts)
    return instance.hash_fn(encode_hash_input(w, bytes(x)))


class KemScheme(ABC):
    """Key encapsulation interface: produce and recover short session keys."""

    @abstractmethod
    def encaps(self) -> tuple[bytes, bytes]:
        """Return ``(ciphertext, session_key)``."""

    @abstractmethod
    def decaps(self, ciphertext: bytes) -> bytes:
        """Recover the session key from a ciphertext."""


class ToyXorKem(KemScheme):
    """Deliberately insecure stand-in KEM, deterministic given its seed.

    The "keypair" is a shared pad; each encapsulation draws a fresh session
    key and masks it with the pad.  Good enough to exercise the combiner's
    correctness and tamper behavior reproducibly.
    """

    def __init__(self, seed: int | bytes, key_len: int = 16) -> None:
        if key_len < 1:
            raise ValueError("key length must be positive")
        rng = substream(b"toy-kem", seed if isinstance(seed, bytes) else seed)
        self.key_len = key_len
        self._pad = rng.randbytes(key_len)
        self._rng = rng

    def encaps(self) -> tuple[bytes, bytes]:
        session_key = self._rng.randbytes(self.key_len)
        return _xor_bytes(session_key, self._pad), session_key

    def decaps(self, ciphertext: bytes) -> bytes:
        if len(ciphertext) != self.key_len:
            raise ValueError(
                f"ciphertext must be {self.key_len} bytes, got {len(ciphertext)}"
            )
        return _xor_bytes(bytes(ciphertext), self._pad)


def encode_ciphertexts(ciphertexts: Sequence[bytes]) -> bytes:
    """Wire format: count byte, then 4-byte big-endian length-prefixed parts."""
    if not 1 <= len(ciphertexts) <= 255:
        raise ValueError("component count must be between 1 and 255")
    chunks = [bytes([len(ciphertexts)])]
    for ct in ciphertexts:
        ct = bytes(ct)
        chunks.append(len(ct).to_bytes(4, "big"))
        chunks.append(ct)
    return b"".join(chunks)


def decode_ciphertexts(blob: bytes) -> list[bytes]:
    """Strict inverse of :func:`encode_ciphertexts`; trailing bytes are an error."""
    blob = bytes(blob)
    if not blob:
        raise ValueError("empty combined ciphertext")
    count = blob[0]
    if count < 1:
        raise ValueError("component count must be at least 1")
    parts: list[bytes] = []
    offset = 1
    for index in range(count):
        if offset + 4 > len(blob):
            raise ValueError(f"truncated length prefix for component {index + 1}")
        length = int.from_bytes(blob[offset : offset + 4], "big")
        offset += 4
        if offset + length > len(blob):
            raise ValueError(f"truncated component {index + 1}")
        parts.append(blob[offset : offset + length])
        offset += length
    if offset != len(blob):
        raise ValueError(f"{len(blob) - offset} trailing bytes after last component")
    return parts


class CombinedKem:
    """n component KEMs glued by the split-key PRF.

    Encapsulation returns the serialized tuple of component ciphertexts and
    the combined session key, which is the PRF of the component session keys
    applied to that serialized tuple.
    """

    def __init__(self, components: Sequence[KemScheme], prf: SkPrfInstance) -> None:
        components = tuple(components)
        if len(components) != prf.n:
            raise ValueError(
                f"{len(components)} components but the PRF expects {prf.n} key parts"
            )
        self.components = components
        self.prf = prf

    def encaps(self) -> tuple[bytes, bytes]:
        pairs = [component.encaps() for component in self.components]
        blob = encode_ciphertexts([ct for ct, _ in pairs])
        key = skprf_eval(self.prf, SplitKey([k for _, k in pairs]), blob)
        return blob, key

    def decaps(self, blob: bytes) -> bytes:
        ciphertexts = decode_ciphertexts(blob)
        if len(ciphertexts) != len(self.components):
            raise ValueError(
                f"combined ciphertext has {len(ciphertexts)} components, "
                f"expected {len(self.components)}"
            )
        parts = [
            component.decaps(ct) for component, ct in zip(self.components, ciphertexts)
        ]
        return skprf_eval(self.prf, SplitKey(parts), bytes(blob))
