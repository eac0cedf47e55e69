"""Deterministic hashing of byte strings into braids.

The digest of ``label || message`` under SHAKE-256 is expanded into l
factorial-base (Lehmer) codes, one per canonical factor: digit j of each
code is drawn uniformly from [0, n-1-j] by rejection sampling on digest
bytes (one byte per attempt; the final digit is always 0 and consumes no
bytes).  Decoding the codes gives l permutation braids whose normalized
product is the output, so the result always satisfies 0 <= inf <= sup <= l.

The construction is injective up to normalization and the per-factor
distribution matches the random braid generator.  Collision resistance is
inherited from the XOF; pinned vectors live in the test suite.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .braid import Braid, from_factors
from .permutations import lehmer_decode

DEFAULT_LABEL = b"braidsig-H-v1"


@dataclass(frozen=True)
class HashParams:
    n: int
    l: int
    label: bytes = DEFAULT_LABEL

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"strand count must be at least 2, got {self.n}")
        if self.l < 1:
            raise ValueError(f"factor budget must be at least 1, got {self.l}")


class _DigestBytes:
    """Lazily extended SHAKE-256 output (an XOF prefix is stable)."""

    def __init__(self, shake: "hashlib._Hash", initial: int):
        self._shake = shake
        self._size = max(initial, 64)
        self._buffer = shake.digest(self._size)
        self._pos = 0

    def next_byte(self) -> int:
        if self._pos >= self._size:
            self._size *= 2
            self._buffer = self._shake.digest(self._size)
        b = self._buffer[self._pos]
        self._pos += 1
        return b


def hash_to_braid(message: bytes, params: HashParams) -> Braid:
    """Collision-resistant map from byte strings to braids with at most
    ``params.l`` canonical factors."""
    n, l = params.n, params.l
    shake = hashlib.shake_256(params.label + message)
    stream = _DigestBytes(shake, 2 * n * l)

    factors = []
    for _ in range(l):
        digits = []
        for j in range(n - 1):
            bound = n - j
            limit = 256 - 256 % bound
            while True:
                b = stream.next_byte()
                if b < limit:
                    digits.append(b % bound)
                    break
        digits.append(0)
        factors.append(lehmer_decode(n, digits))
    return from_factors(n, factors)
