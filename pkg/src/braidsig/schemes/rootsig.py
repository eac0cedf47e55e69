"""Trusted-directory group signatures from p-th powers.

The dealer draws a pool of secret braids, hands each member a disjoint
slice, and publishes the p-th powers of the whole pool in shuffled order.
A signature on m is S = key * H(m); anyone can verify by checking that
(S * H(m)^-1)^p appears in the directory, and the dealer can open a
signature by recognizing S * H(m)^-1 in the pool.  Every key is one-time:
reuse links signatures, so both the member and the dealer track use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..braid import Braid
from ..hashing import HashParams, hash_to_braid
from ..rng import XofStream
from ..sample import random_braid


class KeyReuseError(RuntimeError):
    """A one-time signing key was presented twice."""


@dataclass(frozen=True)
class Directory:
    """The published p-th powers, in shuffled order."""

    n: int
    l: int
    p: int
    entries: tuple[Braid, ...]


@dataclass(frozen=True)
class Signature:
    value: Braid


@dataclass
class MemberKeys:
    """One member's slice of the secret pool, with local one-time tracking."""

    member_id: str
    n: int
    l: int
    p: int
    keys: tuple[Braid, ...]
    used: set[int] = field(default_factory=set)

    def sign(self, key_index: int, message: bytes) -> Signature:
        if not 0 <= key_index < len(self.keys):
            raise IndexError(f"key index {key_index} out of range")
        if key_index in self.used:
            raise KeyReuseError(f"key {key_index} of {self.member_id} was already used")
        self.used.add(key_index)
        digest = hash_to_braid(message, HashParams(self.n, self.l))
        return Signature(self.keys[key_index] * digest)


@dataclass
class ManagerState:
    """The dealer's view: the full pool and who owns each braid."""

    n: int
    l: int
    p: int
    pool: tuple[Braid, ...]
    owner: dict[int, str]
    opened: set[int] = field(default_factory=set)


@dataclass(frozen=True)
class OpenResult:
    member_id: str
    key_index: int
    reused: bool


def setup(
    n: int,
    l: int,
    p: int,
    member_ids: Sequence[str],
    keys_per_member: int,
    stream: XofStream,
) -> tuple[ManagerState, Directory, dict[str, MemberKeys]]:
    if p < 2:
        raise ValueError(f"power must be at least 2, got {p}")
    if not member_ids or keys_per_member < 1:
        raise ValueError("need at least one member and one key per member")
    if len(set(member_ids)) != len(member_ids):
        raise ValueError("member ids must be distinct")

    pool = tuple(random_braid(n, l, stream) for _ in range(len(member_ids) * keys_per_member))
    owner: dict[int, str] = {}
    members: dict[str, MemberKeys] = {}
    for m, member_id in enumerate(member_ids):
        indices = range(m * keys_per_member, (m + 1) * keys_per_member)
        for i in indices:
            owner[i] = member_id
        members[member_id] = MemberKeys(
            member_id=member_id, n=n, l=l, p=p, keys=tuple(pool[i] for i in indices)
        )

    powers = [e**p for e in pool]
    stream.shuffle(powers)
    directory = Directory(n=n, l=l, p=p, entries=tuple(powers))
    return ManagerState(n=n, l=l, p=p, pool=pool, owner=owner), directory, members


def verify(sig: Signature, message: bytes, directory: Directory) -> bool:
    digest = hash_to_braid(message, HashParams(directory.n, directory.l))
    candidate = (sig.value * digest.inverse()) ** directory.p
    return candidate in directory.entries


def open_signature(manager: ManagerState, sig: Signature, message: bytes) -> OpenResult | None:
    digest = hash_to_braid(message, HashParams(manager.n, manager.l))
    key = sig.value * digest.inverse()
    for i, secret in enumerate(manager.pool):
        if secret == key:
            reused = i in manager.opened
            manager.opened.add(i)
            return OpenResult(member_id=manager.owner[i], key_index=i, reused=reused)
    return None
