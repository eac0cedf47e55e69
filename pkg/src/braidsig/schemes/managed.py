"""Managed group signatures: join, sign, verify by conjugacy, open.

The manager holds a left-block secret s, right-block secrets k1, k2 and a
braid alpha, publishing x = s^-1 alpha s.  Verification compares S1
against y and S1 x against y alpha by conjugacy, so the comparison base
alpha is published alongside x; the manager's conjugator s is what stays
secret (every member receives alpha over the join channel anyway).

A joining member picks u and a left-block a, sends v = u^-1 alpha u and
w = a^-1 u a; the manager answers with z1 = k1^-1 w k1 and
z2 = k2^-1 w k2 and records v.  Unwrapping with a gives the signing pair
beta1 = k1^-1 u k1 and beta2 = k2^-1 u k2, because a commutes with the
right-block keys.  Signatures are S1 = s^-1 y s, S2 = s^-1 beta1^-1 y
beta2 s; opening conjugates S2 back to k1 ... k2^-1 form and recognizes
the member whose v makes S3 v conjugate to k1 y k2^-1 alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..braid import Braid
from ..conjugacy import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    SummitBudget,
    SummitClosure,
    Verdict,
    is_conjugate,
)
from ..hashing import HashParams, hash_to_braid
from ..rng import XofStream
from ..sample import Block, TaggedBraid, random_block_braid, random_braid


class JoinError(RuntimeError):
    pass


@dataclass
class ManagerState:
    n: int
    l: int
    s: TaggedBraid
    k1: TaggedBraid
    k2: TaggedBraid
    alpha: Braid
    members: dict[str, Braid] = field(default_factory=dict)  # member id -> v


@dataclass(frozen=True)
class GroupPublic:
    n: int
    l: int
    x: Braid
    alpha: Braid


@dataclass
class MemberState:
    member_id: str
    n: int
    l: int
    s: Braid
    alpha: Braid
    u: Braid
    a: TaggedBraid
    v: Braid
    w: Braid
    beta1: Braid | None = None
    beta2: Braid | None = None

    @property
    def joined(self) -> bool:
        return self.beta1 is not None and self.beta2 is not None


@dataclass(frozen=True)
class Signature:
    s1: Braid
    s2: Braid


@dataclass(frozen=True)
class OpenResult:
    member_id: str | None
    matches: tuple[str, ...]
    inconclusive: tuple[str, ...]


def setup(n: int, l: int, stream: XofStream) -> tuple[ManagerState, GroupPublic]:
    if n < 10:
        raise ValueError(f"the managed scheme needs n >= 10, got {n}")
    s = random_block_braid(n, l, Block.LEFT, stream)
    k1 = random_block_braid(n, l, Block.RIGHT, stream)
    k2 = random_block_braid(n, l, Block.RIGHT, stream)
    alpha = random_braid(n, l, stream)
    x = s.braid.inverse() * alpha * s.braid
    manager = ManagerState(n=n, l=l, s=s, k1=k1, k2=k2, alpha=alpha)
    return manager, GroupPublic(n=n, l=l, x=x, alpha=alpha)


def join_start(manager: ManagerState) -> tuple[Braid, Braid]:
    """Step 1: the manager discloses (s, alpha) over the secure channel."""
    return manager.s.braid, manager.alpha


def join_request(
    member_id: str, n: int, l: int, s: Braid, alpha: Braid, stream: XofStream
) -> tuple[MemberState, Braid, Braid]:
    """Step 2: the member commits to its secrets, yielding (v, w)."""
    u = random_braid(n, l, stream)
    a = random_block_braid(n, l, Block.LEFT, stream)
    v = u.inverse() * alpha * u
    w = a.braid.inverse() * u * a.braid
    member = MemberState(member_id=member_id, n=n, l=l, s=s, alpha=alpha, u=u, a=a, v=v, w=w)
    return member, v, w


def join_issue(manager: ManagerState, member_id: str, v: Braid, w: Braid) -> tuple[Braid, Braid]:
    """Step 3: the manager conjugates w by its right-block keys and records v."""
    if member_id in manager.members:
        raise JoinError(f"member id {member_id!r} already registered")
    k1, k2 = manager.k1.braid, manager.k2.braid
    z1 = k1.inverse() * w * k1
    z2 = k2.inverse() * w * k2
    manager.members[member_id] = v
    return z1, z2


def join_finalize(member: MemberState, z1: Braid, z2: Braid) -> MemberState:
    """Step 4: the member unwraps its signing pair."""
    a = member.a.braid
    member.beta1 = a * z1 * a.inverse()
    member.beta2 = a * z2 * a.inverse()
    return member


def sign(member: MemberState, message: bytes) -> Signature:
    if not member.joined:
        raise JoinError(f"member {member.member_id!r} has not completed the join")
    y = hash_to_braid(message, HashParams(member.n, member.l))
    s = member.s
    s1 = s.inverse() * y * s
    s2 = s.inverse() * member.beta1.inverse() * y * member.beta2 * s
    return Signature(s1=s1, s2=s2)


def verify(
    sig: Signature, message: bytes, pub: GroupPublic, budget: SummitBudget = DEFAULT_BUDGET
) -> str:
    """Accept, reject, or inconclusive: S1 must be conjugate to y and
    S1 x must be conjugate to y alpha."""
    y = hash_to_braid(message, HashParams(pub.n, pub.l))
    first = is_conjugate(sig.s1, y, budget).kind
    if first is Verdict.NOT_CONJUGATE:
        return "reject"
    second = is_conjugate(sig.s1 * pub.x, y * pub.alpha, budget).kind
    if second is Verdict.NOT_CONJUGATE:
        return "reject"
    if first is Verdict.INCONCLUSIVE or second is Verdict.INCONCLUSIVE:
        return "inconclusive"
    return "accept"


def open_signature(
    manager: ManagerState, sig: Signature, message: bytes, budget: SummitBudget = DEFAULT_BUDGET
) -> OpenResult:
    """Identify the signer by recognizing whose v completes the traceability
    conjugacy.  The budget covers the whole sweep: the closure of the common
    comparison braid is shared across members."""
    y = hash_to_braid(message, HashParams(manager.n, manager.l))
    k1, k2, s = manager.k1.braid, manager.k2.braid, manager.s.braid
    s3 = k1 * s * sig.s2 * s.inverse() * k2.inverse()
    target = k1 * y * k2.inverse() * manager.alpha

    matches: list[str] = []
    inconclusive: list[str] = []
    try:
        closure = SummitClosure(target, budget)
    except BudgetExceededError:
        return OpenResult(None, (), tuple(manager.members))
    for member_id, v in manager.members.items():
        verdict = closure.decide(s3 * v)
        if verdict.kind is Verdict.CONJUGATE:
            matches.append(member_id)
        elif verdict.kind is Verdict.INCONCLUSIVE:
            inconclusive.append(member_id)
    return OpenResult(
        member_id=matches[0] if matches else None,
        matches=tuple(matches),
        inconclusive=tuple(inconclusive),
    )
