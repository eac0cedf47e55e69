"""Managerless group signatures with confirmation and disavowal.

All members share a secret braid alpha whose fourth power beta is the
group public key.  Member i holds left-block secrets (u_i, v_i) and
publishes x_i = u_i^-1 beta v_i.  A signature on m is
S = u_i^-1 y^-1 alpha^2 y u_i with y = H(m); then S^2 = u_i^-1 y^-1 beta
y u_i, so anyone can test group identity by deciding whether S^2 is
conjugate to beta.  Tying a signature to a *particular* member takes an
interactive protocol with the signer.

Confirmation (prover convinces the verifier the signature is theirs):
the verifier masks S^2 x_i by a right-block conjugation a, the prover
wraps the challenge in u_i ... v_i^-1 and blinds with (b, c), the
verifier reveals a, the prover checks the challenge was honest before
revealing (b, c), and the verifier tests
R = b a^-1 y^-1 beta y beta a c.  The left-block secrets commute with
the right-block mask, which makes the honest algebra collapse.

Disavowal (prover shows a signature is not theirs): two challenges under
a *commuting* right-block pair (a, b); honest responses always satisfy
b^-1 R1 b == a^-1 R2 a when the signature is invalid.  That check is the
one used by the completeness argument; the published step as printed
carries extra beta^-1 terms that break completeness, and is kept behind
``printed_check`` for study only.  Note the documented degeneracy: the
proof-form equality holds for honest responses regardless of the
signature's validity, so a disavowal run cannot incriminate - see the
package notes and the dedicated test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..braid import Braid
from ..conjugacy import ConjugacyVerdict, SummitBudget, DEFAULT_BUDGET, is_conjugate
from ..hashing import HashParams, hash_to_braid
from ..rng import XofStream
from ..sample import Block, TaggedBraid, random_block_braid, random_braid, random_commuting_rb_pair
from ..serialize import braid_from_dict, braid_to_dict
from .protocol import Message, ProtocolError, Transcript, TranscriptError, take_step


@dataclass(frozen=True)
class GroupKey:
    """The shared group secret and its published fourth power."""

    n: int
    l: int
    alpha: Braid
    beta: Braid


@dataclass(frozen=True)
class MemberKey:
    member_id: str
    u: TaggedBraid
    v: TaggedBraid
    public: Braid


@dataclass(frozen=True)
class Signature:
    value: Braid


def keygen(n: int, l: int, member_ids: Sequence[str], stream: XofStream) -> tuple[GroupKey, tuple[MemberKey, ...]]:
    if not member_ids:
        raise ValueError("need at least one member")
    if len(set(member_ids)) != len(member_ids):
        raise ValueError("member ids must be distinct")
    alpha = random_braid(n, l, stream)
    beta = alpha**4
    members = []
    for member_id in member_ids:
        u = random_block_braid(n, l, Block.LEFT, stream)
        v = random_block_braid(n, l, Block.LEFT, stream)
        public = u.braid.inverse() * beta * v.braid
        members.append(MemberKey(member_id=member_id, u=u, v=v, public=public))
    return GroupKey(n=n, l=l, alpha=alpha, beta=beta), tuple(members)


def sign(group: GroupKey, member: MemberKey, message: bytes) -> Signature:
    y = hash_to_braid(message, HashParams(group.n, group.l))
    u = member.u.braid
    return Signature(u.inverse() * y.inverse() * group.alpha**2 * y * u)


def check_group(sig: Signature, beta: Braid, budget: SummitBudget = DEFAULT_BUDGET) -> ConjugacyVerdict:
    """Group-identity check: is the squared signature conjugate to beta?"""
    return is_conjugate(sig.value**2, beta, budget)


# ---------------------------------------------------------------------------
# Protocol algebra (shared by the state machines and the file-exchange CLI)
# ---------------------------------------------------------------------------

def _digest(n: int, l: int, message: bytes) -> Braid:
    return hash_to_braid(message, HashParams(n, l))


def confirm_challenge_value(a: Braid, sig: Signature, member_public: Braid) -> Braid:
    return a.inverse() * sig.value**2 * member_public * a


def confirm_response_value(b: Braid, c: Braid, member: MemberKey, q: Braid) -> Braid:
    return b * member.u.braid * q * member.v.braid.inverse() * c


def confirm_expected_response(b: Braid, c: Braid, a: Braid, y: Braid, beta: Braid) -> Braid:
    return b * a.inverse() * y.inverse() * beta * y * beta * a * c


def disavow_response_values(member: MemberKey, q1: Braid, q2: Braid) -> tuple[Braid, Braid]:
    u, v = member.u.braid, member.v.braid
    return u * q1 * v.inverse(), u * q2 * v.inverse()


def disavow_check(r1: Braid, r2: Braid, a: Braid, b: Braid, beta: Braid, printed: bool) -> bool:
    """The verifier's equality.  The proof-form check drops the beta^-1
    terms of the published step, which contradict the completeness
    argument; pass ``printed=True`` to study the published variant."""
    if printed:
        ib = beta.inverse()
        return b.inverse() * (r1 * ib) * b == a.inverse() * (r2 * ib) * a
    return b.inverse() * r1 * b == a.inverse() * r2 * a


# ---------------------------------------------------------------------------
# Confirmation protocol
# ---------------------------------------------------------------------------


class ConfirmationVerifier:
    """Verifier state machine: challenge -> response -> reveal -> verdict."""

    def __init__(
        self,
        session: str,
        beta: Braid,
        member_public: Braid,
        sig: Signature,
        message: bytes,
        l: int,
        stream: XofStream,
    ):
        self.session = session
        self.beta = beta
        self.x = member_public
        self.sig = sig
        self.y = _digest(beta.n, l, message)
        self.l = l
        self._stream = stream
        self._state = "start"
        self._a: Braid | None = None
        self._response: Braid | None = None

    def _expect(self, state: str) -> None:
        if self._state != state:
            raise ProtocolError(f"verifier is in state {self._state!r}, not {state!r}")

    def _check_session(self, msg: Message) -> None:
        if msg.session != self.session:
            raise ProtocolError(f"message for session {msg.session!r}, expected {self.session!r}")

    def challenge(self) -> Message:
        self._expect("start")
        a = random_block_braid(self.beta.n, self.l, Block.RIGHT, self._stream).braid
        self._a = a
        q = confirm_challenge_value(a, self.sig, self.x)
        self._state = "challenged"
        return Message(self.session, "confirm-challenge", {"Q": braid_to_dict(q)})

    def receive_response(self, msg: Message) -> None:
        self._expect("challenged")
        self._check_session(msg)
        if msg.step != "confirm-response":
            raise ProtocolError(f"expected confirm-response, got {msg.step!r}")
        self._response = braid_from_dict(msg.payload["R"])
        self._state = "responded"

    def reveal(self) -> Message:
        self._expect("responded")
        self._state = "revealed"
        return Message(self.session, "confirm-reveal", {"a": braid_to_dict(self._a)})

    def conclude(self, msg: Message) -> str:
        self._expect("revealed")
        self._check_session(msg)
        self._state = "done"
        if msg.step == "confirm-abort":
            return "undetermined"
        if msg.step != "confirm-open":
            raise ProtocolError(f"expected confirm-open, got {msg.step!r}")
        b = braid_from_dict(msg.payload["b"])
        c = braid_from_dict(msg.payload["c"])
        expected = confirm_expected_response(b, c, self._a, self.y, self.beta)
        return "accept" if self._response == expected else "undetermined"


class ConfirmationProver:
    """Prover state machine: respond to the challenge, then reveal the
    blinding pair only after checking the challenge was honestly formed."""

    def __init__(
        self,
        session: str,
        member: MemberKey,
        sig: Signature,
        l: int,
        stream: XofStream,
    ):
        self.session = session
        self.member = member
        self.sig = sig
        self.l = l
        self._stream = stream
        self._state = "start"
        self._q: Braid | None = None
        self._b: Braid | None = None
        self._c: Braid | None = None

    def _check_session(self, msg: Message) -> None:
        if msg.session != self.session:
            raise ProtocolError(f"message for session {msg.session!r}, expected {self.session!r}")

    def respond(self, msg: Message) -> Message:
        if self._state != "start":
            raise ProtocolError(f"prover is in state {self._state!r}, not 'start'")
        self._check_session(msg)
        if msg.step != "confirm-challenge":
            raise ProtocolError(f"expected confirm-challenge, got {msg.step!r}")
        q = braid_from_dict(msg.payload["Q"])
        n = q.n
        self._q = q
        self._b = random_braid(n, self.l, self._stream)
        self._c = random_braid(n, self.l, self._stream)
        r = confirm_response_value(self._b, self._c, self.member, q)
        self._state = "responded"
        return Message(self.session, "confirm-response", {"R": braid_to_dict(r)})

    def open_blinding(self, msg: Message) -> Message:
        if self._state != "responded":
            raise ProtocolError(f"prover is in state {self._state!r}, not 'responded'")
        self._check_session(msg)
        if msg.step != "confirm-reveal":
            raise ProtocolError(f"expected confirm-reveal, got {msg.step!r}")
        a = braid_from_dict(msg.payload["a"])
        self._state = "done"
        expected_q = confirm_challenge_value(a, self.sig, self.member.public)
        if expected_q != self._q:
            return Message(
                self.session,
                "confirm-abort",
                {"reason": "challenge does not match the revealed conjugator"},
            )
        return Message(
            self.session,
            "confirm-open",
            {"b": braid_to_dict(self._b), "c": braid_to_dict(self._c)},
        )


def run_confirmation(
    session: str,
    beta: Braid,
    member: MemberKey,
    sig: Signature,
    message: bytes,
    l: int,
    verifier_stream: XofStream,
    prover_stream: XofStream,
) -> Transcript:
    """Drive both confirmation roles in-process and record the exchange."""
    verifier = ConfirmationVerifier(session, beta, member.public, sig, message, l, verifier_stream)
    prover = ConfirmationProver(session, member, sig, l, prover_stream)
    msgs = [verifier.challenge()]
    msgs.append(prover.respond(msgs[-1]))
    verifier.receive_response(msgs[-1])
    msgs.append(verifier.reveal())
    msgs.append(prover.open_blinding(msgs[-1]))
    verdict = verifier.conclude(msgs[-1])
    return Transcript("confirmation", session, tuple(msgs), verdict)


def replay_confirmation(
    transcript: Transcript, beta: Braid, member_public: Braid, sig: Signature, message: bytes, l: int
) -> str:
    """Recompute a confirmation verdict from its public messages."""
    if transcript.kind != "confirmation":
        raise TranscriptError(f"not a confirmation transcript: {transcript.kind!r}")
    session = transcript.session
    msgs = transcript.messages
    q = braid_from_dict(take_step(msgs, 0, "confirm-challenge", session).payload["Q"])
    r = braid_from_dict(take_step(msgs, 1, "confirm-response", session).payload["R"])
    a = braid_from_dict(take_step(msgs, 2, "confirm-reveal", session).payload["a"])
    if q != confirm_challenge_value(a, sig, member_public):
        raise TranscriptError("challenge does not match the revealed conjugator")
    if len(msgs) < 4:
        raise TranscriptError("transcript truncated: missing confirm-open")
    final = msgs[3]
    if final.step == "confirm-abort":
        verdict = "undetermined"
    else:
        if final.step != "confirm-open":
            raise TranscriptError(f"expected confirm-open, found {final.step!r}")
        b = braid_from_dict(final.payload["b"])
        c = braid_from_dict(final.payload["c"])
        y = _digest(beta.n, l, message)
        expected = confirm_expected_response(b, c, a, y, beta)
        verdict = "accept" if r == expected else "undetermined"
    if verdict != transcript.verdict:
        raise TranscriptError(
            f"recorded verdict {transcript.verdict!r} does not replay ({verdict!r})"
        )
    return verdict


# ---------------------------------------------------------------------------
# Disavowal protocol
# ---------------------------------------------------------------------------

class DisavowalVerifier:
    """Verifier state machine: paired challenge -> verdict."""

    def __init__(
        self,
        session: str,
        beta: Braid,
        member_public: Braid,
        sig: Signature,
        l: int,
        stream: XofStream,
        printed_check: bool = False,
    ):
        self.session = session
        self.beta = beta
        self.x = member_public
        self.sig = sig
        self.l = l
        self.printed_check = printed_check
        self._stream = stream
        self._state = "start"
        self._a: Braid | None = None
        self._b: Braid | None = None

    def challenge(self) -> Message:
        if self._state != "start":
            raise ProtocolError(f"verifier is in state {self._state!r}, not 'start'")
        a_tagged, b_tagged = random_commuting_rb_pair(self.beta.n, self.l, self._stream)
        a, b = a_tagged.braid, b_tagged.braid
        if a * b != b * a:
            raise RuntimeError("sampled challenge pair does not commute")
        self._a, self._b = a, b
        q1 = confirm_challenge_value(a, self.sig, self.x)
        q2 = confirm_challenge_value(b, self.sig, self.x)
        self._state = "challenged"
        return Message(
            self.session,
            "disavow-challenge",
            {"Q1": braid_to_dict(q1), "Q2": braid_to_dict(q2)},
        )

    def conclude(self, msg: Message) -> str:
        if self._state != "challenged":
            raise ProtocolError(f"verifier is in state {self._state!r}, not 'challenged'")
        if msg.session != self.session:
            raise ProtocolError(f"message for session {msg.session!r}, expected {self.session!r}")
        if msg.step != "disavow-response":
            raise ProtocolError(f"expected disavow-response, got {msg.step!r}")
        r1 = braid_from_dict(msg.payload["R1"])
        r2 = braid_from_dict(msg.payload["R2"])
        self._state = "done"
        same = disavow_check(r1, r2, self._a, self._b, self.beta, self.printed_check)
        return "invalid-signature" if same else "improper-response"

    def disclosure(self) -> Message:
        """The challenge conjugators, disclosed for transcript replay."""
        if self._state != "done":
            raise ProtocolError("disclosure only after the verdict")
        return Message(
            self.session,
            "disavow-reveal",
            {"a": braid_to_dict(self._a), "b": braid_to_dict(self._b)},
        )


class DisavowalProver:
    def __init__(self, session: str, member: MemberKey):
        self.session = session
        self.member = member
        self._state = "start"

    def respond(self, msg: Message) -> Message:
        if self._state != "start":
            raise ProtocolError(f"prover is in state {self._state!r}, not 'start'")
        if msg.session != self.session:
            raise ProtocolError(f"message for session {msg.session!r}, expected {self.session!r}")
        if msg.step != "disavow-challenge":
            raise ProtocolError(f"expected disavow-challenge, got {msg.step!r}")
        q1 = braid_from_dict(msg.payload["Q1"])
        q2 = braid_from_dict(msg.payload["Q2"])
        r1, r2 = disavow_response_values(self.member, q1, q2)
        self._state = "done"
        return Message(
            self.session,
            "disavow-response",
            {"R1": braid_to_dict(r1), "R2": braid_to_dict(r2)},
        )


def run_disavowal(
    session: str,
    beta: Braid,
    member: MemberKey,
    sig: Signature,
    l: int,
    verifier_stream: XofStream,
    printed_check: bool = False,
) -> Transcript:
    """Drive both disavowal roles in-process; the transcript includes the
    verifier's challenge disclosure so the verdict replays offline."""
    verifier = DisavowalVerifier(
        session, beta, member.public, sig, l, verifier_stream, printed_check=printed_check
    )
    prover = DisavowalProver(session, member)
    msgs = [verifier.challenge()]
    msgs.append(prover.respond(msgs[0]))
    verdict = verifier.conclude(msgs[-1])
    msgs.append(verifier.disclosure())
    return Transcript("disavowal", session, tuple(msgs), verdict)


def replay_disavowal(
    transcript: Transcript,
    beta: Braid,
    member_public: Braid,
    sig: Signature,
    printed_check: bool = False,
) -> str:
    """Recompute a disavowal verdict from the transcript."""
    if transcript.kind != "disavowal":
        raise TranscriptError(f"not a disavowal transcript: {transcript.kind!r}")
    session = transcript.session
    msgs = transcript.messages
    challenge = take_step(msgs, 0, "disavow-challenge", session)
    response = take_step(msgs, 1, "disavow-response", session)
    reveal = take_step(msgs, 2, "disavow-reveal", session)
    a = braid_from_dict(reveal.payload["a"])
    b = braid_from_dict(reveal.payload["b"])
    if a * b != b * a:
        raise TranscriptError("revealed challenge pair does not commute")
    if braid_from_dict(challenge.payload["Q1"]) != confirm_challenge_value(a, sig, member_public):
        raise TranscriptError("first challenge does not match the revealed conjugator")
    if braid_from_dict(challenge.payload["Q2"]) != confirm_challenge_value(b, sig, member_public):
        raise TranscriptError("second challenge does not match the revealed conjugator")
    r1 = braid_from_dict(response.payload["R1"])
    r2 = braid_from_dict(response.payload["R2"])
    same = disavow_check(r1, r2, a, b, beta, printed_check)
    verdict = "invalid-signature" if same else "improper-response"
    if verdict != transcript.verdict:
        raise TranscriptError(
            f"recorded verdict {transcript.verdict!r} does not replay ({verdict!r})"
        )
    return verdict
