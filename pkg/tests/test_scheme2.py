import pytest

from braidsig.braid import identity
from braidsig.conjugacy import Verdict
from braidsig.hashing import HashParams, hash_to_braid
from braidsig.rng import XofStream
from braidsig.sample import random_braid
from braidsig.schemes import undeniable
from braidsig.schemes.protocol import ProtocolError, Transcript, TranscriptError

N, L = 12, 3


@pytest.fixture(scope="module")
def group():
    gk, members = undeniable.keygen(N, L, ["m0", "m1", "m2"], XofStream(2001))
    return gk, members


def digest(m: bytes):
    return hash_to_braid(m, HashParams(N, L))


class TestKeygen:
    def test_key_invariants(self, group):
        gk, members = group
        assert gk.beta == gk.alpha**4
        for mk in members:
            assert mk.public == mk.u.braid.inverse() * gk.beta * mk.v.braid
            assert 0 <= mk.u.braid.inf <= mk.u.braid.sup <= L

    def test_distinct_seeds_distinct_groups(self):
        a, _ = undeniable.keygen(N, L, ["m"], XofStream(1))
        b, _ = undeniable.keygen(N, L, ["m"], XofStream(2))
        assert a.alpha != b.alpha

    def test_member_publics_distinct(self, group):
        _, members = group
        publics = [m.public for m in members]
        assert len(set(publics)) == len(publics)

    def test_fifty_member_publics_distinct(self):
        _, members = undeniable.keygen(10, 4, [f"m{i}" for i in range(50)], XofStream(3))
        publics = {m.public for m in members}
        assert len(publics) == 50


class TestSignAndGroupCheck:
    def test_signature_formula(self, group):
        gk, members = group
        m = b"signed text"
        sig = undeniable.sign(gk, members[0], m)
        u, y = members[0].u.braid, digest(m)
        assert sig.value == u.inverse() * y.inverse() * gk.alpha**2 * y * u

    def test_degenerate_member_gives_conjugated_square(self, group):
        gk, _ = group
        from braidsig.sample import Block, TaggedBraid
        from braidsig.braid import BraidWord

        trivial = TaggedBraid(identity(N), Block.LEFT, BraidWord(N, ()))
        member = undeniable.MemberKey("deg", trivial, trivial, gk.beta)
        m = b"degenerate"
        sig = undeniable.sign(gk, member, m)
        y = digest(m)
        assert sig.value == y.inverse() * gk.alpha**2 * y

    def test_sign_deterministic(self, group):
        gk, members = group
        assert undeniable.sign(gk, members[1], b"m") == undeniable.sign(gk, members[1], b"m")

    def test_group_check_accepts_honest(self, group):
        gk, members = group
        sig = undeniable.sign(gk, members[2], b"check me")
        assert undeniable.check_group(sig, gk.beta).kind is Verdict.CONJUGATE

    def test_group_check_rejects_random(self, group):
        gk, _ = group
        junk = undeniable.Signature(random_braid(N, L, XofStream(77)))
        assert undeniable.check_group(junk, gk.beta).kind is Verdict.NOT_CONJUGATE

    def test_group_check_rejects_identity(self, group):
        gk, _ = group
        assert (
            undeniable.check_group(undeniable.Signature(identity(N)), gk.beta).kind
            is Verdict.NOT_CONJUGATE
        )


class TestConfirmationAlgebra:
    def test_honest_response_collapses(self, group):
        """b u (a^-1 S^2 x a) v^-1 c equals b a^-1 y^-1 beta y beta a c."""
        gk, members = group
        mk = members[0]
        m = b"algebra"
        sig = undeniable.sign(gk, mk, m)
        y = digest(m)
        stream = XofStream(33)
        from braidsig.sample import Block, random_block_braid

        for _ in range(10):
            a = random_block_braid(N, L, Block.RIGHT, stream).braid
            b = random_braid(N, L, stream)
            c = random_braid(N, L, stream)
            q = undeniable.confirm_challenge_value(a, sig, mk.public)
            r = undeniable.confirm_response_value(b, c, mk, q)
            assert r == undeniable.confirm_expected_response(b, c, a, y, gk.beta)


class TestChallengeMasks:
    def test_distinct_masks_give_distinct_challenges(self, group):
        gk, members = group
        mk = members[0]
        sig = undeniable.sign(gk, mk, b"mask me")
        from braidsig.sample import Block, random_block_braid

        stream = XofStream(35)
        challenges = set()
        for _ in range(10):
            a = random_block_braid(N, L, Block.RIGHT, stream).braid
            challenges.add(undeniable.confirm_challenge_value(a, sig, mk.public))
        assert len(challenges) == 10


class TestConfirmationProtocol:
    def test_honest_run_accepts(self, group):
        gk, members = group
        sig = undeniable.sign(gk, members[0], b"honest")
        t = undeniable.run_confirmation(
            "s1", gk.beta, members[0], sig, b"honest", L, XofStream(41), XofStream(42)
        )
        assert t.verdict == "accept"
        assert [m.step for m in t.messages] == [
            "confirm-challenge",
            "confirm-response",
            "confirm-reveal",
            "confirm-open",
        ]

    def test_wrong_member_signature_undetermined(self, group):
        gk, members = group
        sig = undeniable.sign(gk, members[1], b"not mine")  # m1 signed
        t = undeniable.run_confirmation(
            "s2", gk.beta, members[0], sig, b"not mine", L, XofStream(43), XofStream(44)
        )
        assert t.verdict == "undetermined"

    def test_tampered_response_undetermined(self, group):
        gk, members = group
        mk = members[0]
        m = b"tamper"
        sig = undeniable.sign(gk, mk, m)
        verifier = undeniable.ConfirmationVerifier(
            "s3", gk.beta, mk.public, sig, m, L, XofStream(45)
        )
        prover = undeniable.ConfirmationProver("s3", mk, sig, L, XofStream(46))
        challenge = verifier.challenge()
        response = prover.respond(challenge)
        from braidsig.serialize import braid_to_dict

        forged = undeniable.Message(
            "s3", "confirm-response", {"R": braid_to_dict(random_braid(N, L, XofStream(47)))}
        )
        verifier.receive_response(forged)
        reveal = verifier.reveal()
        final = prover.open_blinding(reveal)
        assert verifier.conclude(final) == "undetermined"

    def test_prover_aborts_on_dishonest_challenge(self, group):
        gk, members = group
        mk = members[0]
        m = b"dishonest challenge"
        sig = undeniable.sign(gk, mk, m)
        prover = undeniable.ConfirmationProver("s4", mk, sig, L, XofStream(48))
        from braidsig.serialize import braid_to_dict

        bogus = undeniable.Message(
            "s4", "confirm-challenge", {"Q": braid_to_dict(random_braid(N, L, XofStream(49)))}
        )
        prover.respond(bogus)
        # verifier reveals an a that does not reproduce the bogus challenge
        reveal = undeniable.Message(
            "s4", "confirm-reveal", {"a": braid_to_dict(random_braid(N, L, XofStream(50)))}
        )
        final = prover.open_blinding(reveal)
        assert final.step == "confirm-abort"

    def test_out_of_order_messages_rejected(self, group):
        gk, members = group
        mk = members[0]
        sig = undeniable.sign(gk, mk, b"order")
        verifier = undeniable.ConfirmationVerifier(
            "s5", gk.beta, mk.public, sig, b"order", L, XofStream(51)
        )
        with pytest.raises(ProtocolError):
            verifier.reveal()  # before the challenge went out
        challenge = verifier.challenge()
        with pytest.raises(ProtocolError):
            verifier.challenge()  # twice
        prover = undeniable.ConfirmationProver("s5", mk, sig, L, XofStream(52))
        with pytest.raises(ProtocolError):
            prover.open_blinding(undeniable.Message("s5", "confirm-reveal", {}))
        with pytest.raises(ProtocolError):
            prover.respond(undeniable.Message("other-session", "confirm-challenge", {}))

    def test_transcript_replay(self, group):
        gk, members = group
        sig = undeniable.sign(gk, members[0], b"replay me")
        t = undeniable.run_confirmation(
            "s6", gk.beta, members[0], sig, b"replay me", L, XofStream(53), XofStream(54)
        )
        assert (
            undeniable.replay_confirmation(t, gk.beta, members[0].public, sig, b"replay me", L)
            == "accept"
        )

    def test_truncated_transcript_rejected(self, group):
        gk, members = group
        sig = undeniable.sign(gk, members[0], b"truncate")
        t = undeniable.run_confirmation(
            "s7", gk.beta, members[0], sig, b"truncate", L, XofStream(55), XofStream(56)
        )
        cut = Transcript(t.kind, t.session, t.messages[:2], t.verdict)
        with pytest.raises(TranscriptError):
            undeniable.replay_confirmation(cut, gk.beta, members[0].public, sig, b"truncate", L)


class TestDisavowalProtocol:
    def test_invalid_signature_disavowed(self, group):
        gk, members = group
        junk = undeniable.Signature(random_braid(N, L, XofStream(57)))
        t = undeniable.run_disavowal("d1", gk.beta, members[0], junk, L, XofStream(58))
        assert t.verdict == "invalid-signature"

    def test_garbage_response_flagged(self, group):
        gk, members = group
        mk = members[0]
        junk = undeniable.Signature(random_braid(N, L, XofStream(59)))
        verifier = undeniable.DisavowalVerifier(
            "d2", gk.beta, mk.public, junk, L, XofStream(60)
        )
        verifier.challenge()
        from braidsig.serialize import braid_to_dict

        forged = undeniable.Message(
            "d2",
            "disavow-response",
            {
                "R1": braid_to_dict(random_braid(N, L, XofStream(61))),
                "R2": braid_to_dict(random_braid(N, L, XofStream(62))),
            },
        )
        assert verifier.conclude(forged) == "improper-response"

    def test_equal_challenges_give_equal_responses(self, group):
        _, members = group
        mk = members[0]
        q = random_braid(N, L, XofStream(63))
        r1, r2 = undeniable.disavow_response_values(mk, q, q)
        assert r1 == r2

    def test_replay_and_order(self, group):
        gk, members = group
        junk = undeniable.Signature(random_braid(N, L, XofStream(64)))
        t = undeniable.run_disavowal("d3", gk.beta, members[0], junk, L, XofStream(65))
        assert (
            undeniable.replay_disavowal(t, gk.beta, members[0].public, junk)
            == "invalid-signature"
        )
        prover = undeniable.DisavowalProver("d3", members[0])
        with pytest.raises(ProtocolError):
            prover.respond(undeniable.Message("d3", "disavow-response", {}))

    def test_documented_degeneracy_valid_signature_also_passes(self, group):
        """Honest disavowal of a VALID signature still satisfies the
        proof-form check: both sides reduce to the same conjugate because
        the challenge pair commutes.  The protocol cannot incriminate; this
        assertion documents the behavior rather than endorsing it."""
        gk, members = group
        sig = undeniable.sign(gk, members[0], b"valid and disavowed")
        t = undeniable.run_disavowal("d4", gk.beta, members[0], sig, L, XofStream(66))
        assert t.verdict == "invalid-signature"

    def test_printed_check_breaks_completeness(self, group):
        """The published verifier equality (with the beta^-1 terms) fails on
        honest runs; it survives behind a flag for study."""
        gk, members = group
        junk = undeniable.Signature(random_braid(N, L, XofStream(67)))
        t = undeniable.run_disavowal(
            "d5", gk.beta, members[0], junk, L, XofStream(68), printed_check=True
        )
        assert t.verdict == "improper-response"
