import pytest

from braidsig.hashing import HashParams, hash_to_braid
from braidsig.rng import XofStream
from braidsig.schemes import rootsig


@pytest.fixture(scope="module")
def deployment():
    stream = XofStream(1001)
    manager, directory, members = rootsig.setup(8, 3, 3, ["ann", "bob", "cat"], 2, stream)
    return manager, directory, members


class TestSetup:
    def test_single_key_directory(self):
        _, directory, _ = rootsig.setup(6, 2, 2, ["solo"], 1, XofStream(1))
        assert len(directory.entries) == 1

    def test_directory_entries_are_pth_powers_of_pool(self, deployment):
        manager, directory, _ = deployment
        assert sorted(map(hash, directory.entries)) == sorted(hash(e**3) for e in manager.pool)
        for e in manager.pool:
            assert e**3 in directory.entries

    def test_shuffle_changed_order(self, deployment):
        manager, directory, _ = deployment
        assert [e**3 for e in manager.pool] != list(directory.entries)

    def test_key_slices_disjoint(self, deployment):
        manager, _, members = deployment
        all_keys = [k for m in members.values() for k in m.keys]
        assert len(set(all_keys)) == len(all_keys)
        assert set(manager.owner.values()) == {"ann", "bob", "cat"}

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            rootsig.setup(6, 2, 1, ["a"], 1, XofStream(0))
        with pytest.raises(ValueError):
            rootsig.setup(6, 2, 2, [], 1, XofStream(0))
        with pytest.raises(ValueError):
            rootsig.setup(6, 2, 2, ["a", "a"], 1, XofStream(0))


class TestSignVerify:
    def test_signature_is_key_times_digest(self, deployment):
        member = rootsig.MemberKeys("i", 8, 3, 3, keys=(deployment[0].pool[0],))
        sig = member.sign(0, b"msg")
        assert sig.value == deployment[0].pool[0] * hash_to_braid(b"msg", HashParams(8, 3))

    def test_identity_key_signature_is_digest(self):
        from braidsig.braid import identity

        member = rootsig.MemberKeys("i", 8, 3, 3, keys=(identity(8),))
        assert member.sign(0, b"msg").value == hash_to_braid(b"msg", HashParams(8, 3))

    def test_honest_rounds_accept(self, deployment):
        _, directory, members = deployment
        sig = members["ann"].sign(0, b"pay 5 coins")
        assert rootsig.verify(sig, b"pay 5 coins", directory)

    def test_message_tamper_rejected(self, deployment):
        _, directory, members = deployment
        sig = members["bob"].sign(0, b"original")
        assert not rootsig.verify(sig, b"tampered", directory)

    def test_empty_directory_rejects(self, deployment):
        _, directory, members = deployment
        sig = members["cat"].sign(0, b"msg")
        empty = rootsig.Directory(n=8, l=3, p=3, entries=())
        assert not rootsig.verify(sig, b"msg", empty)

    def test_key_reuse_refused(self, deployment):
        _, _, members = deployment
        members["ann"].sign(1, b"first")
        with pytest.raises(rootsig.KeyReuseError):
            members["ann"].sign(1, b"second")


class TestOpen:
    def test_identifies_signer(self):
        manager, directory, members = rootsig.setup(8, 3, 3, ["x", "y"], 2, XofStream(7))
        sig = members["y"].sign(0, b"claim")
        result = rootsig.open_signature(manager, sig, b"claim")
        assert result is not None and result.member_id == "y" and not result.reused

    def test_double_open_flags_reuse(self):
        manager, _, members = rootsig.setup(8, 3, 3, ["x", "y"], 1, XofStream(8))
        sig = members["x"].sign(0, b"claim")
        first = rootsig.open_signature(manager, sig, b"claim")
        second = rootsig.open_signature(manager, sig, b"claim")
        assert first.reused is False and second.reused is True
        assert first.member_id == second.member_id == "x"

    def test_garbage_signature_opens_to_none(self):
        manager, _, _ = rootsig.setup(8, 3, 3, ["x"], 1, XofStream(9))
        from braidsig.sample import random_braid

        junk = rootsig.Signature(random_braid(8, 3, XofStream(10)))
        assert rootsig.open_signature(manager, junk, b"claim") is None
