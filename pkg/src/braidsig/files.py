"""Envelope (de)serialization for every artifact the CLI reads or writes.

Each artifact kind has a pair of functions mapping between the in-memory
dataclasses and versioned envelope dicts.  Parsing is strict: unknown
formats, wrong kinds, missing fields, and non-canonical braids are all
rejected with :class:`~braidsig.serialize.FormatError`.
"""

from __future__ import annotations

from typing import Any

from .braid import Braid
from .schemes import managed, rootsig, undeniable
from .schemes.protocol import Message, Transcript
from .serialize import (
    FormatError,
    braid_from_dict,
    braid_to_dict,
    envelope,
    open_envelope,
    tagged_braid_from_dict,
    tagged_braid_to_dict,
)


def _field(payload: Any, key: str) -> Any:
    if not isinstance(payload, dict) or key not in payload:
        raise FormatError(f"payload field {key!r} missing")
    return payload[key]


def _int_param(params: dict, key: str) -> int:
    value = params.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise FormatError(f"envelope param {key!r} must be an integer")
    return value


# ---------------------------------------------------------------------------
# Scheme 1
# ---------------------------------------------------------------------------

def scheme1_manager_to_envelope(m: rootsig.ManagerState) -> dict:
    return envelope(
        "scheme1-manager",
        {"n": m.n, "l": m.l, "p": m.p},
        {
            "pool": [braid_to_dict(e) for e in m.pool],
            "owner": {str(i): member for i, member in m.owner.items()},
            "opened": sorted(m.opened),
        },
    )


def scheme1_manager_from_envelope(obj: Any) -> rootsig.ManagerState:
    _, params, payload = open_envelope(obj, "scheme1-manager")
    pool = tuple(braid_from_dict(e) for e in _field(payload, "pool"))
    owner = {int(k): str(v) for k, v in _field(payload, "owner").items()}
    return rootsig.ManagerState(
        n=_int_param(params, "n"),
        l=_int_param(params, "l"),
        p=_int_param(params, "p"),
        pool=pool,
        owner=owner,
        opened=set(int(i) for i in _field(payload, "opened")),
    )


def scheme1_directory_to_envelope(d: rootsig.Directory) -> dict:
    return envelope(
        "scheme1-directory",
        {"n": d.n, "l": d.l, "p": d.p},
        {"entries": [braid_to_dict(e) for e in d.entries]},
    )


def scheme1_directory_from_envelope(obj: Any) -> rootsig.Directory:
    _, params, payload = open_envelope(obj, "scheme1-directory")
    return rootsig.Directory(
        n=_int_param(params, "n"),
        l=_int_param(params, "l"),
        p=_int_param(params, "p"),
        entries=tuple(braid_from_dict(e) for e in _field(payload, "entries")),
    )


def scheme1_member_to_envelope(m: rootsig.MemberKeys) -> dict:
    return envelope(
        "scheme1-member-keys",
        {"n": m.n, "l": m.l, "p": m.p},
        {
            "member_id": m.member_id,
            "keys": [braid_to_dict(k) for k in m.keys],
            "used": sorted(m.used),
        },
    )


def scheme1_member_from_envelope(obj: Any) -> rootsig.MemberKeys:
    _, params, payload = open_envelope(obj, "scheme1-member-keys")
    return rootsig.MemberKeys(
        member_id=str(_field(payload, "member_id")),
        n=_int_param(params, "n"),
        l=_int_param(params, "l"),
        p=_int_param(params, "p"),
        keys=tuple(braid_from_dict(k) for k in _field(payload, "keys")),
        used=set(int(i) for i in _field(payload, "used")),
    )


def scheme1_signature_to_envelope(s: rootsig.Signature, n: int, l: int, p: int) -> dict:
    return envelope("scheme1-signature", {"n": n, "l": l, "p": p}, {"S": braid_to_dict(s.value)})


def scheme1_signature_from_envelope(obj: Any) -> tuple[rootsig.Signature, dict]:
    _, params, payload = open_envelope(obj, "scheme1-signature")
    return rootsig.Signature(braid_from_dict(_field(payload, "S"))), params


# ---------------------------------------------------------------------------
# Scheme 2
# ---------------------------------------------------------------------------

def scheme2_group_key_to_envelope(g: undeniable.GroupKey) -> dict:
    return envelope(
        "scheme2-group-key",
        {"n": g.n, "l": g.l},
        {"alpha": braid_to_dict(g.alpha), "beta": braid_to_dict(g.beta)},
    )


def scheme2_group_key_from_envelope(obj: Any) -> undeniable.GroupKey:
    _, params, payload = open_envelope(obj, "scheme2-group-key")
    return undeniable.GroupKey(
        n=_int_param(params, "n"),
        l=_int_param(params, "l"),
        alpha=braid_from_dict(_field(payload, "alpha")),
        beta=braid_from_dict(_field(payload, "beta")),
    )


def scheme2_group_public_to_envelope(g: undeniable.GroupKey) -> dict:
    return envelope("scheme2-group-public", {"n": g.n, "l": g.l}, {"beta": braid_to_dict(g.beta)})


def scheme2_group_public_from_envelope(obj: Any) -> tuple[Braid, int, int]:
    """Returns (beta, n, l)."""
    _, params, payload = open_envelope(obj, "scheme2-group-public")
    return (
        braid_from_dict(_field(payload, "beta")),
        _int_param(params, "n"),
        _int_param(params, "l"),
    )


def scheme2_member_key_to_envelope(m: undeniable.MemberKey, n: int, l: int) -> dict:
    return envelope(
        "scheme2-member-key",
        {"n": n, "l": l},
        {
            "member_id": m.member_id,
            "u": tagged_braid_to_dict(m.u),
            "v": tagged_braid_to_dict(m.v),
            "public": braid_to_dict(m.public),
        },
    )


def scheme2_member_key_from_envelope(obj: Any) -> undeniable.MemberKey:
    _, _, payload = open_envelope(obj, "scheme2-member-key")
    return undeniable.MemberKey(
        member_id=str(_field(payload, "member_id")),
        u=tagged_braid_from_dict(_field(payload, "u")),
        v=tagged_braid_from_dict(_field(payload, "v")),
        public=braid_from_dict(_field(payload, "public")),
    )


def scheme2_member_public_to_envelope(m: undeniable.MemberKey, n: int, l: int) -> dict:
    return envelope(
        "scheme2-member-public",
        {"n": n, "l": l},
        {"member_id": m.member_id, "public": braid_to_dict(m.public)},
    )


def scheme2_member_public_from_envelope(obj: Any) -> tuple[str, Braid]:
    _, _, payload = open_envelope(obj, "scheme2-member-public")
    return str(_field(payload, "member_id")), braid_from_dict(_field(payload, "public"))


def scheme2_signature_to_envelope(s: undeniable.Signature, n: int, l: int) -> dict:
    return envelope("scheme2-signature", {"n": n, "l": l}, {"S": braid_to_dict(s.value)})


def scheme2_signature_from_envelope(obj: Any) -> tuple[undeniable.Signature, dict]:
    _, params, payload = open_envelope(obj, "scheme2-signature")
    return undeniable.Signature(braid_from_dict(_field(payload, "S"))), params


# ---------------------------------------------------------------------------
# Scheme 3
# ---------------------------------------------------------------------------

def scheme3_manager_to_envelope(m: managed.ManagerState) -> dict:
    return envelope(
        "scheme3-manager",
        {"n": m.n, "l": m.l},
        {
            "s": tagged_braid_to_dict(m.s),
            "k1": tagged_braid_to_dict(m.k1),
            "k2": tagged_braid_to_dict(m.k2),
            "alpha": braid_to_dict(m.alpha),
            "members": {mid: braid_to_dict(v) for mid, v in m.members.items()},
        },
    )


def scheme3_manager_from_envelope(obj: Any) -> managed.ManagerState:
    _, params, payload = open_envelope(obj, "scheme3-manager")
    return managed.ManagerState(
        n=_int_param(params, "n"),
        l=_int_param(params, "l"),
        s=tagged_braid_from_dict(_field(payload, "s")),
        k1=tagged_braid_from_dict(_field(payload, "k1")),
        k2=tagged_braid_from_dict(_field(payload, "k2")),
        alpha=braid_from_dict(_field(payload, "alpha")),
        members={str(mid): braid_from_dict(v) for mid, v in _field(payload, "members").items()},
    )


def scheme3_public_to_envelope(p: managed.GroupPublic) -> dict:
    return envelope(
        "scheme3-group-public",
        {"n": p.n, "l": p.l},
        {"x": braid_to_dict(p.x), "alpha": braid_to_dict(p.alpha)},
    )


def scheme3_public_from_envelope(obj: Any) -> managed.GroupPublic:
    _, params, payload = open_envelope(obj, "scheme3-group-public")
    return managed.GroupPublic(
        n=_int_param(params, "n"),
        l=_int_param(params, "l"),
        x=braid_from_dict(_field(payload, "x")),
        alpha=braid_from_dict(_field(payload, "alpha")),
    )


def scheme3_member_to_envelope(m: managed.MemberState) -> dict:
    payload = {
        "member_id": m.member_id,
        "s": braid_to_dict(m.s),
        "alpha": braid_to_dict(m.alpha),
        "u": braid_to_dict(m.u),
        "a": tagged_braid_to_dict(m.a),
        "v": braid_to_dict(m.v),
        "w": braid_to_dict(m.w),
        "beta1": braid_to_dict(m.beta1) if m.beta1 is not None else None,
        "beta2": braid_to_dict(m.beta2) if m.beta2 is not None else None,
    }
    return envelope("scheme3-member", {"n": m.n, "l": m.l}, payload)


def scheme3_member_from_envelope(obj: Any) -> managed.MemberState:
    _, params, payload = open_envelope(obj, "scheme3-member")
    beta1 = _field(payload, "beta1")
    beta2 = _field(payload, "beta2")
    return managed.MemberState(
        member_id=str(_field(payload, "member_id")),
        n=_int_param(params, "n"),
        l=_int_param(params, "l"),
        s=braid_from_dict(_field(payload, "s")),
        alpha=braid_from_dict(_field(payload, "alpha")),
        u=braid_from_dict(_field(payload, "u")),
        a=tagged_braid_from_dict(_field(payload, "a")),
        v=braid_from_dict(_field(payload, "v")),
        w=braid_from_dict(_field(payload, "w")),
        beta1=braid_from_dict(beta1) if beta1 is not None else None,
        beta2=braid_from_dict(beta2) if beta2 is not None else None,
    )


def scheme3_signature_to_envelope(s: managed.Signature, n: int, l: int) -> dict:
    return envelope(
        "scheme3-signature",
        {"n": n, "l": l},
        {"S1": braid_to_dict(s.s1), "S2": braid_to_dict(s.s2)},
    )


def scheme3_signature_from_envelope(obj: Any) -> tuple[managed.Signature, dict]:
    _, params, payload = open_envelope(obj, "scheme3-signature")
    return (
        managed.Signature(
            s1=braid_from_dict(_field(payload, "S1")), s2=braid_from_dict(_field(payload, "S2"))
        ),
        params,
    )


# ---------------------------------------------------------------------------
# Scheme 3 join messages (one file per protocol step)
# ---------------------------------------------------------------------------

def join_credentials_to_envelope(s: Braid, alpha: Braid, n: int, l: int) -> dict:
    return envelope(
        "scheme3-join-credentials",
        {"n": n, "l": l},
        {"s": braid_to_dict(s), "alpha": braid_to_dict(alpha)},
    )


def join_credentials_from_envelope(obj: Any) -> tuple[Braid, Braid, int, int]:
    """Returns (s, alpha, n, l)."""
    _, params, payload = open_envelope(obj, "scheme3-join-credentials")
    return (
        braid_from_dict(_field(payload, "s")),
        braid_from_dict(_field(payload, "alpha")),
        _int_param(params, "n"),
        _int_param(params, "l"),
    )


def join_request_to_envelope(member_id: str, v: Braid, w: Braid, n: int, l: int) -> dict:
    return envelope(
        "scheme3-join-request",
        {"n": n, "l": l},
        {"member_id": member_id, "v": braid_to_dict(v), "w": braid_to_dict(w)},
    )


def join_request_from_envelope(obj: Any) -> tuple[str, Braid, Braid]:
    _, _, payload = open_envelope(obj, "scheme3-join-request")
    return (
        str(_field(payload, "member_id")),
        braid_from_dict(_field(payload, "v")),
        braid_from_dict(_field(payload, "w")),
    )


def join_issue_to_envelope(z1: Braid, z2: Braid, n: int, l: int) -> dict:
    return envelope(
        "scheme3-join-issue",
        {"n": n, "l": l},
        {"z1": braid_to_dict(z1), "z2": braid_to_dict(z2)},
    )


def join_issue_from_envelope(obj: Any) -> tuple[Braid, Braid]:
    _, _, payload = open_envelope(obj, "scheme3-join-issue")
    return braid_from_dict(_field(payload, "z1")), braid_from_dict(_field(payload, "z2"))


# ---------------------------------------------------------------------------
# Protocol messages and transcripts
# ---------------------------------------------------------------------------

def message_to_envelope(msg: Message, n: int, l: int) -> dict:
    return envelope("protocol-message", {"n": n, "l": l}, msg.to_dict())


def message_from_envelope(obj: Any) -> Message:
    _, _, payload = open_envelope(obj, "protocol-message")
    return Message.from_dict(payload)


def transcript_to_envelope(t: Transcript, n: int, l: int) -> dict:
    return envelope("transcript", {"n": n, "l": l}, t.to_dict())


def transcript_from_envelope(obj: Any) -> tuple[Transcript, dict]:
    _, params, payload = open_envelope(obj, "transcript")
    return Transcript.from_dict(payload), params
