"""Command-line entry point.

One JSON document per invocation on stdout, diagnostics on stderr.  Exit
codes: 0 success/accept, 1 reject/false, 2 inconclusive, 64 usage error,
65 data-format error.  ``--n``/``--l``/``--seed`` defaults may come from a
key = value config file (./braidsig.toml unless --config points elsewhere);
explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import files
from .braid import Braid, normalize
from .conjugacy import DEFAULT_BUDGET, SummitBudget, Verdict, is_conjugate
from .hashing import DEFAULT_LABEL, HashParams, hash_to_braid
from .rng import XofStream
from .sample import Block, random_block_braid, random_braid, random_commuting_rb_pair
from .schemes import managed, rootsig, undeniable
from .schemes.protocol import ProtocolError, TranscriptError
from .serialize import (
    FormatError,
    braid_from_dict,
    braid_to_dict,
    read_json,
    tagged_braid_to_dict,
    word_from_dict,
    write_json,
)

EX_OK = 0
EX_REJECT = 1
EX_INCONCLUSIVE = 2
EX_USAGE = 64
EX_DATA = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: A003 - argparse API
        raise UsageError(message)


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _load_config(args) -> dict:
    path = Path(args.config) if args.config else Path("braidsig.toml")
    if not path.is_file():
        if args.config:
            raise UsageError(f"config file {path} not found")
        return {}
    values: dict[str, int] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        try:
            values[key.strip()] = int(value.strip())
        except ValueError:
            raise FormatError(f"{path}:{lineno}: value for {key.strip()!r} must be an integer")
    return values


def _setting(args, config: dict, name: str) -> int:
    value = getattr(args, name, None)
    if value is None:
        value = config.get(name)
    if value is None:
        raise UsageError(f"--{name} is required (flag or config file)")
    return value


def _read_message_bytes(spec: str) -> bytes:
    if spec == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(spec).read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read message file {spec}: {exc}") from None


def _budget(args) -> SummitBudget:
    return SummitBudget(
        max_set_size=args.max_set_size if args.max_set_size else DEFAULT_BUDGET.max_set_size,
        max_iterations=args.max_iterations
        if args.max_iterations
        else DEFAULT_BUDGET.max_iterations,
    )


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-set-size", type=int, default=None)
    p.add_argument("--max-iterations", type=int, default=None)


# ---------------------------------------------------------------------------
# braid subcommands
# ---------------------------------------------------------------------------

def _load_braid_or_word(path: str) -> Braid:
    obj = read_json(path)
    if isinstance(obj, dict) and "word" in obj:
        return normalize(word_from_dict(obj))
    return braid_from_dict(obj)


def cmd_braid_normalize(args, config) -> int:
    _emit(braid_to_dict(_load_braid_or_word(args.infile)))
    return EX_OK


def cmd_braid_mul(args, config) -> int:
    _emit(braid_to_dict(_load_braid_or_word(args.left) * _load_braid_or_word(args.right)))
    return EX_OK


def cmd_braid_inv(args, config) -> int:
    _emit(braid_to_dict(_load_braid_or_word(args.infile).inverse()))
    return EX_OK


def cmd_braid_pow(args, config) -> int:
    _emit(braid_to_dict(_load_braid_or_word(args.infile) ** args.exp))
    return EX_OK


def cmd_braid_eq(args, config) -> int:
    x = _load_braid_or_word(args.left)
    y = _load_braid_or_word(args.right)
    if x.n != y.n:
        raise FormatError(f"strand counts differ: {x.n} != {y.n}")
    equal = x == y
    _emit({"equal": equal})
    return EX_OK if equal else EX_REJECT


# ---------------------------------------------------------------------------
# sample / hash / conjugate
# ---------------------------------------------------------------------------

def cmd_sample(args, config) -> int:
    n = _setting(args, config, "n")
    l = _setting(args, config, "l")
    seed = _setting(args, config, "seed")
    stream = XofStream(seed)
    if args.commuting_pair:
        a, b = random_commuting_rb_pair(n, l, stream)
        _emit({"a": tagged_braid_to_dict(a), "b": tagged_braid_to_dict(b)})
    elif args.block in ("left", "right"):
        tagged = random_block_braid(n, l, Block(args.block), stream)
        _emit(tagged_braid_to_dict(tagged))
    else:
        _emit(braid_to_dict(random_braid(n, l, stream)))
    return EX_OK


def cmd_hash(args, config) -> int:
    n = _setting(args, config, "n")
    l = _setting(args, config, "l")
    message = _read_message_bytes(args.infile)
    label = args.label.encode("utf-8") if args.label else DEFAULT_LABEL
    _emit(braid_to_dict(hash_to_braid(message, HashParams(n, l, label))))
    return EX_OK


def cmd_conjugate(args, config) -> int:
    x = _load_braid_or_word(args.x)
    y = _load_braid_or_word(args.y)
    if x.n != y.n:
        raise FormatError(f"strand counts differ: {x.n} != {y.n}")
    verdict = is_conjugate(x, y, _budget(args))
    _emit(
        {
            "verdict": verdict.kind.value,
            "witness": braid_to_dict(verdict.witness) if verdict.witness is not None else None,
            "reason": verdict.reason,
        }
    )
    if verdict.kind is Verdict.CONJUGATE:
        return EX_OK
    if verdict.kind is Verdict.NOT_CONJUGATE:
        return EX_REJECT
    return EX_INCONCLUSIVE


# ---------------------------------------------------------------------------
# scheme 1
# ---------------------------------------------------------------------------

def cmd_scheme1_setup(args, config) -> int:
    n = _setting(args, config, "n")
    l = _setting(args, config, "l")
    seed = _setting(args, config, "seed")
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    member_ids = [f"member{i}" for i in range(args.members)]
    manager, directory, members = rootsig.setup(
        n, l, args.p, member_ids, args.keys_per_member, XofStream(seed)
    )
    written = []
    write_json(out / "manager.json", files.scheme1_manager_to_envelope(manager))
    written.append(str(out / "manager.json"))
    write_json(out / "directory.json", files.scheme1_directory_to_envelope(directory))
    written.append(str(out / "directory.json"))
    for member_id, keys in members.items():
        path = out / f"{member_id}.json"
        write_json(path, files.scheme1_member_to_envelope(keys))
        written.append(str(path))
    _emit({"files": written, "members": member_ids})
    return EX_OK


def cmd_scheme1_sign(args, config) -> int:
    member = files.scheme1_member_from_envelope(read_json(args.member_keys))
    message = _read_message_bytes(args.message)
    sig = member.sign(args.key_index, message)
    write_json(args.member_keys, files.scheme1_member_to_envelope(member))
    doc = files.scheme1_signature_to_envelope(sig, member.n, member.l, member.p)
    if args.out:
        write_json(args.out, doc)
    _emit(doc)
    return EX_OK


def cmd_scheme1_verify(args, config) -> int:
    sig, _ = files.scheme1_signature_from_envelope(read_json(args.sig))
    directory = files.scheme1_directory_from_envelope(read_json(args.directory))
    ok = rootsig.verify(sig, _read_message_bytes(args.message), directory)
    _emit({"valid": ok})
    return EX_OK if ok else EX_REJECT


def cmd_scheme1_open(args, config) -> int:
    manager = files.scheme1_manager_from_envelope(read_json(args.manager))
    sig, _ = files.scheme1_signature_from_envelope(read_json(args.sig))
    result = rootsig.open_signature(manager, sig, _read_message_bytes(args.message))
    write_json(args.manager, files.scheme1_manager_to_envelope(manager))
    if result is None:
        _emit({"member": None})
        return EX_REJECT
    _emit({"member": result.member_id, "key_index": result.key_index, "reused": result.reused})
    return EX_OK


# ---------------------------------------------------------------------------
# scheme 2
# ---------------------------------------------------------------------------

def cmd_scheme2_keygen(args, config) -> int:
    n = _setting(args, config, "n")
    l = _setting(args, config, "l")
    seed = _setting(args, config, "seed")
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    member_ids = [f"member{i}" for i in range(args.members)]
    group, members = undeniable.keygen(n, l, member_ids, XofStream(seed))
    written = []
    write_json(out / "group-key.json", files.scheme2_group_key_to_envelope(group))
    written.append(str(out / "group-key.json"))
    write_json(out / "group-public.json", files.scheme2_group_public_to_envelope(group))
    written.append(str(out / "group-public.json"))
    for member in members:
        path = out / f"{member.member_id}.json"
        write_json(path, files.scheme2_member_key_to_envelope(member, n, l))
        written.append(str(path))
        path = out / f"{member.member_id}-public.json"
        write_json(path, files.scheme2_member_public_to_envelope(member, n, l))
        written.append(str(path))
    _emit({"files": written, "members": member_ids})
    return EX_OK


def cmd_scheme2_sign(args, config) -> int:
    group = files.scheme2_group_key_from_envelope(read_json(args.group_key))
    member = files.scheme2_member_key_from_envelope(read_json(args.member_key))
    sig = undeniable.sign(group, member, _read_message_bytes(args.message))
    doc = files.scheme2_signature_to_envelope(sig, group.n, group.l)
    if args.out:
        write_json(args.out, doc)
    _emit(doc)
    return EX_OK


def cmd_scheme2_check_group(args, config) -> int:
    beta, _, _ = files.scheme2_group_public_from_envelope(read_json(args.group_public))
    sig, _ = files.scheme2_signature_from_envelope(read_json(args.sig))
    verdict = undeniable.check_group(sig, beta, _budget(args))
    _emit({"verdict": verdict.kind.value, "reason": verdict.reason})
    if verdict.kind is Verdict.CONJUGATE:
        return EX_OK
    if verdict.kind is Verdict.NOT_CONJUGATE:
        return EX_REJECT
    return EX_INCONCLUSIVE


def _confirm_self_play(args) -> int:
    beta, n, l = files.scheme2_group_public_from_envelope(read_json(args.group_public))
    member = files.scheme2_member_key_from_envelope(read_json(args.member_key))
    sig, _ = files.scheme2_signature_from_envelope(read_json(args.sig))
    transcript = undeniable.run_confirmation(
        args.session,
        beta,
        member,
        sig,
        _read_message_bytes(args.message),
        l,
        XofStream(args.verifier_seed),
        XofStream(args.prover_seed),
    )
    doc = files.transcript_to_envelope(transcript, n, l)
    if args.transcript:
        write_json(args.transcript, doc)
    _emit(doc)
    return EX_OK if transcript.verdict == "accept" else EX_REJECT


def _confirm_role(args) -> int:
    session_dir = Path(args.session_dir)
    session_dir.mkdir(parents=True, exist_ok=True)
    f_challenge = session_dir / "01-challenge.json"
    f_response = session_dir / "02-response.json"
    f_reveal = session_dir / "03-reveal.json"
    f_final = session_dir / "04-final.json"
    f_verdict = session_dir / "05-verdict.json"
    sig, params = files.scheme2_signature_from_envelope(read_json(args.sig))
    n, l = params["n"], params["l"]

    if args.role == "verifier":
        beta, _, _ = files.scheme2_group_public_from_envelope(read_json(args.group_public))
        _, member_public = files.scheme2_member_public_from_envelope(read_json(args.member_public))
        state_file = session_dir / "verifier-state.json"
        y = hash_to_braid(_read_message_bytes(args.message), HashParams(n, l))
        if not f_challenge.exists():
            if args.seed is None:
                raise UsageError("--seed is required for the verifier's first step")
            a = random_block_braid(n, l, Block.RIGHT, XofStream(args.seed)).braid
            q = undeniable.confirm_challenge_value(a, sig, member_public)
            write_json(f_challenge, files.message_to_envelope(
                undeniable.Message(args.session, "confirm-challenge", {"Q": braid_to_dict(q)}), n, l))
            write_json(state_file, {"a": braid_to_dict(a)})
            _emit({"step": "confirm-challenge", "wrote": str(f_challenge)})
            return EX_OK
        if f_response.exists() and not f_reveal.exists():
            a = braid_from_dict(read_json(state_file)["a"])
            write_json(f_reveal, files.message_to_envelope(
                undeniable.Message(args.session, "confirm-reveal", {"a": braid_to_dict(a)}), n, l))
            _emit({"step": "confirm-reveal", "wrote": str(f_reveal)})
            return EX_OK
        if f_final.exists() and not f_verdict.exists():
            a = braid_from_dict(read_json(state_file)["a"])
            response = files.message_from_envelope(read_json(f_response))
            final = files.message_from_envelope(read_json(f_final))
            if final.step == "confirm-abort":
                verdict = "undetermined"
            else:
                r = braid_from_dict(response.payload["R"])
                b = braid_from_dict(final.payload["b"])
                c = braid_from_dict(final.payload["c"])
                expected = undeniable.confirm_expected_response(b, c, a, y, beta)
                verdict = "accept" if r == expected else "undetermined"
            write_json(f_verdict, {"verdict": verdict})
            _emit({"step": "verdict", "verdict": verdict})
            return EX_OK if verdict == "accept" else EX_REJECT
        _emit({"step": "waiting"})
        return EX_OK

    member = files.scheme2_member_key_from_envelope(read_json(args.member_key))
    state_file = session_dir / "prover-state.json"
    if f_challenge.exists() and not f_response.exists():
        if args.seed is None:
            raise UsageError("--seed is required for the prover's first step")
        challenge = files.message_from_envelope(read_json(f_challenge))
        q = braid_from_dict(challenge.payload["Q"])
        stream = XofStream(args.seed)
        b = random_braid(n, l, stream)
        c = random_braid(n, l, stream)
        r = undeniable.confirm_response_value(b, c, member, q)
        write_json(f_response, files.message_to_envelope(
            undeniable.Message(args.session, "confirm-response", {"R": braid_to_dict(r)}), n, l))
        write_json(state_file, {"q": braid_to_dict(q), "b": braid_to_dict(b), "c": braid_to_dict(c)})
        _emit({"step": "confirm-response", "wrote": str(f_response)})
        return EX_OK
    if f_reveal.exists() and not f_final.exists():
        state = read_json(state_file)
        reveal = files.message_from_envelope(read_json(f_reveal))
        a = braid_from_dict(reveal.payload["a"])
        q = braid_from_dict(state["q"])
        if undeniable.confirm_challenge_value(a, sig, member.public) != q:
            msg = undeniable.Message(
                args.session, "confirm-abort",
                {"reason": "challenge does not match the revealed conjugator"})
        else:
            msg = undeniable.Message(
                args.session, "confirm-open", {"b": state["b"], "c": state["c"]})
        write_json(f_final, files.message_to_envelope(msg, n, l))
        _emit({"step": msg.step, "wrote": str(f_final)})
        return EX_OK
    _emit({"step": "waiting"})
    return EX_OK


def cmd_scheme2_confirm(args, config) -> int:
    if args.self_play:
        return _confirm_self_play(args)
    if not args.role:
        raise UsageError("choose --self-play or --role prover|verifier")
    if not args.session_dir:
        raise UsageError("--session-dir is required in role mode")
    return _confirm_role(args)


def _disavow_self_play(args) -> int:
    beta, n, l = files.scheme2_group_public_from_envelope(read_json(args.group_public))
    member = files.scheme2_member_key_from_envelope(read_json(args.member_key))
    sig, _ = files.scheme2_signature_from_envelope(read_json(args.sig))
    transcript = undeniable.run_disavowal(
        args.session, beta, member, sig, l, XofStream(args.verifier_seed),
        printed_check=args.printed_check,
    )
    doc = files.transcript_to_envelope(transcript, n, l)
    if args.transcript:
        write_json(args.transcript, doc)
    _emit(doc)
    return EX_OK if transcript.verdict == "invalid-signature" else EX_REJECT


def _disavow_role(args) -> int:
    session_dir = Path(args.session_dir)
    session_dir.mkdir(parents=True, exist_ok=True)
    f_challenge = session_dir / "01-challenge.json"
    f_response = session_dir / "02-response.json"
    f_verdict = session_dir / "03-verdict.json"
    sig, params = files.scheme2_signature_from_envelope(read_json(args.sig))
    n, l = params["n"], params["l"]

    if args.role == "verifier":
        beta, _, _ = files.scheme2_group_public_from_envelope(read_json(args.group_public))
        _, member_public = files.scheme2_member_public_from_envelope(read_json(args.member_public))
        state_file = session_dir / "verifier-state.json"
        if not f_challenge.exists():
            if args.seed is None:
                raise UsageError("--seed is required for the verifier's first step")
            a_t, b_t = random_commuting_rb_pair(n, l, XofStream(args.seed))
            a, b = a_t.braid, b_t.braid
            q1 = undeniable.confirm_challenge_value(a, sig, member_public)
            q2 = undeniable.confirm_challenge_value(b, sig, member_public)
            write_json(f_challenge, files.message_to_envelope(
                undeniable.Message(args.session, "disavow-challenge",
                                   {"Q1": braid_to_dict(q1), "Q2": braid_to_dict(q2)}), n, l))
            write_json(state_file, {"a": braid_to_dict(a), "b": braid_to_dict(b)})
            _emit({"step": "disavow-challenge", "wrote": str(f_challenge)})
            return EX_OK
        if f_response.exists() and not f_verdict.exists():
            state = read_json(state_file)
            a = braid_from_dict(state["a"])
            b = braid_from_dict(state["b"])
            response = files.message_from_envelope(read_json(f_response))
            r1 = braid_from_dict(response.payload["R1"])
            r2 = braid_from_dict(response.payload["R2"])
            same = undeniable.disavow_check(r1, r2, a, b, beta, args.printed_check)
            verdict = "invalid-signature" if same else "improper-response"
            write_json(f_verdict, {"verdict": verdict})
            _emit({"step": "verdict", "verdict": verdict})
            return EX_OK if verdict == "invalid-signature" else EX_REJECT
        _emit({"step": "waiting"})
        return EX_OK

    member = files.scheme2_member_key_from_envelope(read_json(args.member_key))
    if f_challenge.exists() and not f_response.exists():
        challenge = files.message_from_envelope(read_json(f_challenge))
        q1 = braid_from_dict(challenge.payload["Q1"])
        q2 = braid_from_dict(challenge.payload["Q2"])
        r1, r2 = undeniable.disavow_response_values(member, q1, q2)
        write_json(f_response, files.message_to_envelope(
            undeniable.Message(args.session, "disavow-response",
                               {"R1": braid_to_dict(r1), "R2": braid_to_dict(r2)}), n, l))
        _emit({"step": "disavow-response", "wrote": str(f_response)})
        return EX_OK
    _emit({"step": "waiting"})
    return EX_OK


def cmd_scheme2_disavow(args, config) -> int:
    if args.self_play:
        return _disavow_self_play(args)
    if not args.role:
        raise UsageError("choose --self-play or --role prover|verifier")
    if not args.session_dir:
        raise UsageError("--session-dir is required in role mode")
    return _disavow_role(args)


# ---------------------------------------------------------------------------
# scheme 3
# ---------------------------------------------------------------------------

def cmd_scheme3_setup(args, config) -> int:
    n = _setting(args, config, "n")
    l = _setting(args, config, "l")
    seed = _setting(args, config, "seed")
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manager, public = managed.setup(n, l, XofStream(seed))
    write_json(out / "manager.json", files.scheme3_manager_to_envelope(manager))
    write_json(out / "group-public.json", files.scheme3_public_to_envelope(public))
    _emit({"files": [str(out / "manager.json"), str(out / "group-public.json")]})
    return EX_OK


def cmd_scheme3_join(args, config) -> int:
    session_dir = Path(args.session_dir)
    session_dir.mkdir(parents=True, exist_ok=True)
    f_credentials = session_dir / "01-credentials.json"
    f_request = session_dir / "02-request.json"
    f_issue = session_dir / "03-issue.json"

    if args.role == "manager":
        manager = files.scheme3_manager_from_envelope(read_json(args.manager))
        if not f_credentials.exists():
            s, alpha = managed.join_start(manager)
            write_json(f_credentials, files.join_credentials_to_envelope(s, alpha, manager.n, manager.l))
            _emit({"step": "credentials", "wrote": str(f_credentials)})
            return EX_OK
        if f_request.exists() and not f_issue.exists():
            member_id, v, w = files.join_request_from_envelope(read_json(f_request))
            z1, z2 = managed.join_issue(manager, member_id, v, w)
            write_json(args.manager, files.scheme3_manager_to_envelope(manager))
            write_json(f_issue, files.join_issue_to_envelope(z1, z2, manager.n, manager.l))
            _emit({"step": "issue", "wrote": str(f_issue), "member": member_id})
            return EX_OK
        _emit({"step": "waiting"})
        return EX_OK

    # member role
    if not args.member_out:
        raise UsageError("--member-out is required for the member role")
    member_path = Path(args.member_out)
    if f_credentials.exists() and not f_request.exists():
        if args.seed is None:
            raise UsageError("--seed is required for the member's first step")
        if not args.member_id:
            raise UsageError("--member-id is required for the member's first step")
        s, alpha, n, l = files.join_credentials_from_envelope(read_json(f_credentials))
        member, v, w = managed.join_request(args.member_id, n, l, s, alpha, XofStream(args.seed))
        write_json(f_request, files.join_request_to_envelope(member.member_id, v, w, n, l))
        write_json(member_path, files.scheme3_member_to_envelope(member))
        _emit({"step": "request", "wrote": str(f_request)})
        return EX_OK
    if f_issue.exists():
        member = files.scheme3_member_from_envelope(read_json(member_path))
        if member.joined:
            _emit({"step": "already-joined"})
            return EX_OK
        z1, z2 = files.join_issue_from_envelope(read_json(f_issue))
        managed.join_finalize(member, z1, z2)
        write_json(member_path, files.scheme3_member_to_envelope(member))
        _emit({"step": "finalized", "wrote": str(member_path)})
        return EX_OK
    _emit({"step": "waiting"})
    return EX_OK


def cmd_scheme3_sign(args, config) -> int:
    member = files.scheme3_member_from_envelope(read_json(args.member))
    sig = managed.sign(member, _read_message_bytes(args.message))
    doc = files.scheme3_signature_to_envelope(sig, member.n, member.l)
    if args.out:
        write_json(args.out, doc)
    _emit(doc)
    return EX_OK


def cmd_scheme3_verify(args, config) -> int:
    public = files.scheme3_public_from_envelope(read_json(args.group_public))
    sig, _ = files.scheme3_signature_from_envelope(read_json(args.sig))
    result = managed.verify(sig, _read_message_bytes(args.message), public, _budget(args))
    _emit({"result": result})
    return {"accept": EX_OK, "reject": EX_REJECT}.get(result, EX_INCONCLUSIVE)


def cmd_scheme3_open(args, config) -> int:
    manager = files.scheme3_manager_from_envelope(read_json(args.manager))
    sig, _ = files.scheme3_signature_from_envelope(read_json(args.sig))
    result = managed.open_signature(manager, sig, _read_message_bytes(args.message), _budget(args))
    if len(result.matches) > 1:
        sys.stderr.write(f"warning: multiple members match: {', '.join(result.matches)}\n")
    _emit(
        {
            "member": result.member_id,
            "matches": list(result.matches),
            "inconclusive": list(result.inconclusive),
        }
    )
    if result.member_id is not None:
        return EX_OK
    return EX_INCONCLUSIVE if result.inconclusive else EX_REJECT


def cmd_bench(args, config) -> int:
    from . import bench

    report = bench.run(
        out_dir=Path(args.out_dir),
        seed=args.seed if args.seed is not None else 0,
        mul_samples=args.mul_samples,
        hash_samples=args.hash_samples,
    )
    _emit(report)
    return EX_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="braidsig", description=__doc__)
    parser.add_argument("--config", default=None, help="key = value defaults file")
    sub = parser.add_subparsers(dest="command")

    braid = sub.add_parser("braid", help="canonical-form arithmetic").add_subparsers(dest="op")
    p = braid.add_parser("normalize")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_braid_normalize)
    p = braid.add_parser("mul")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=cmd_braid_mul)
    p = braid.add_parser("inv")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_braid_inv)
    p = braid.add_parser("pow")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--exp", type=int, required=True)
    p.set_defaults(func=cmd_braid_pow)
    p = braid.add_parser("eq")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=cmd_braid_eq)

    p = sub.add_parser("sample", help="seeded random braids")
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--block", choices=["left", "right", "full"], default="full")
    p.add_argument("--commuting-pair", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("hash", help="hash bytes into a braid")
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--in", dest="infile", required=True, help="file path or - for stdin")
    p.add_argument("--label", default=None)
    p.set_defaults(func=cmd_hash)

    p = sub.add_parser("conjugate", help="decide conjugacy of two braids")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_conjugate)

    s1 = sub.add_parser("scheme1", help="trusted-directory signatures").add_subparsers(dest="op")
    p = s1.add_parser("setup")
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--members", type=int, required=True)
    p.add_argument("--keys-per-member", type=int, required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_scheme1_setup)
    p = s1.add_parser("sign")
    p.add_argument("--member-keys", required=True)
    p.add_argument("--key-index", type=int, required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scheme1_sign)
    p = s1.add_parser("verify")
    p.add_argument("--sig", required=True)
    p.add_argument("--directory", required=True)
    p.add_argument("--message", required=True)
    p.set_defaults(func=cmd_scheme1_verify)
    p = s1.add_parser("open")
    p.add_argument("--manager", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--message", required=True)
    p.set_defaults(func=cmd_scheme1_open)

    s2 = sub.add_parser("scheme2", help="undeniable group signatures").add_subparsers(dest="op")
    p = s2.add_parser("keygen")
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--members", type=int, required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_scheme2_keygen)
    p = s2.add_parser("sign")
    p.add_argument("--group-key", required=True)
    p.add_argument("--member-key", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scheme2_sign)
    p = s2.add_parser("check-group")
    p.add_argument("--sig", required=True)
    p.add_argument("--group-public", required=True)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_scheme2_check_group)
    for name, func in (("confirm", cmd_scheme2_confirm), ("disavow", cmd_scheme2_disavow)):
        p = s2.add_parser(name)
        p.add_argument("--self-play", action="store_true")
        p.add_argument("--role", choices=["prover", "verifier"], default=None)
        p.add_argument("--session", default="session-1")
        p.add_argument("--session-dir", default=None)
        p.add_argument("--group-public")
        p.add_argument("--member-key")
        p.add_argument("--member-public")
        p.add_argument("--sig", required=True)
        p.add_argument("--message")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--verifier-seed", type=int, default=1)
        p.add_argument("--prover-seed", type=int, default=2)
        p.add_argument("--transcript", default=None)
        if name == "disavow":
            p.add_argument("--printed-check", action="store_true")
        p.set_defaults(func=func)

    s3 = sub.add_parser("scheme3", help="managed group signatures").add_subparsers(dest="op")
    p = s3.add_parser("setup")
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_scheme3_setup)
    p = s3.add_parser("join")
    p.add_argument("--role", choices=["manager", "member"], required=True)
    p.add_argument("--session-dir", required=True)
    p.add_argument("--manager")
    p.add_argument("--member-id")
    p.add_argument("--member-out")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_scheme3_join)
    p = s3.add_parser("sign")
    p.add_argument("--member", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scheme3_sign)
    p = s3.add_parser("verify")
    p.add_argument("--sig", required=True)
    p.add_argument("--group-public", required=True)
    p.add_argument("--message", required=True)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_scheme3_verify)
    p = s3.add_parser("open")
    p.add_argument("--manager", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--message", required=True)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_scheme3_open)

    p = sub.add_parser("bench", help="timing report with delimited output and figures")
    p.add_argument("--out-dir", default="reports")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--mul-samples", type=int, default=200)
    p.add_argument("--hash-samples", type=int, default=200)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            raise UsageError("no command given (try braidsig --help)")
        config = _load_config(args)
        return args.func(args, config)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EX_USAGE
    except (FormatError, TranscriptError) as exc:
        sys.stderr.write(f"data error: {exc}\n")
        return EX_DATA
    except (ProtocolError, rootsig.KeyReuseError, managed.JoinError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EX_DATA


if __name__ == "__main__":
    sys.exit(main())
