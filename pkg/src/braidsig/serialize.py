"""JSON formats for braids, words, and versioned envelope files.

The canonical braid object is ``{"n": int, "inf": int, "factors": [...]}``
where each factor is a 1-based image array and the factor sequence must be
a left canonical form; the parser rejects anything else.  Words travel as
``{"n": int, "word": [signed ints]}`` with +i/-i encoding the i-th
generator and its inverse.

Everything the CLI writes is wrapped in a versioned envelope
``{"format": "braidsig/v1", "kind": ..., "params": ..., "payload": ...}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .braid import Braid, BraidWord, validate_normal_form
from .sample import Block, TaggedBraid

FORMAT = "braidsig/v1"


class FormatError(ValueError):
    """A file or object violates the serialization contract."""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise FormatError(message)


# ---------------------------------------------------------------------------
# Braids and words
# ---------------------------------------------------------------------------

def braid_to_dict(x: Braid) -> dict:
    return {
        "n": x.n,
        "inf": x.inf,
        "factors": [[v + 1 for v in f] for f in x.factors],
    }


def braid_from_dict(obj: Any) -> Braid:
    _require(isinstance(obj, dict), "braid must be a JSON object")
    _require(set(obj) == {"n", "inf", "factors"}, "braid object needs exactly n, inf, factors")
    n, inf, factors = obj["n"], obj["inf"], obj["factors"]
    _require(isinstance(n, int) and not isinstance(n, bool), "n must be an integer")
    _require(isinstance(inf, int) and not isinstance(inf, bool), "inf must be an integer")
    _require(isinstance(factors, list), "factors must be a list")
    converted = []
    for f in factors:
        _require(isinstance(f, list) and len(f) == n, f"factor must be a length-{n} image array")
        _require(all(isinstance(v, int) and not isinstance(v, bool) for v in f), "factor entries must be integers")
        _require(all(1 <= v <= n for v in f), "factor entries must be 1-based points")
        converted.append(tuple(v - 1 for v in f))
    braid = Braid(n, inf, tuple(converted))
    try:
        validate_normal_form(braid)
    except ValueError as exc:
        raise FormatError(f"not a left canonical form: {exc}") from None
    return braid


def word_to_dict(w: BraidWord) -> dict:
    return {"n": w.n, "word": list(w.letters)}


def word_from_dict(obj: Any) -> BraidWord:
    _require(isinstance(obj, dict), "word must be a JSON object")
    _require(set(obj) == {"n", "word"}, "word object needs exactly n, word")
    n, letters = obj["n"], obj["word"]
    _require(isinstance(n, int) and not isinstance(n, bool), "n must be an integer")
    _require(isinstance(letters, list), "word must be a list of signed integers")
    _require(all(isinstance(v, int) and not isinstance(v, bool) for v in letters), "letters must be integers")
    try:
        return BraidWord(n, tuple(letters))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def tagged_braid_to_dict(t: TaggedBraid) -> dict:
    return {
        "block": t.block.value,
        "braid": braid_to_dict(t.braid),
        "word": word_to_dict(t.word),
    }


def tagged_braid_from_dict(obj: Any) -> TaggedBraid:
    _require(isinstance(obj, dict), "tagged braid must be a JSON object")
    _require(set(obj) == {"block", "braid", "word"}, "tagged braid needs block, braid, word")
    try:
        block = Block(obj["block"])
    except ValueError:
        raise FormatError(f"unknown block tag {obj['block']!r}") from None
    tagged = TaggedBraid(braid_from_dict(obj["braid"]), block, word_from_dict(obj["word"]))
    from .braid import normalize

    _require(normalize(tagged.word) == tagged.braid, "word evidence does not normalize to the braid")
    return tagged


# ---------------------------------------------------------------------------
# Envelopes
# ---------------------------------------------------------------------------

def envelope(kind: str, params: dict, payload: Any) -> dict:
    return {"format": FORMAT, "kind": kind, "params": params, "payload": payload}


def open_envelope(obj: Any, kind: str | None = None) -> tuple[str, dict, Any]:
    _require(isinstance(obj, dict), "envelope must be a JSON object")
    _require(obj.get("format") == FORMAT, f"unsupported format {obj.get('format')!r}; expected {FORMAT}")
    _require(isinstance(obj.get("kind"), str), "envelope kind must be a string")
    _require(isinstance(obj.get("params"), dict), "envelope params must be an object")
    _require("payload" in obj, "envelope payload missing")
    if kind is not None:
        _require(obj["kind"] == kind, f"expected a {kind} file, found {obj['kind']!r}")
    return obj["kind"], obj["params"], obj["payload"]


# ---------------------------------------------------------------------------
# File I/O
# ---------------------------------------------------------------------------

def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from None


def read_braid(path: str | Path) -> Braid:
    return braid_from_dict(read_json(path))


def write_braid(path: str | Path, x: Braid) -> None:
    write_json(path, braid_to_dict(x))
