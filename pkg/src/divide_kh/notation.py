"""Text and JSON notation for divides.

Text format (UTF-8, LF line ends, ``#`` starts a comment)::

    name: trefoil        # optional
    left: e e
    word: +1
    right: m

``e`` is an endpoint (one strand), ``m`` a turn-back (two strands), and the
word lists signed crossing positions ``+k``/``-k`` with ``k >= 1``.
"""

from __future__ import annotations

import json
import re

from .divide import Crossing, Divide, DivideError, WallItem, validate

_CROSSING = re.compile(r"[+-][1-9][0-9]*\Z")
_SECTIONS = ("left", "word", "right")


class DivideSyntaxError(DivideError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokens(body: str, offset: int) -> list[tuple[str, int]]:
    return [(m.group(), offset + m.start() + 1) for m in re.finditer(r"\S+", body)]


def parse(text: str) -> Divide:
    """Parse the text notation; raises DivideSyntaxError or a validation error."""
    name = None
    found: dict[str, tuple[int, list[tuple[str, int]]]] = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].rstrip("\r")
        if not line.strip():
            continue
        key, sep, body = line.partition(":")
        col = len(key) - len(key.lstrip()) + 1
        key = key.strip().lower()
        if not sep:
            raise DivideSyntaxError("expected 'key: value'", lineno, col)
        if key == "name":
            if found or name is not None:
                raise DivideSyntaxError("'name:' must come first and only once", lineno, col)
            name = body.strip()
            continue
        if key not in _SECTIONS:
            raise DivideSyntaxError(f"unknown section {key!r}", lineno, col)
        expected = _SECTIONS[len(found)] if len(found) < 3 else None
        if key != expected:
            raise DivideSyntaxError(
                f"section {key!r} out of order (expected {expected!r})", lineno, col)
        found[key] = (lineno, _tokens(body, len(line) - len(body)))
    if len(found) < 3:
        missing = _SECTIONS[len(found)]
        raise DivideSyntaxError(f"missing section {missing!r}", len(text.split("\n")), 1)

    walls = {}
    for side in ("left", "right"):
        lineno, toks = found[side]
        items = []
        for tok, col in toks:
            if tok not in ("e", "m"):
                raise DivideSyntaxError(f"wall item must be 'e' or 'm', got {tok!r}", lineno, col)
            items.append(WallItem(tok))
        walls[side] = tuple(items)
    lineno, toks = found["word"]
    word = []
    for tok, col in toks:
        if not _CROSSING.match(tok):
            raise DivideSyntaxError(f"crossing must look like +k or -k, got {tok!r}", lineno, col)
        word.append(Crossing(int(tok[1:]), 1 if tok[0] == "+" else -1))
    divide = Divide(walls["left"], tuple(word), walls["right"], name or None)
    validate(divide)
    return divide


def emit_text(divide: Divide) -> str:
    lines = []
    if divide.name:
        lines.append(f"name: {divide.name}")
    lines.append(" ".join(["left:"] + [i.value for i in divide.left]))
    lines.append(" ".join(["word:"] + [str(c) for c in divide.word]))
    lines.append(" ".join(["right:"] + [i.value for i in divide.right]))
    return "\n".join(lines) + "\n"


def to_json_obj(divide: Divide) -> dict:
    obj: dict = {}
    if divide.name:
        obj["name"] = divide.name
    obj["strands"] = divide.strands
    obj["left"] = [i.value for i in divide.left]
    obj["word"] = [{"pos": c.position, "sign": "+" if c.sign > 0 else "-"} for c in divide.word]
    obj["right"] = [i.value for i in divide.right]
    return obj


def emit(divide: Divide, format: str = "text") -> str:
    validate(divide)
    if format == "text":
        return emit_text(divide)
    if format == "json":
        return json.dumps(to_json_obj(divide), indent=2) + "\n"
    raise ValueError(f"unknown format {format!r}")


def from_json_obj(obj: dict) -> Divide:
    try:
        left = tuple(WallItem(x) for x in obj["left"])
        right = tuple(WallItem(x) for x in obj["right"])
        word = tuple(Crossing(int(c["pos"]), {"+": 1, "-": -1}[c["sign"]]) for c in obj["word"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DivideError(f"malformed divide JSON: {exc}") from None
    divide = Divide(left, word, right, obj.get("name") or None)
    profile = validate(divide)
    if "strands" in obj and obj["strands"] != profile.strands:
        raise DivideError(f"'strands' is {obj['strands']} but walls give {profile.strands}")
    return divide


def loads(text: str) -> Divide:
    """Parse either notation, sniffing JSON by a leading brace."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DivideSyntaxError(exc.msg, exc.lineno, exc.colno) from None
        return from_json_obj(obj)
    return parse(text)
