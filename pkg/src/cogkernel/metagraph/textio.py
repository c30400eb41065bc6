"""Line-oriented text format for metagraphs.

::

    cogkernel-graph v1
    # comment
    N 0 Observation sti=0.25
    N 1 Concept
    E 2 Member (0 1) tv=1.0,0.0

Ids in a file are chosen by the writer; the reader assigns fresh ids in file
order, so an edge may only reference atoms defined on earlier lines.
"""

from __future__ import annotations

import math
import re
from typing import TextIO

from ..errors import CogKernelError, ParseError
from ..logic import parse_tv_literal
from .store import EDGE, NODE, Metagraph

HEADER = "cogkernel-graph v1"

_NODE_RE = re.compile(r"^N\s+(\d+)\s+(\S+)((?:\s+\S+)*)\s*$")
_EDGE_RE = re.compile(r"^E\s+(\d+)\s+(\S+)\s+\(([^()]*)\)((?:\s+\S+)*)\s*$")


def _fmt_float(value: float) -> str:
    return repr(float(value))


def _is_default(value: float) -> bool:
    return value == 0.0 and math.copysign(1.0, value) > 0


def _annotations(atom) -> str:
    parts = []
    if atom.tv is not None:
        parts.append(atom.tv.literal())
    if not _is_default(atom.sti):
        parts.append(f"sti={_fmt_float(atom.sti)}")
    if not _is_default(atom.lti):
        parts.append(f"lti={_fmt_float(atom.lti)}")
    return (" " + " ".join(parts)) if parts else ""


def dumps(g: Metagraph) -> str:
    lines = [HEADER]
    for atom in g:
        if atom.kind == NODE:
            lines.append(f"N {atom.id} {atom.type_label}{_annotations(atom)}")
        else:
            targets = " ".join(str(t) for t in atom.targets)
            lines.append(f"E {atom.id} {atom.type_label} ({targets}){_annotations(atom)}")
    return "\n".join(lines) + "\n"


def _parse_annotations(text: str, lineno: int) -> dict:
    out: dict = {}
    for token in text.split():
        key, sep, value = token.partition("=")
        if not sep or key in out:
            raise ParseError(f"bad annotation {token!r}", lineno)
        if key == "tv":
            try:
                out["tv"] = parse_tv_literal(value)
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from None
        elif key in ("sti", "lti"):
            try:
                number = float(value)
            except ValueError:
                raise ParseError(f"bad {key} value {value!r}", lineno) from None
            if not math.isfinite(number):
                raise ParseError(f"non-finite {key}", lineno)
            out[key] = number
        else:
            raise ParseError(f"unknown annotation {key!r}", lineno)
    return out


def loads(text: str) -> Metagraph:
    g = Metagraph()
    remap: dict[int, int] = {}
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                raise ParseError(f"expected header {HEADER!r}", lineno)
            seen_header = True
            continue
        if line.startswith("N"):
            m = _NODE_RE.match(line)
            if not m:
                raise ParseError(f"malformed node line {line!r}", lineno)
            file_id, label, rest = int(m.group(1)), m.group(2), m.group(3)
            kind, targets = NODE, ()
        elif line.startswith("E"):
            m = _EDGE_RE.match(line)
            if not m:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            file_id, label, target_text, rest = int(m.group(1)), m.group(2), m.group(3), m.group(4)
            kind = EDGE
            tokens = target_text.split()
            if not tokens or not all(t.isdigit() for t in tokens):
                raise ParseError(f"malformed target list ({target_text})", lineno)
            try:
                targets = tuple(remap[int(t)] for t in tokens)
            except KeyError as exc:
                raise ParseError(f"target {exc.args[0]} not defined on an earlier line", lineno) from None
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno)
        if file_id in remap:
            raise ParseError(f"duplicate id {file_id}", lineno)
        annotations = _parse_annotations(rest, lineno)
        try:
            remap[file_id] = g.add_atom(kind, label, targets, **annotations)
        except (CogKernelError, ValueError) as exc:
            raise ParseError(str(exc), lineno) from None
    if not seen_header:
        raise ParseError(f"missing header {HEADER!r}", 1)
    return g


def dump(g: Metagraph, fh: TextIO) -> None:
    fh.write(dumps(g))


def load(fh: TextIO) -> Metagraph:
    return loads(fh.read())


def read_graph(path) -> Metagraph:
    with open(path, encoding="utf-8") as fh:
        return load(fh)


def write_graph(g: Metagraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        dump(g, fh)
