"""Flat-file formats: code files, family files, and run manifests.

Code file: a ``q=<int> n=<int>`` header, one word per line, ``#`` comments.
Family file: a ``q=<int> k=<int>`` header and ``L<i>:`` / ``R<i>:`` lines.
Parsing a family always validates it; invalid families never enter the
system through a file.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable

from .families import PartitionFamily, checked, family
from .words import CodeSet, code


class FormatError(ValueError):
    """A malformed code or family file."""


def _split_header(line: str, keys: tuple[str, str], path: str) -> tuple[int, int]:
    parts = line.split()
    values = {}
    for part in parts:
        if "=" not in part:
            raise FormatError(f"{path}: bad header field {part!r}")
        key, _, raw = part.partition("=")
        try:
            values[key] = int(raw)
        except ValueError:
            raise FormatError(f"{path}: non-integer header value {part!r}") from None
    if set(values) != set(keys):
        raise FormatError(f"{path}: header must declare exactly {keys[0]}= and {keys[1]}=")
    return values[keys[0]], values[keys[1]]


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def parse_code(text: str, path: str = "<string>") -> CodeSet:
    lines = _content_lines(text)
    if not lines:
        raise FormatError(f"{path}: missing header line")
    q, n = _split_header(lines[0], ("q", "n"), path)
    words = set()
    for line in lines[1:]:
        for word in line.split():
            if len(word) != n:
                raise FormatError(f"{path}: word {word!r} does not have length {n}")
            words.add(word)
    try:
        return code(q, n, words)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from None


def read_code(path: str | Path) -> CodeSet:
    return parse_code(Path(path).read_text(), str(path))


def format_code(c: CodeSet, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {row}" for row in comment.splitlines())
    lines.append(f"q={c.q} n={c.n}")
    lines.extend(c.sorted_words())
    return "\n".join(lines) + "\n"


def write_code(c: CodeSet, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_code(c, comment))


def parse_family(text: str, path: str = "<string>") -> PartitionFamily:
    lines = _content_lines(text)
    if not lines:
        raise FormatError(f"{path}: missing header line")
    q, k = _split_header(lines[0], ("q", "k"), path)
    if k < 1:
        raise FormatError(f"{path}: depth must be >= 1")
    sets: dict[str, set[str]] = {}
    for line in lines[1:]:
        if ":" not in line:
            raise FormatError(f"{path}: expected 'L<i>:' or 'R<i>:' line, got {line!r}")
        tag, _, rest = line.partition(":")
        tag = tag.strip()
        if not tag or tag[0] not in "LR" or not tag[1:].isdigit():
            raise FormatError(f"{path}: bad level tag {tag!r}")
        level = int(tag[1:])
        if not 1 <= level <= k:
            raise FormatError(f"{path}: level {level} outside [1, {k}]")
        sets.setdefault(tag, set()).update(rest.split())
    levels = [(sets.get(f"L{i}", set()), sets.get(f"R{i}", set()))
              for i in range(1, k + 1)]
    f = family(q, levels)
    from .families import validate

    problem = validate(f)
    if problem is not None:
        raise FormatError(f"{path}: invalid family: {problem}")
    return f


def read_family(path: str | Path) -> PartitionFamily:
    return parse_family(Path(path).read_text(), str(path))


def format_family(f: PartitionFamily, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {row}" for row in comment.splitlines())
    lines.append(f"q={f.q} k={f.depth}")
    for i in range(1, f.depth + 1):
        lines.append(f"L{i}: " + " ".join(sorted(f.left(i))) if f.left(i)
                     else f"L{i}:")
        lines.append(f"R{i}: " + " ".join(sorted(f.right(i))) if f.right(i)
                     else f"R{i}:")
    return "\n".join(lines) + "\n"


def write_family(f: PartitionFamily, path: str | Path,
                 comment: str | None = None) -> None:
    Path(path).write_text(format_family(f, comment))


def sha256_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    version: str
    seed: int | None
    wall_time_s: float
    outputs: dict[str, str]  # path -> sha256


def write_manifest(manifest: RunManifest, path: str | Path) -> None:
    Path(path).write_text(json.dumps(asdict(manifest), indent=2, sort_keys=True)
                          + "\n")
