"""Line-oriented text format for finite algebras.

::

    %algebra NAME
    %elements e1 e2 ... en
    %mul
    <n rows of n element names; row i, column j holds ei·ej>
    %inv e1' e2' ... en'          (optional)
    %add                          (optional, n rows like %mul)
    %matrices                     (optional)
    NAME: col->row col->row ...

``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algebra import FiniteAlgebra, inverse_map, validate_table
from .errors import AlgebraError, FormatError
from .rook import PartialInjection, compose, format_matrices

_PAIR = re.compile(r"(\d+)->(\d+)\Z")
_DIRECTIVES = ("%algebra", "%elements", "%mul", "%inv", "%add", "%matrices")


@dataclass(frozen=True, eq=False)
class ParsedAlgebra:
    algebra: FiniteAlgebra
    reps: tuple[PartialInjection, ...] | None = None


def _table_lines(names, table) -> list[str]:
    width = max(len(e) for e in names)
    return [" ".join(f"{names[x]:<{width}}" for x in row).rstrip() for row in table.tolist()]


def format_algebra(S: FiniteAlgebra, reps=None) -> str:
    lines = [f"%algebra {S.name}", "%elements " + " ".join(S.elements), "%mul"]
    lines += _table_lines(S.elements, S.mul)
    if S.inv is not None:
        lines.append("%inv " + " ".join(S.elements[i] for i in S.inv.tolist()))
    if S.add is not None:
        lines.append("%add")
        lines += _table_lines(S.elements, S.add)
    text = "\n".join(lines) + "\n"
    if reps is not None:
        text += format_matrices(S.elements, reps)
    return text


def parse_algebra(text: str) -> ParsedAlgebra:
    name = None
    elements: list[str] | None = None
    blocks: dict[str, list[tuple[int, list[str]]]] = {}
    inv_names: list[str] | None = None
    current = None
    seen = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0].startswith("%"):
            head = words[0]
            if head not in _DIRECTIVES:
                raise FormatError(f"unknown directive {head}", lineno)
            if head in seen:
                raise FormatError(f"repeated directive {head}", lineno)
            seen.add(head)
            current = None
            if head == "%algebra":
                if len(words) < 2:
                    raise FormatError("%algebra needs a name", lineno)
                name = " ".join(words[1:])
            elif head == "%elements":
                elements = words[1:]
            elif head == "%inv":
                inv_names = words[1:]
            else:
                if len(words) > 1:
                    raise FormatError(f"{head} takes no arguments", lineno)
                current = head
                blocks[head] = []
            continue
        if current is None:
            raise FormatError(f"unexpected line outside a table: {line!r}", lineno)
        if current == "%matrices":
            blocks[current].append((lineno, [line]))
        else:
            blocks[current].append((lineno, words))

    if elements is None or not elements:
        raise FormatError("missing %elements")
    if "%mul" not in blocks:
        raise FormatError("missing %mul")
    pos = {}
    for e in elements:
        if e in pos:
            raise FormatError(f"duplicate element name {e!r}")
        pos[e] = len(pos)
    n = len(elements)

    def lookup(word, lineno):
        try:
            return pos[word]
        except KeyError:
            raise FormatError(f"unknown element {word!r}", lineno) from None

    def table(head):
        rows = blocks[head]
        if len(rows) != n:
            raise FormatError(f"{head} needs {n} rows, found {len(rows)}",
                              rows[-1][0] if rows else None)
        out = np.empty((n, n), dtype=np.int32)
        for i, (lineno, words) in enumerate(rows):
            if len(words) != n:
                raise FormatError(f"{head} row needs {n} entries, found {len(words)}", lineno)
            out[i] = [lookup(w, lineno) for w in words]
        return out

    try:
        S = validate_table(elements, table("%mul"), name or "S")
    except AlgebraError as exc:
        raise FormatError(f"invalid multiplication: {exc}") from exc
    if inv_names is not None:
        if len(inv_names) != n:
            raise FormatError(f"%inv needs {n} entries, found {len(inv_names)}")
        inv = np.array([lookup(w, None) for w in inv_names], dtype=np.int32)
        try:
            actual = inverse_map(S)
        except AlgebraError as exc:
            raise FormatError(f"%inv given but {exc}") from exc
        if not np.array_equal(inv, actual):
            raise FormatError("%inv is not the unique-inverse map of %mul")
        S = S.replace(inv=inv)
    if "%add" in blocks:
        S = S.replace(add=table("%add"))

    reps = None
    if "%matrices" in blocks:
        reps = _parse_matrices(blocks["%matrices"], S, lookup)
    return ParsedAlgebra(S, reps)


def _parse_matrices(rows, S: FiniteAlgebra, lookup):
    found: dict[int, list[tuple[int, int]]] = {}
    top = 1
    for lineno, (line,) in rows:
        head, sep, body = line.partition(":")
        if not sep:
            raise FormatError("matrix line needs 'NAME:'", lineno)
        idx = lookup(head.strip(), lineno)
        if idx in found:
            raise FormatError(f"matrix for {head.strip()} given twice", lineno)
        pairs = []
        for word in body.split():
            m = _PAIR.match(word)
            if not m:
                raise FormatError(f"bad pair {word!r}; expected col->row", lineno)
            c, r = int(m.group(1)), int(m.group(2))
            if c < 1 or r < 1:
                raise FormatError(f"indices are 1-based: {word!r}", lineno)
            pairs.append((c, r))
            top = max(top, c, r)
        found[idx] = pairs
    if len(found) != S.size:
        raise FormatError(f"%matrices lists {len(found)} of {S.size} elements")
    try:
        reps = tuple(PartialInjection.from_pairs(top, found[i]) for i in range(S.size))
    except ValueError as exc:
        raise FormatError(f"bad matrix: {exc}") from exc
    index = {p: i for i, p in enumerate(reps)}
    if len(index) != len(reps):
        raise FormatError("two elements share a matrix")
    for i, p in enumerate(reps):
        for j, q in enumerate(reps):
            if index.get(compose(p, q)) != S.mul[i, j]:
                raise FormatError(
                    f"%mul disagrees with matrices at ({S.elements[i]}, {S.elements[j]})")
    return reps


def load_algebra(path) -> ParsedAlgebra:
    return parse_algebra(Path(path).read_text(encoding="utf-8"))


def save_algebra(path, S: FiniteAlgebra, reps=None) -> None:
    Path(path).write_text(format_algebra(S, reps), encoding="utf-8")
