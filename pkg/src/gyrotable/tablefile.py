"""The ``gyrotable 1`` text format.

::

    gyrotable 1
    order <n>
    name <label>                 (optional)
    cayley
    <n lines of n integers>
    perms                        (optional)
    <name>: i0 i1 ... i(n-1)
    gyr                          (optional, needs perms)
    <n lines of n permutation names>

Lines starting with ``#`` and blank lines are ignored. Several tables may be
concatenated into one stream; each starts with its own header line.
"""

from __future__ import annotations

import re

from .core import FiniteGyrogroup, Permutation
from .errors import InputError

FORMAT_VERSION = 1
_PERM_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*\Z")


class ParseError(InputError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def render(g: FiniteGyrogroup) -> str:
    out = [f"gyrotable {FORMAT_VERSION}", f"order {g.order}"]
    if g.name:
        out.append(f"name {g.name}")
    out.append("cayley")
    out.extend(" ".join(map(str, row)) for row in g.cayley)
    if g.perms:
        out.append("perms")
        for pname, p in g.perms:
            if not _PERM_NAME.match(pname):
                raise InputError(f"permutation name {pname!r} cannot be written")
            out.append(f"{pname}: " + " ".join(map(str, p.images)))
    if g.declared_gyr is not None:
        out.append("gyr")
        out.extend(" ".join(row) for row in g.declared_gyr)
    return "\n".join(out) + "\n"


def render_many(gs) -> str:
    return "".join(render(g) for g in gs)


class _Lines:
    def __init__(self, text: str):
        self.items = []
        for no, raw in enumerate(text.splitlines(), start=1):
            line = raw.rstrip()
            if not line or line.lstrip().startswith("#"):
                continue
            self.items.append((no, line))
        self.pos = 0
        self.last_no = self.items[-1][0] if self.items else 1

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def take(self, what: str):
        item = self.peek()
        if item is None:
            raise ParseError(self.last_no + 1, 1, f"unexpected end of input, expected {what}")
        self.pos += 1
        return item


def _keyword(lines: _Lines, key: str) -> tuple[int, str]:
    no, line = lines.take(f"'{key}'")
    if line == key:
        return no, ""
    if not line.startswith(key + " "):
        raise ParseError(no, 1, f"expected '{key}', got {line!r}")
    return no, line[len(key) + 1:]


def _int(no: int, col: int, tok: str) -> int:
    if not re.fullmatch(r"-?\d+", tok):
        raise ParseError(no, col, f"non-numeric cell {tok!r}")
    return int(tok)


def _tokens(line: str) -> list[tuple[int, str]]:
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def _int_row(no: int, line: str, n: int, offset: int = 0) -> list[int]:
    toks = _tokens(line)
    if len(toks) != n:
        raise ParseError(no, 1, f"row has {len(toks)} cells, expected {n}")
    row = []
    for col, tok in toks:
        x = _int(no, col + offset, tok)
        if not 0 <= x < n:
            raise ParseError(no, col + offset, f"cell {x} out of range 0..{n - 1}")
        row.append(x)
    return row


def _parse_one(lines: _Lines) -> FiniteGyrogroup:
    no, arg = _keyword(lines, "gyrotable")
    if arg.strip() != str(FORMAT_VERSION):
        raise ParseError(no, 11, f"unsupported format version {arg.strip()!r}")
    no, arg = _keyword(lines, "order")
    n = _int(no, 7, arg.strip())
    if n < 1:
        raise ParseError(no, 7, "order must be positive")

    name = None
    item = lines.peek()
    if item is not None and (item[1] == "name" or item[1].startswith("name ")):
        no, arg = _keyword(lines, "name")
        name = arg.strip() or None

    _keyword(lines, "cayley")
    cayley = []
    for _ in range(n):
        no, line = lines.take("a cayley row")
        cayley.append(_int_row(no, line, n))

    perms: dict[str, Permutation] = {}
    item = lines.peek()
    if item is not None and item[1] == "perms":
        lines.take("perms")
        while (item := lines.peek()) is not None and ":" in item[1]:
            no, line = lines.take("a permutation")
            head, _, body = line.partition(":")
            pname = head.strip()
            if not _PERM_NAME.match(pname):
                raise ParseError(no, 1, f"bad permutation name {pname!r}")
            if pname in perms:
                raise ParseError(no, 1, f"permutation {pname!r} declared twice")
            images = _int_row(no, body, n, offset=len(head) + 1)
            if sorted(images) != list(range(n)):
                raise ParseError(no, len(head) + 2, f"{pname} is not a permutation")
            perms[pname] = Permutation(tuple(images))

    gyr = None
    item = lines.peek()
    if item is not None and item[1] == "gyr":
        lines.take("gyr")
        gyr = []
        for _ in range(n):
            no, line = lines.take("a gyr row")
            toks = _tokens(line)
            if len(toks) != n:
                raise ParseError(no, 1, f"gyr row has {len(toks)} entries, expected {n}")
            for col, tok in toks:
                if tok not in perms:
                    raise ParseError(no, col, f"undeclared permutation name {tok!r}")
            gyr.append([tok for _, tok in toks])

    try:
        return FiniteGyrogroup(cayley, name=name, perms=perms, declared_gyr=gyr)
    except InputError as exc:
        raise ParseError(no, 1, f"invalid table: {exc}") from exc


def parse_many(text: str) -> list[FiniteGyrogroup]:
    lines = _Lines(text)
    out = []
    while lines.peek() is not None:
        item = lines.peek()
        if not item[1].startswith("gyrotable"):
            raise ParseError(item[0], 1, f"unexpected line {item[1]!r}")
        out.append(_parse_one(lines))
    if not out:
        raise ParseError(1, 1, "no table found")
    return out


def parse(text: str) -> FiniteGyrogroup:
    lines = _Lines(text)
    g = _parse_one(lines)
    item = lines.peek()
    if item is not None:
        raise ParseError(item[0], 1, f"unexpected trailing content {item[1]!r}")
    return g
