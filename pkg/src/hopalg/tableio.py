"""Plain-text serialization of hyperoperation tables (.hop files).

Grammar, one item per line:

    # comment lines may appear anywhere
    elements: Ao Bo A2 B2 AB
    Ao Ao = Ao A2
    Ao Bo = Ao Bo AB
    ...                        (one line per ordered pair, any order)

Cell members are whitespace-separated declared symbols; duplicates inside a
cell are tolerated on input but never emitted.  Blank lines are ignored.
Both LF and CRLF input is accepted; output is LF with a trailing newline.
Serialization is canonical: elements in universe order, cells row-major,
members in universe order, single spaces.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .core import HyperOp, Universe, iter_bits


class TableFormatError(ValueError):
    """A diagnostic for a malformed table document."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_table(text: str) -> HyperOp:
    """Parse a table document; see the module docstring for the grammar."""
    universe: Optional[Universe] = None
    index: dict[str, int] = {}
    cells: dict[tuple[int, int], int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if universe is None:
            if tokens[0] != "elements:":
                raise TableFormatError("expected 'elements: S1 S2 ...' line", lineno)
            symbols = tokens[1:]
            if not symbols:
                raise TableFormatError("elements line declares no symbols", lineno)
            seen = set()
            for s in symbols:
                if s in seen:
                    raise TableFormatError(f"duplicate element symbol {s!r}", lineno)
                seen.add(s)
            try:
                universe = Universe(tuple(symbols))
            except ValueError as exc:
                raise TableFormatError(str(exc), lineno) from None
            index = {s: i for i, s in enumerate(symbols)}
            continue

        if len(tokens) < 3 or tokens[2] != "=":
            raise TableFormatError("expected 'Sx Sy = T1 T2 ...' cell line", lineno)
        sx, sy = tokens[0], tokens[1]
        for s in (sx, sy):
            if s not in index:
                raise TableFormatError(f"unknown symbol {s!r}", lineno)
        pair = (index[sx], index[sy])
        if pair in cells:
            raise TableFormatError(f"duplicate cell ({sx}, {sy})", lineno)
        members = tokens[3:]
        if not members:
            raise TableFormatError(f"empty cell ({sx}, {sy})", lineno)
        mask = 0
        for s in members:
            if s not in index:
                raise TableFormatError(f"unknown symbol {s!r}", lineno)
            mask |= 1 << index[s]
        cells[pair] = mask

    if universe is None:
        raise TableFormatError("document has no 'elements:' line")
    n = universe.size
    for x in range(n):
        for y in range(n):
            if (x, y) not in cells:
                sx, sy = universe.symbols[x], universe.symbols[y]
                raise TableFormatError(f"missing cell ({sx}, {sy})")
    rows = tuple(tuple(cells[(x, y)] for y in range(n)) for x in range(n))
    return HyperOp(universe, rows)


def serialize_table(op: HyperOp, comments: Iterable[str] = ()) -> str:
    """Canonical document for a table, optionally preceded by comment lines."""
    lines = []
    for c in comments:
        lines.append(c if c.startswith("#") else f"# {c}")
    symbols = op.universe.symbols
    lines.append("elements: " + " ".join(symbols))
    for x in range(op.order):
        for y in range(op.order):
            members = " ".join(symbols[i] for i in iter_bits(op.cells[x][y]))
            lines.append(f"{symbols[x]} {symbols[y]} = {members}")
    return "\n".join(lines) + "\n"
