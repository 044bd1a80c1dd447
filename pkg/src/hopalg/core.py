"""Finite hyperstructures: carrier sets, hyperoperation tables, axiom checks.

A hyperoperation sends each ordered pair of elements to a non-empty subset
of the carrier.  Subsets are encoded as integer bitmasks over element
indices, so subset unions and comparisons are single word operations; the
carrier size is capped at 64 to keep masks word-sized.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Optional, Sequence

MAX_UNIVERSE = 64

# Characters that would collide with the table file grammar.
_SYMBOL_FORBIDDEN = set(" \t\r\n=")


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    """Bitmask with the given indices set."""
    out = 0
    for i in indices:
        out |= 1 << i
    return out


@dataclass(frozen=True)
class Universe:
    """Ordered finite carrier of named elements."""

    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(self.symbols))
        n = len(self.symbols)
        if not 1 <= n <= MAX_UNIVERSE:
            raise ValueError(f"universe size must be in 1..{MAX_UNIVERSE}, got {n}")
        seen = set()
        for s in self.symbols:
            if not s or not s.isascii():
                raise ValueError(f"element symbol must be non-empty ASCII, got {s!r}")
            if s.startswith("#") or any(c in _SYMBOL_FORBIDDEN for c in s):
                raise ValueError(f"element symbol {s!r} clashes with the table grammar")
            if s in seen:
                raise ValueError(f"duplicate element symbol {s!r}")
            seen.add(s)

    @property
    def size(self) -> int:
        return len(self.symbols)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.symbols)) - 1

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise KeyError(f"unknown symbol {symbol!r}") from None

    def mask_from_symbols(self, names: Iterable[str]) -> int:
        return mask_of(self.index(s) for s in names)

    def symbols_in(self, mask: int) -> tuple[str, ...]:
        return tuple(self.symbols[i] for i in iter_bits(mask))

    def format_mask(self, mask: int) -> str:
        return "{" + ", ".join(self.symbols_in(mask)) + "}"


@dataclass(frozen=True)
class HyperOp:
    """An n x n table of non-empty subset masks over a fixed universe."""

    universe: Universe
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.cells, tuple) or any(
            not isinstance(row, tuple) for row in self.cells
        ):
            object.__setattr__(
                self, "cells", tuple(tuple(row) for row in self.cells)
            )
        n = self.universe.size
        full = self.universe.full_mask
        if len(self.cells) != n or any(len(row) != n for row in self.cells):
            raise ValueError(f"cell table must be {n}x{n}")
        for x, row in enumerate(self.cells):
            for y, cell in enumerate(row):
                if cell == 0:
                    sx, sy = self.universe.symbols[x], self.universe.symbols[y]
                    raise ValueError(f"empty cell ({sx}, {sy})")
                if cell & ~full:
                    raise ValueError(f"cell ({x}, {y}) has bits outside the universe")

    @property
    def order(self) -> int:
        return self.universe.size

    @classmethod
    def from_sets(
        cls,
        universe: Universe,
        rows: Sequence[Sequence[Iterable[int]]],
    ) -> "HyperOp":
        """Build a table from index collections instead of raw masks."""
        cells = tuple(tuple(mask_of(cell) for cell in row) for row in rows)
        return cls(universe, cells)


@dataclass(frozen=True)
class TripleWitness:
    """A triple (x, y, z) with both evaluated sides of the associativity law."""

    x: int
    y: int
    z: int
    left: int   # (x.y).z
    right: int  # x.(y.z)


class StructureClass(Enum):
    HYPERGROUPOID = "hypergroupoid"
    SEMIHYPERGROUP = "semihypergroup"
    QUASIHYPERGROUP = "quasihypergroup"
    HYPERGROUP = "hypergroup"
    HV_GROUP_ONLY = "hv_group_only"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ClassificationReport:
    reproduction: bool
    reproduction_witness: Optional[int]
    associative: bool
    associativity_witness: Optional[TripleWitness]
    weakly_associative: bool
    weak_associativity_witness: Optional[TripleWitness]
    commutative: bool
    commutativity_witness: Optional[tuple[int, int]]
    class_label: StructureClass

    @property
    def hv_group(self) -> bool:
        """Reproduction plus at least weak associativity."""
        return self.reproduction and self.weakly_associative


def product_elements(op: HyperOp, x: int, y: int) -> int:
    """The product cell of two elements, as a subset mask."""
    n = op.universe.size
    if not (0 <= x < n and 0 <= y < n):
        raise IndexError(f"element index out of range for order {n}: ({x}, {y})")
    return op.cells[x][y]


def product_subsets(op: HyperOp, a: int, b: int) -> int:
    """Union of x.y over all x in a, y in b.  Empty operands are rejected."""
    if a == 0 or b == 0:
        raise ValueError("subset product operands must be non-empty")
    full = op.universe.full_mask
    if (a & ~full) or (b & ~full):
        raise ValueError("operand has bits outside the universe")
    out = 0
    cells = op.cells
    for x in iter_bits(a):
        row = cells[x]
        for y in iter_bits(b):
            out |= row[y]
    return out


def check_reproduction(op: HyperOp) -> tuple[bool, Optional[int]]:
    """x.H = H.x = H for every x; witness is the first violating element."""
    n = op.universe.size
    full = op.universe.full_mask
    cells = op.cells
    for x in range(n):
        row_union = 0
        col_union = 0
        for y in range(n):
            row_union |= cells[x][y]
            col_union |= cells[y][x]
        if row_union != full or col_union != full:
            return False, x
    return True, None


def _side_left(cells: Sequence[Sequence[int]], xy: int, z: int) -> int:
    out = 0
    for u in iter_bits(xy):
        out |= cells[u][z]
    return out


def _side_right(cells: Sequence[Sequence[int]], x: int, yz: int) -> int:
    out = 0
    row = cells[x]
    for v in iter_bits(yz):
        out |= row[v]
    return out


def _scan_triples(
    op: HyperOp,
    fails: Callable[[int, int], bool],
    xs: range,
) -> Optional[TripleWitness]:
    """First failing triple in lexicographic (x, y, z) order over the given rows."""
    n = op.universe.size
    cells = op.cells
    for x in xs:
        for y in range(n):
            xy = cells[x][y]
            for z in range(n):
                left = _side_left(cells, xy, z)
                right = _side_right(cells, x, cells[y][z])
                if fails(left, right):
                    return TripleWitness(x, y, z, left, right)
    return None


def _partitioned_scan(
    op: HyperOp,
    fails: Callable[[int, int], bool],
    workers: int,
) -> Optional[TripleWitness]:
    n = op.universe.size
    if workers <= 1 or n <= 1:
        return _scan_triples(op, fails, range(n))
    workers = min(workers, n)
    # Contiguous x-ranges; the merge keeps partition order, so the first
    # witness overall is still the lexicographically first one.
    bounds = [round(i * n / workers) for i in range(workers + 1)]
    chunks = [range(bounds[i], bounds[i + 1]) for i in range(workers)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda xs: _scan_triples(op, fails, xs), chunks))
    for witness in results:
        if witness is not None:
            return witness
    return None


def check_associative(
    op: HyperOp, workers: int = 1
) -> tuple[bool, Optional[TripleWitness]]:
    """(x.y).z = x.(y.z) as sets, exhaustively over all n^3 triples."""
    witness = _partitioned_scan(op, lambda l, r: l != r, workers)
    return witness is None, witness


def check_weak_associative(
    op: HyperOp, workers: int = 1
) -> tuple[bool, Optional[TripleWitness]]:
    """(x.y).z and x.(y.z) intersect, exhaustively over all n^3 triples."""
    witness = _partitioned_scan(op, lambda l, r: not (l & r), workers)
    return witness is None, witness


def check_commutative(op: HyperOp) -> tuple[bool, Optional[tuple[int, int]]]:
    """x.y = y.x for all pairs; witness is the first violating pair."""
    n = op.universe.size
    cells = op.cells
    for x in range(n):
        for y in range(x + 1, n):
            if cells[x][y] != cells[y][x]:
                return False, (x, y)
    return True, None


def _label(reproduction: bool, associative: bool, weak: bool) -> StructureClass:
    if reproduction and associative:
        return StructureClass.HYPERGROUP
    if reproduction and weak:
        return StructureClass.HV_GROUP_ONLY
    if associative:
        return StructureClass.SEMIHYPERGROUP
    if reproduction:
        return StructureClass.QUASIHYPERGROUP
    return StructureClass.HYPERGROUPOID


def classify(op: HyperOp, workers: int = 1) -> ClassificationReport:
    """Run every axiom check and name the structure."""
    repro, repro_w = check_reproduction(op)
    assoc, assoc_w = check_associative(op, workers=workers)
    if assoc:
        weak, weak_w = True, None
    else:
        weak, weak_w = check_weak_associative(op, workers=workers)
    comm, comm_w = check_commutative(op)
    return ClassificationReport(
        reproduction=repro,
        reproduction_witness=repro_w,
        associative=assoc,
        associativity_witness=assoc_w,
        weakly_associative=weak,
        weak_associativity_witness=weak_w,
        commutative=comm,
        commutativity_witness=comm_w,
        class_label=_label(repro, assoc, weak),
    )
