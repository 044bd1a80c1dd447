"""Closed substructures of a hyperoperation table.

A non-empty subset K is closed when a.K = K.a = K for every a in K; on the
whole carrier this condition is exactly the reproduction axiom.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import HyperOp, Universe, iter_bits

# Brute force scans 2^n - 1 subsets; past this order that is unreasonable.
MAX_ENUMERATION_ORDER = 20


@dataclass(frozen=True)
class SubstructureRecord:
    members: int
    is_proper: bool   # members != H
    is_trivial: bool  # members == H


def is_closed_substructure(
    op: HyperOp, members: int
) -> tuple[bool, Optional[int]]:
    """a.K = K.a = K for every a in K; witness is the first violating a."""
    if members == 0:
        raise ValueError("substructure candidate must be non-empty")
    if members & ~op.universe.full_mask:
        raise ValueError("candidate has bits outside the universe")
    cells = op.cells
    for a in iter_bits(members):
        aK = 0
        Ka = 0
        for b in iter_bits(members):
            aK |= cells[a][b]
            Ka |= cells[b][a]
        if aK != members or Ka != members:
            return False, a
    return True, None


def enumerate_substructures(op: HyperOp) -> list[SubstructureRecord]:
    """All closed subsets, in ascending bitmask order, flagged proper/trivial."""
    n = op.universe.size
    if n > MAX_ENUMERATION_ORDER:
        raise ValueError(
            f"substructure enumeration is capped at order {MAX_ENUMERATION_ORDER}; "
            f"order {n} would scan {2 ** n - 1} subsets"
        )
    full = op.universe.full_mask
    out = []
    for members in range(1, full + 1):
        closed, _ = is_closed_substructure(op, members)
        if closed:
            out.append(
                SubstructureRecord(
                    members=members,
                    is_proper=members != full,
                    is_trivial=members == full,
                )
            )
    return out


def restrict(op: HyperOp, members: int) -> HyperOp:
    """The induced table on a closed subset K.

    Closure forces a.b subseteq a.K = K for a, b in K, so every cell of the
    restricted table stays inside K and remains non-empty.
    """
    closed, witness = is_closed_substructure(op, members)
    if not closed:
        symbol = op.universe.symbols[witness]
        raise ValueError(f"subset is not closed: element {symbol} violates a.K = K.a = K")
    indices = list(iter_bits(members))
    new_index = {old: new for new, old in enumerate(indices)}
    universe = Universe(tuple(op.universe.symbols[i] for i in indices))
    rows = []
    for a in indices:
        row = []
        for b in indices:
            cell = op.cells[a][b]
            assert cell & ~members == 0, "closure must bound every cell"
            row.append(sum(1 << new_index[u] for u in iter_bits(cell)))
        rows.append(tuple(row))
    return HyperOp(universe, tuple(rows))
