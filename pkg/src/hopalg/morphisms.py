"""Isomorphism testing between hyperoperation tables.

Isomorphism here is exact: a bijection on elements that carries every cell
of one table onto the corresponding cell of the other.  The search is a
backtracking scan over permutations, pruned by relabeling-invariant
per-element profiles, and deterministically returns the lexicographically
least valid mapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import HyperOp, Universe, iter_bits

# n! leaves; past this order the permutation scan is not sensible.
MAX_AUTOMORPHISM_ORDER = 10


@dataclass(frozen=True)
class Relabeling:
    """A permutation of element indices, source position -> target index."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.mapping, tuple):
            object.__setattr__(self, "mapping", tuple(self.mapping))
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"not a permutation: {self.mapping}")

    def __call__(self, index: int) -> int:
        return self.mapping[index]

    @property
    def size(self) -> int:
        return len(self.mapping)

    @classmethod
    def identity(cls, n: int) -> "Relabeling":
        return cls(tuple(range(n)))

    def apply_mask(self, mask: int) -> int:
        out = 0
        for u in iter_bits(mask):
            out |= 1 << self.mapping[u]
        return out

    def inverse(self) -> "Relabeling":
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Relabeling(tuple(inv))

    def compose(self, other: "Relabeling") -> "Relabeling":
        """(self.compose(other))(i) = self(other(i))."""
        if len(self.mapping) != len(other.mapping):
            raise ValueError("relabeling sizes differ")
        return Relabeling(tuple(self.mapping[j] for j in other.mapping))


Profile = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class InvariantSignature:
    """Relabeling-invariant summary used to prune the isomorphism search."""

    cell_size_multiset: tuple[int, ...]
    profile_multiset: tuple[Profile, ...]


def _element_profile(op: HyperOp, i: int) -> Profile:
    n = op.universe.size
    row = tuple(sorted(op.cells[i][j].bit_count() for j in range(n)))
    col = tuple(sorted(op.cells[j][i].bit_count() for j in range(n)))
    return row, col


def invariant_signature(op: HyperOp) -> InvariantSignature:
    n = op.universe.size
    sizes = sorted(op.cells[i][j].bit_count() for i in range(n) for j in range(n))
    profiles = sorted(_element_profile(op, i) for i in range(n))
    return InvariantSignature(tuple(sizes), tuple(profiles))


def apply_relabeling(
    op: HyperOp, r: Relabeling, target_universe: Optional[Universe] = None
) -> HyperOp:
    """Rename elements: result.cells[r(i)][r(j)] = r(op.cells[i][j])."""
    n = op.universe.size
    if r.size != n:
        raise ValueError(f"relabeling size {r.size} does not match order {n}")
    universe = target_universe if target_universe is not None else op.universe
    if universe.size != n:
        raise ValueError("target universe size does not match")
    cells = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cells[r(i)][r(j)] = r.apply_mask(op.cells[i][j])
    return HyperOp(universe, tuple(tuple(row) for row in cells))


def _search(
    a: HyperOp, b: HyperOp, collect_all: bool
) -> list[tuple[int, ...]]:
    """Backtracking over index mappings, ascending, so results come out in
    lexicographic order.  Partial mappings are kept exactly consistent: on
    every decided pair the mapped part of the source cell must biject onto
    the mapped part of the target cell."""
    n = a.universe.size
    ca, cb = a.cells, b.cells
    prof_a = [_element_profile(a, i) for i in range(n)]
    prof_b = [_element_profile(b, j) for j in range(n)]
    candidates = [
        [j for j in range(n) if prof_b[j] == prof_a[i]] for i in range(n)
    ]
    if any(not c for c in candidates):
        return []

    mapping = [-1] * n
    used = [False] * n
    results: list[tuple[int, ...]] = []

    def image(mask: int, mapped_mask: int) -> int:
        out = 0
        for u in iter_bits(mask & mapped_mask):
            out |= 1 << mapping[u]
        return out

    def consistent(k: int, mapped_mask: int, image_mask: int) -> bool:
        for i in range(k + 1):
            for s, t in ((i, k), (k, i)) if i < k else ((k, k),):
                cell_a = ca[s][t]
                cell_b = cb[mapping[s]][mapping[t]]
                if cell_a.bit_count() != cell_b.bit_count():
                    return False
                if image(cell_a, mapped_mask) != cell_b & image_mask:
                    return False
        return True

    def full_valid() -> bool:
        # The incremental checks do not revisit earlier pairs as later
        # elements get mapped, so leaves need one exact pass.
        for i in range(n):
            for j in range(n):
                if image(ca[i][j], -1) != cb[mapping[i]][mapping[j]]:
                    return False
        return True

    def extend(k: int, mapped_mask: int, image_mask: int) -> bool:
        if k == n:
            if full_valid():
                results.append(tuple(mapping))
                return not collect_all
            return False
        for j in candidates[k]:
            if used[j]:
                continue
            mapping[k] = j
            used[j] = True
            if consistent(k, mapped_mask | (1 << k), image_mask | (1 << j)):
                if extend(k + 1, mapped_mask | (1 << k), image_mask | (1 << j)):
                    return True
            used[j] = False
            mapping[k] = -1
        return False

    extend(0, 0, 0)
    return results


def find_isomorphism(a: HyperOp, b: HyperOp) -> Optional[Relabeling]:
    """The lexicographically least relabeling carrying a onto b, if any."""
    if a.universe.size != b.universe.size:
        return None
    if invariant_signature(a) != invariant_signature(b):
        return None
    found = _search(a, b, collect_all=False)
    return Relabeling(found[0]) if found else None


def automorphisms(op: HyperOp) -> list[Relabeling]:
    """All table-preserving permutations, in lexicographic order."""
    n = op.universe.size
    if n > MAX_AUTOMORPHISM_ORDER:
        raise ValueError(
            f"automorphism search is capped at order {MAX_AUTOMORPHISM_ORDER}, got {n}"
        )
    return [Relabeling(m) for m in _search(op, op, collect_all=True)]
