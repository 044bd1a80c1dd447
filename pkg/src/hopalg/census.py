"""Exhaustive census of hyperoperation tables of a small order.

Tables are numbered by an odometer: the n^2 cells, row-major, are digits in
base 2^n - 1 (each digit encodes one non-empty subset, digit + 1 = mask),
with the last cell as the fastest digit.  The census classifies every table
with a vectorized path that precomputes, per table, the subset-product rows
P[m][z] = union over u in m of u.z (and the column dual), turning the triple
check into two table lookups per triple.  The per-table checkers in
hopalg.core deliberately stay free of that precomputation so they can serve
as an independent reference for the census.
"""

from __future__ import annotations

import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .core import HyperOp, StructureClass, Universe, classify
from .morphisms import find_isomorphism, invariant_signature

MAX_FULL_ORDER = 3
MAX_SAMPLE_ORDER = 8
MAX_DEDUP_ORDER = 2
DEFAULT_SAMPLE_SEED = 1729

_BATCH = 1 << 17

# Fixed label codes for the vectorized classifier.
_LABELS = (
    StructureClass.HYPERGROUPOID,
    StructureClass.SEMIHYPERGROUP,
    StructureClass.QUASIHYPERGROUP,
    StructureClass.HYPERGROUP,
    StructureClass.HV_GROUP_ONLY,
)

_SYMBOLS = "abcdefgh"


@dataclass(frozen=True)
class CensusReport:
    order: int
    total_tables: int
    scanned: int
    dedup: bool
    counts: dict[StructureClass, int]
    iso_classes: Optional[int]
    elapsed_seconds: float
    workers: int
    sample_size: Optional[int]
    sample_seed: Optional[int]


def total_tables(order: int) -> int:
    """(2^n - 1)^(n^2): every cell ranges over the non-empty subsets."""
    return (2 ** order - 1) ** (order * order)


def default_universe(order: int) -> Universe:
    if not 1 <= order <= len(_SYMBOLS):
        raise ValueError(f"order must be in 1..{len(_SYMBOLS)}, got {order}")
    return Universe(tuple(_SYMBOLS[:order]))


def cells_at(order: int, index: int) -> tuple[tuple[int, ...], ...]:
    """Cell masks of the table at an odometer index."""
    base = 2 ** order - 1
    digits = [0] * (order * order)
    for pos in range(order * order - 1, -1, -1):
        index, digits[pos] = divmod(index, base)
    if index:
        raise ValueError("index out of range")
    return tuple(
        tuple(digits[x * order + y] + 1 for y in range(order))
        for x in range(order)
    )


def table_at(order: int, index: int) -> HyperOp:
    return HyperOp(default_universe(order), cells_at(order, index))


def _guard_full_scan(order: int) -> None:
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    if order > MAX_FULL_ORDER:
        raise ValueError(
            f"refusing to enumerate all {total_tables(order)} tables of order "
            f"{order}; full scans are capped at order {MAX_FULL_ORDER}, "
            f"use sampling instead"
        )


def enumerate_tables(order: int) -> Iterator[HyperOp]:
    """Every table of the given order exactly once, in odometer order."""
    _guard_full_scan(order)
    universe = default_universe(order)
    base = 2 ** order - 1
    ncells = order * order
    digits = [0] * ncells
    while True:
        rows = tuple(
            tuple(digits[x * order + y] + 1 for y in range(order))
            for x in range(order)
        )
        yield HyperOp(universe, rows)
        pos = ncells - 1
        while pos >= 0 and digits[pos] == base - 1:
            digits[pos] = 0
            pos -= 1
        if pos < 0:
            return
        digits[pos] += 1


def sample_indices(order: int, count: int, seed: int = DEFAULT_SAMPLE_SEED) -> list[int]:
    """Deterministic pseudo-random table indices (with replacement)."""
    rng = random.Random(seed)
    total = total_tables(order)
    return [rng.randrange(total) for _ in range(count)]


def _classify_batch(cells: np.ndarray, order: int) -> np.ndarray:
    """Label codes for a batch of tables given as (B, n, n) mask arrays."""
    n = order
    nmasks = 1 << n
    full = nmasks - 1
    B = cells.shape[0]

    row_or = np.bitwise_or.reduce(cells, axis=2)
    col_or = np.bitwise_or.reduce(cells, axis=1)
    repro = (row_or == full).all(axis=1) & (col_or == full).all(axis=1)

    # P[b, m, z] = union over u in m of cells[b, u, z]; Q is the row dual.
    P = np.zeros((B, nmasks, n), dtype=cells.dtype)
    Q = np.zeros((B, n, nmasks), dtype=cells.dtype)
    for m in range(1, nmasks):
        low = m & -m
        u = low.bit_length() - 1
        rest = m ^ low
        P[:, m, :] = P[:, rest, :] | cells[:, u, :]
        Q[:, :, m] = Q[:, :, rest] | cells[:, :, u]

    assoc = np.ones(B, dtype=bool)
    weak = np.ones(B, dtype=bool)
    rows = np.arange(B)
    for x in range(n):
        qx = Q[rows, x, :]
        for y in range(n):
            cxy = cells[:, x, y]
            for z in range(n):
                left = P[rows, cxy, z]
                right = qx[rows, cells[:, y, z]]
                assoc &= left == right
                weak &= (left & right) != 0

    codes = np.zeros(B, dtype=np.uint8)
    codes[~repro & assoc] = 1
    codes[repro & ~weak] = 2
    codes[repro & assoc] = 3
    codes[repro & weak & ~assoc] = 4
    return codes


def _cells_array_for_range(order: int, start: int, stop: int) -> np.ndarray:
    """Decode a contiguous index range into a (B, n, n) mask array."""
    base = 2 ** order - 1
    idx = np.arange(start, stop, dtype=np.int64)
    cells = np.zeros((idx.shape[0], order, order), dtype=np.uint8)
    for pos in range(order * order - 1, -1, -1):
        idx, digit = np.divmod(idx, base)
        cells[:, pos // order, pos % order] = digit + 1
    return cells


def _cells_array_for_indices(order: int, indices: list[int]) -> np.ndarray:
    cells = np.zeros((len(indices), order, order), dtype=np.uint8)
    for b, index in enumerate(indices):
        for x, row in enumerate(cells_at(order, index)):
            cells[b, x, :] = row
    return cells


class _Progress:
    def __init__(self, total: int, enabled: bool):
        self.total = total
        self.enabled = enabled
        self.done = 0
        self.started = time.perf_counter()

    def advance(self, amount: int) -> None:
        if not self.enabled:
            return
        self.done += amount
        rate = self.done / max(time.perf_counter() - self.started, 1e-9)
        print(
            f"census: {self.done}/{self.total} tables ({rate:,.0f}/s)",
            file=sys.stderr,
        )


def _count_range(order: int, start: int, stop: int, progress: _Progress) -> np.ndarray:
    counts = np.zeros(len(_LABELS), dtype=np.int64)
    for lo in range(start, stop, _BATCH):
        hi = min(lo + _BATCH, stop)
        codes = _classify_batch(_cells_array_for_range(order, lo, hi), order)
        counts += np.bincount(codes, minlength=len(_LABELS))
        progress.advance(hi - lo)
    return counts


def _census_full(order: int, workers: int, progress: _Progress) -> np.ndarray:
    total = total_tables(order)
    if workers <= 1:
        return _count_range(order, 0, total, progress)
    bounds = [total * i // workers for i in range(workers + 1)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(
            lambda span: _count_range(order, span[0], span[1], progress),
            zip(bounds, bounds[1:]),
        )
        return sum(parts, np.zeros(len(_LABELS), dtype=np.int64))


def _census_sample(
    order: int, indices: list[int], workers: int, progress: _Progress
) -> np.ndarray:
    if workers <= 1:
        chunks = [indices]
    else:
        bounds = [len(indices) * i // workers for i in range(workers + 1)]
        chunks = [indices[bounds[i] : bounds[i + 1]] for i in range(workers)]

    def count_chunk(chunk: list[int]) -> np.ndarray:
        counts = np.zeros(len(_LABELS), dtype=np.int64)
        for lo in range(0, len(chunk), _BATCH):
            part = chunk[lo : lo + _BATCH]
            codes = _classify_batch(_cells_array_for_indices(order, part), order)
            counts += np.bincount(codes, minlength=len(_LABELS))
            progress.advance(len(part))
        return counts

    if workers <= 1:
        return count_chunk(indices)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(count_chunk, chunks)
        return sum(parts, np.zeros(len(_LABELS), dtype=np.int64))


def _census_dedup(order: int) -> tuple[dict[StructureClass, int], int]:
    """Counts per label over isomorphism class representatives."""
    buckets: dict[object, list[HyperOp]] = {}
    counts = {label: 0 for label in _LABELS}
    classes = 0
    for op in enumerate_tables(order):
        sig = invariant_signature(op)
        reps = buckets.setdefault(sig, [])
        if any(find_isomorphism(op, rep) is not None for rep in reps):
            continue
        reps.append(op)
        classes += 1
        counts[classify(op).class_label] += 1
    return counts, classes


def run_census(
    order: int,
    dedup: bool = False,
    workers: int = 1,
    sample: Optional[int] = None,
    seed: int = DEFAULT_SAMPLE_SEED,
    progress: bool = False,
) -> CensusReport:
    """Classify every table of the given order (or a deterministic sample).

    The report is identical for any worker count: workers split the odometer
    range into contiguous spans whose per-label counts are summed exactly.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    started = time.perf_counter()

    if dedup:
        if sample is not None:
            raise ValueError("dedup and sampling cannot be combined")
        if order > MAX_DEDUP_ORDER:
            raise ValueError(
                f"isomorphism dedup is offered up to order {MAX_DEDUP_ORDER}, got {order}"
            )
        _guard_full_scan(order)
        counts, classes = _census_dedup(order)
        return CensusReport(
            order=order,
            total_tables=total_tables(order),
            scanned=total_tables(order),
            dedup=True,
            counts=counts,
            iso_classes=classes,
            elapsed_seconds=time.perf_counter() - started,
            workers=workers,
            sample_size=None,
            sample_seed=None,
        )

    if sample is not None:
        if sample < 1:
            raise ValueError(f"sample size must be >= 1, got {sample}")
        if not 1 <= order <= MAX_SAMPLE_ORDER:
            raise ValueError(
                f"sampling is supported for orders 1..{MAX_SAMPLE_ORDER}, got {order}"
            )
        indices = sample_indices(order, sample, seed)
        tracker = _Progress(sample, progress)
        vec = _census_sample(order, indices, workers, tracker)
        scanned = sample
    else:
        _guard_full_scan(order)
        tracker = _Progress(total_tables(order), progress)
        vec = _census_full(order, workers, tracker)
        scanned = total_tables(order)

    counts = {label: int(vec[code]) for code, label in enumerate(_LABELS)}
    return CensusReport(
        order=order,
        total_tables=total_tables(order),
        scanned=scanned,
        dedup=False,
        counts=counts,
        iso_classes=None,
        elapsed_seconds=time.perf_counter() - started,
        workers=workers,
        sample_size=sample,
        sample_seed=seed if sample is not None else None,
    )
