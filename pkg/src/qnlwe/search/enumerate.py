import time
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from loguru import logger
from numpy.typing import NDArray

from ..errors import InputError
from ..process.batch import classical_mask, no_global_past_mask, table_dtype
from ..process.table import ProcessTable
from ..statevector import generator
from ..utils import check_party_count, word_to_bits
from .canonical import MAX_CANONICAL_PARTIES, canonicalize, canonicalize_batch, table_keys

MAX_EXHAUSTIVE_PARTIES = 3
MAX_SAMPLED_PARTIES = 12
# Table entries held in memory per sampled chunk
_CHUNK_ENTRIES = 1 << 22


@dataclass(frozen=True)
class SearchReport:
    n: int
    total_candidates: int
    process_count: int
    no_global_past_count: int
    canonical_class_count: int
    elapsed: float
    representatives: tuple[ProcessTable, ...]
    sampled: bool = False

    def lines(self, timing: bool = False) -> list[str]:
        lines = [
            f"n: {self.n}",
            f"mode: {'sampled' if self.sampled else 'exhaustive'}",
            f"total-candidates: {self.total_candidates}",
            f"process-count: {self.process_count}",
            f"no-global-past-count: {self.no_global_past_count}",
            f"canonical-class-count: {self.canonical_class_count}",
        ]
        if self.sampled:
            lines.append(f"process-fraction: {self._fraction(self.process_count)}")
            lines.append(
                f"no-global-past-fraction: {self._fraction(self.no_global_past_count)}"
            )
        lines.append(f"representatives: {len(self.representatives)}")
        if timing:
            lines.append(f"elapsed: {self.elapsed:.3f}")
        return lines

    def _fraction(self, count: int) -> str:
        if self.total_candidates == 0:
            return "0.000000"
        return f"{count / self.total_candidates:.6f}"


def _check_exhaustive(n: int) -> None:
    check_party_count(n)
    if n > MAX_EXHAUSTIVE_PARTIES:
        raise InputError(
            f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE_PARTIES} "
            f"({1 << n}^{1 << n} tables for n={n}); use sampling instead"
        )


def _partition_tables(n: int, first_row: int) -> NDArray[np.uint8]:
    """All tables whose row 0 is first_row, in lexicographic order."""
    size = 1 << n
    index = np.arange(size ** (size - 1), dtype=np.int64)
    tables = np.empty((len(index), size), dtype=np.uint8)
    tables[:, 0] = first_row
    for x in range(1, size):
        tables[:, x] = (index >> (n * (size - 1 - x))) & (size - 1)
    return tables


def _scan_partition(n: int, first_row: int) -> NDArray[np.uint8]:
    tables = _partition_tables(n, first_row)
    processes = tables[classical_mask(tables, n)]
    logger.info(
        f"Partition {word_to_bits(first_row, n)}: "
        f"{len(processes)} processes among {len(tables)} tables"
    )
    return processes


def classical_process_tables(n: int, jobs: int = 1) -> Iterator[NDArray[np.uint8]]:
    """Classical processes as arrays, one per first-row partition, in order.

    Partitions are scanned in parallel with jobs > 1 and still yielded in
    partition order, so results do not depend on the worker count.
    """
    _check_exhaustive(n)
    partitions = list(range(1 << n))
    if jobs <= 1:
        for first_row in partitions:
            yield _scan_partition(n, first_row)
        return
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        yield from executor.map(_scan_partition, [n] * len(partitions), partitions)


def enumerate_classical_processes(n: int, jobs: int = 1) -> Iterator[ProcessTable]:
    for tables in classical_process_tables(n, jobs):
        for row in tables:
            yield ProcessTable.from_array(n, row)


def enumerate_no_global_past(
    n: int, jobs: int = 1, allow_self: bool = False
) -> Iterator[ProcessTable]:
    for tables in classical_process_tables(n, jobs):
        for row in tables[no_global_past_mask(tables, n, allow_self)]:
            yield ProcessTable.from_array(n, row)


def canonical_classes(tables: NDArray[np.integer], n: int) -> NDArray[np.integer]:
    """Distinct canonical forms of the rows, in lexicographic order."""
    canonical = canonicalize_batch(tables, n)
    _, first = np.unique(table_keys(canonical, n), return_index=True)
    return canonical[first]


@dataclass(frozen=True)
class ExhaustiveSearch:
    report: SearchReport
    processes: NDArray[np.uint8]
    no_global_past: NDArray[np.uint8]


def exhaustive_search(
    n: int, jobs: int = 1, canonical: bool = True, allow_self: bool = False
) -> ExhaustiveSearch:
    _check_exhaustive(n)
    logger.info(f"The exhaustive scan of {n}-party tables has started")
    start = time.perf_counter()

    processes = np.concatenate(list(classical_process_tables(n, jobs)))
    no_global_past = processes[no_global_past_mask(processes, n, allow_self)]
    representatives: tuple[ProcessTable, ...] = ()
    if canonical:
        representatives = tuple(
            ProcessTable.from_array(n, row) for row in canonical_classes(no_global_past, n)
        )

    size = 1 << n
    report = SearchReport(
        n=n,
        total_candidates=size**size,
        process_count=len(processes),
        no_global_past_count=len(no_global_past),
        canonical_class_count=len(representatives),
        elapsed=time.perf_counter() - start,
        representatives=representatives,
    )
    logger.info("The exhaustive scan has finished successfully")
    return ExhaustiveSearch(report, processes, no_global_past)


def sample_functions(
    n: int,
    count: int,
    seed: int = 0,
    cap: int = 1000,
    inject: Sequence[ProcessTable] = (),
    canonical: bool = False,
    allow_self: bool = False,
) -> SearchReport:
    """Checks `count` uniformly random tables (after any injected ones).

    No-global-past processes are retained up to `cap`. With canonical (n <= 5)
    every passing table is reduced to its canonical form, the class count covers
    all of them, and `cap` limits only the retained representatives.
    """
    check_party_count(n, MAX_SAMPLED_PARTIES)
    if count < 0:
        raise InputError(f"count must be non-negative, but got {count}")
    if canonical and n > MAX_CANONICAL_PARTIES:
        raise InputError(f"canonical forms are limited to n <= {MAX_CANONICAL_PARTIES}")
    for omega in inject:
        if omega.n != n:
            raise InputError(f"injected table has {omega.n} parties, expected {n}")

    logger.info(f"Sampling {count} random {n}-party tables (seed {seed})")
    start = time.perf_counter()
    size = 1 << n
    dtype = table_dtype(n)
    rng = generator(seed)
    rows_per_chunk = max(1, _CHUNK_ENTRIES >> n)

    def chunks() -> Iterator[NDArray[np.integer]]:
        if inject:
            yield np.array([omega.table for omega in inject], dtype=dtype)
        remaining = count
        while remaining > 0:
            rows = min(rows_per_chunk, remaining)
            yield rng.integers(0, size, size=(rows, size), dtype=dtype)
            remaining -= rows

    process_count = 0
    no_global_past_count = 0
    retained: list[ProcessTable] = []
    classes: set[ProcessTable] = set()
    for tables in chunks():
        processes = tables[classical_mask(tables, n)]
        passing = processes[no_global_past_mask(processes, n, allow_self)]
        process_count += len(processes)
        no_global_past_count += len(passing)
        if canonical:
            classes.update(canonicalize(ProcessTable.from_array(n, row)) for row in passing)
        else:
            for row in passing[: max(0, cap - len(retained))]:
                retained.append(ProcessTable.from_array(n, row))

    representatives = tuple(retained)
    canonical_class_count = 0
    if canonical:
        canonical_class_count = len(classes)
        representatives = tuple(sorted(classes, key=lambda t: t.table)[:cap])
        if canonical_class_count > cap:
            logger.info(f"Retaining {cap} of {canonical_class_count} canonical classes")

    return SearchReport(
        n=n,
        total_candidates=count + len(inject),
        process_count=process_count,
        no_global_past_count=no_global_past_count,
        canonical_class_count=canonical_class_count,
        elapsed=time.perf_counter() - start,
        representatives=representatives,
        sampled=True,
    )
