from collections.abc import Mapping, Set
from dataclasses import dataclass, field

import numpy as np
from loguru import logger

from ..errors import InputError
from ..utils import bit, check_word, party_mask, word_to_bits
from .intervention import Func, Intervention, all_interventions
from .table import ProcessTable


def fixed_points(omega: ProcessTable, mu: Intervention) -> frozenset[int]:
    """Every p with p = omega(mu(p)), found by scanning all 2^n candidates."""
    if mu.n != omega.n:
        raise InputError(
            f"intervention has {mu.n} parties but the process has {omega.n}"
        )
    candidates = np.arange(1 << omega.n)
    images = omega.as_array()[mu.apply_all(candidates)]
    return frozenset(int(p) for p in np.flatnonzero(images == candidates))


@dataclass(frozen=True)
class ClassicalVerdict:
    is_process: bool
    # First intervention (lexicographic order) without a unique fixed point
    violation: Intervention | None = None
    violation_fixed_points: frozenset[int] = frozenset()

    def __bool__(self) -> bool:
        return self.is_process


def check_classical_process(omega: ProcessTable) -> ClassicalVerdict:
    """Checks the unique fixed-point condition for all 4^n interventions.

    Costs O(4^n * 2^n); practical up to n of about 8.
    """
    logger.debug(f"Checking {4 ** omega.n} interventions on a {omega.n}-party table")
    table = omega.as_array()
    candidates = np.arange(1 << omega.n)
    for mu in all_interventions(omega.n):
        # Constant interventions always have the single fixed point omega(c)
        if mu.is_constant:
            continue
        hits = np.flatnonzero(table[mu.apply_all(candidates)] == candidates)
        if len(hits) != 1:
            logger.debug(f"Intervention {mu} has {len(hits)} fixed points")
            return ClassicalVerdict(
                False, mu, frozenset(int(p) for p in hits)
            )
    return ClassicalVerdict(True)


def is_classical_process(omega: ProcessTable) -> bool:
    return check_classical_process(omega).is_process


@dataclass(frozen=True)
class SignalingMatrix:
    """entries[i][k] is true iff omega_i depends on x_k (0-based parties)."""

    n: int
    entries: tuple[tuple[bool, ...], ...]
    # (i, k) -> an input x with omega_i(x) != omega_i(x with bit k flipped)
    witnesses: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def receives_signal(self, i: int, allow_self: bool = False) -> bool:
        return any(
            self.entries[i][k] for k in range(self.n) if allow_self or k != i
        )

    def __str__(self) -> str:
        return "\n".join(
            "".join("1" if e else "0" for e in row) for row in self.entries
        )


def signaling_relation(omega: ProcessTable) -> SignalingMatrix:
    n = omega.n
    table = omega.as_array()
    inputs = np.arange(1 << n)
    entries = [[False] * n for _ in range(n)]
    witnesses: dict[tuple[int, int], int] = {}
    for k in range(n):
        changed = table ^ table[inputs ^ party_mask(k, n)]
        for i in range(n):
            hits = np.flatnonzero(changed & party_mask(i, n))
            if len(hits) > 0:
                entries[i][k] = True
                witnesses[(i, k)] = int(hits[0])
    return SignalingMatrix(n, tuple(tuple(row) for row in entries), witnesses)


def has_no_global_past(omega: ProcessTable, allow_self: bool = False) -> bool:
    """True iff every party receives a signal through the process.

    By default the signal must come from another party; allow_self also
    accepts a dependence of omega_i on x_i.
    """
    relation = signaling_relation(omega)
    return all(relation.receives_signal(i, allow_self) for i in range(omega.n))


def reduce(
    omega: ProcessTable, keep: Set[int], fixed: Mapping[int, int]
) -> ProcessTable:
    """Restricts omega to the parties in keep, pinning the others' inputs.

    The first kept party (lowest index) becomes party 0 of the result.
    """
    n = omega.n
    kept = sorted(keep)
    if not kept:
        raise InputError("reduce needs at least one kept party")
    if any(not 0 <= i < n for i in kept) or any(not 0 <= i < n for i in fixed):
        raise InputError(f"party indices must be in 0..{n - 1}")
    if set(kept) & set(fixed):
        raise InputError(f"parties {sorted(set(kept) & set(fixed))} are both kept and fixed")
    if set(kept) | set(fixed) != set(range(n)):
        missing = sorted(set(range(n)) - set(kept) - set(fixed))
        raise InputError(f"parties {missing} are neither kept nor fixed")

    base = 0
    for i, b in fixed.items():
        if b not in (0, 1):
            raise InputError(f"party {i} is pinned to {b}, which is not a bit")
        base |= b * party_mask(i, n)

    k = len(kept)
    table = []
    for z in range(1 << k):
        x = base
        for j, i in enumerate(kept):
            x |= bit(z, j, k) * party_mask(i, n)
        w = omega(x)
        out = 0
        for i in kept:
            out = (out << 1) | bit(w, i, n)
        table.append(out)
    return ProcessTable(k, tuple(table))


@dataclass(frozen=True)
class FixedPointWitness:
    positions: tuple[int, ...]
    reduced: ProcessTable
    intervention: Intervention
    # a = reduced(x') and b = reduced(y'), both fixed under the intervention
    a: int
    b: int
    fixed_points: frozenset[int]


def double_fixed_point_witness(
    omega: ProcessTable, x: int, y: int
) -> FixedPointWitness:
    """Turns a non-orthogonal pair of ensemble states into an intervention with
    two fixed points on the process reduced to the positions where x and y differ.
    """
    n = omega.n
    check_word(x, n)
    check_word(y, n)
    if x == y:
        raise InputError("the two inputs must differ")

    positions = tuple(i for i in range(n) if bit(x, i, n) != bit(y, i, n))
    wx, wy = omega(x), omega(y)
    for i in positions:
        if bit(wx, i, n) == bit(wy, i, n):
            raise InputError(
                f"orthogonality holds for the pair {word_to_bits(x, n)}, "
                f"{word_to_bits(y, n)}: party {i + 1} uses the same basis in both"
            )

    # x and y agree outside positions, so pinning to x equals pinning to y.
    fixed = {i: bit(x, i, n) for i in range(n) if i not in positions}
    reduced = reduce(omega, set(positions), fixed)

    k = len(positions)
    x_reduced = 0
    y_reduced = 0
    for i in positions:
        x_reduced = (x_reduced << 1) | bit(x, i, n)
        y_reduced = (y_reduced << 1) | bit(y, i, n)
    a = reduced(x_reduced)
    b = reduced(y_reduced)

    # alpha(w) = x' + a + w: identity where x'_j = a_j, negation otherwise
    shift = x_reduced ^ a
    alpha = Intervention(
        tuple(Func.NOT if bit(shift, j, k) else Func.ID for j in range(k))
    )
    points = fixed_points(reduced, alpha)
    assert a in points and b in points and a != b
    logger.debug(
        f"Intervention {alpha} on parties {[i + 1 for i in positions]} "
        f"has fixed points {sorted(points)}"
    )
    return FixedPointWitness(positions, reduced, alpha, a, b, points)
