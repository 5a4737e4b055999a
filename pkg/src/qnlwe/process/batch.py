"""Predicates over many tables at once.

A batch is a 2-D integer array of shape (count, 2^n) whose rows are process
tables; each function returns a boolean mask over the rows.
"""

import numpy as np
from numpy.typing import NDArray

from ..utils import party_mask
from .intervention import all_interventions


def table_dtype(n: int) -> type[np.unsignedinteger]:
    return np.uint8 if n <= 8 else np.uint16


def classical_mask(tables: NDArray[np.integer], n: int) -> NDArray[np.bool_]:
    """Rows with a unique fixed point under every intervention.

    Interventions run in lexicographic order and rows are dropped as soon as one
    intervention has a fixed-point count other than one, so the cost falls
    quickly with the number of surviving rows.
    """
    candidates = np.arange(1 << n, dtype=tables.dtype)
    alive = np.arange(len(tables))
    current = tables
    for mu in all_interventions(n):
        if len(alive) == 0:
            break
        if mu.is_constant:
            continue
        counts = np.count_nonzero(current[:, mu.apply_all(candidates)] == candidates, axis=1)
        keep = counts == 1
        if not keep.all():
            alive = alive[keep]
            current = current[keep]

    mask = np.zeros(len(tables), dtype=bool)
    mask[alive] = True
    return mask


def signaling_masks(tables: NDArray[np.integer], n: int) -> NDArray[np.bool_]:
    """Array of shape (count, n, n); [r, i, k] is true iff omega_i depends on x_k."""
    inputs = np.arange(1 << n)
    result = np.zeros((len(tables), n, n), dtype=bool)
    for k in range(n):
        changed = tables ^ tables[:, inputs ^ party_mask(k, n)]
        for i in range(n):
            result[:, i, k] = np.any(changed & party_mask(i, n), axis=1)
    return result


def no_global_past_mask(
    tables: NDArray[np.integer], n: int, allow_self: bool = False
) -> NDArray[np.bool_]:
    relation = signaling_masks(tables, n)
    if not allow_self:
        relation[:, np.arange(n), np.arange(n)] = False
    return np.all(np.any(relation, axis=2), axis=1)


def orthonormal_mask(tables: NDArray[np.integer], n: int) -> NDArray[np.bool_]:
    """Rows whose induced ensemble {H^omega(x)|x>} is orthonormal.

    States x != y are orthogonal iff some party uses the same basis in both
    and holds different bits.
    """
    full = (1 << n) - 1
    mask = np.ones(len(tables), dtype=bool)
    for x in range(1 << n):
        for y in range(x + 1, 1 << n):
            same_basis = ~(tables[:, x] ^ tables[:, y]) & full
            mask &= (same_basis & (x ^ y)) != 0
    return mask
