import numpy as np
from loguru import logger
from numpy.typing import NDArray

from ..errors import InputError
from ..process.table import ProcessTable
from ..utils import party_mask, word_to_bits
from .labels import Ensemble, StateLabel


def ensemble_from_process(omega: ProcessTable) -> Ensemble:
    """S_omega = {H^omega(x)|x>}, state x at index x."""
    return Ensemble(
        omega.n,
        tuple(StateLabel.from_bits(omega(x), x, omega.n) for x in range(1 << omega.n)),
    )


def process_from_ensemble(ensemble: Ensemble) -> ProcessTable:
    """Reads off table[xbits(s)] = basisbits(s) for every state s."""
    n = ensemble.n
    owners: dict[int, StateLabel] = {}
    for s in ensemble.states:
        if s.xbits in owners:
            raise InputError(
                f'states "{owners[s.xbits]}" and "{s}" share the x-bits '
                f"{word_to_bits(s.xbits, n)}"
            )
        owners[s.xbits] = s
    # Every pattern appears once: 2^n states, no collision
    return ProcessTable(n, tuple(owners[x].basisbits for x in range(1 << n)))


def _bit_arrays(ensemble: Ensemble) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
    basis = np.array([s.basisbits for s in ensemble.states], dtype=np.int64)
    xbits = np.array([s.xbits for s in ensemble.states], dtype=np.int64)
    return basis, xbits


def _orthogonality_matrix(ensemble: Ensemble) -> NDArray[np.bool_]:
    # [j, k] true iff some party shares the basis and holds different bits
    basis, xbits = _bit_arrays(ensemble)
    full = (1 << ensemble.n) - 1
    same_basis = ~(basis[:, None] ^ basis[None, :]) & full
    return (same_basis & (xbits[:, None] ^ xbits[None, :])) != 0


def find_nonorthogonal_pair(ensemble: Ensemble) -> tuple[int, int] | None:
    """First pair (j, k), j < k, of states with a nonzero inner product."""
    orthogonal = _orthogonality_matrix(ensemble)
    bad = np.argwhere(np.triu(~orthogonal, k=1))
    if len(bad) == 0:
        return None
    j, k = bad[0]
    logger.debug(f'States "{ensemble[j]}" and "{ensemble[k]}" are not orthogonal')
    return int(j), int(k)


def is_orthonormal_exact(ensemble: Ensemble) -> bool:
    """Exact test with integer arithmetic only.

    A product overlap vanishes iff some party contributes a zero factor, which
    happens only for the same basis and different bits; mixed bases give +-1/sqrt(2).
    """
    return find_nonorthogonal_pair(ensemble) is None


def local_obstruction_report(ensemble: Ensemble) -> tuple[bool, ...]:
    """Entry i is true iff party i meets both bases across the ensemble.

    All-true is a necessary condition for nonlocality without entanglement, as
    no party can start an LOCC protocol with a measurement that keeps every
    state orthogonal. It does not decide LOCC indistinguishability.
    """
    n = ensemble.n
    basis, _ = _bit_arrays(ensemble)
    return tuple(
        bool(np.any(basis & party_mask(i, n)) and np.any(~basis & party_mask(i, n)))
        for i in range(n)
    )
