from .construction import (
    ensemble_from_process,
    find_nonorthogonal_pair,
    is_orthonormal_exact,
    local_obstruction_report,
    process_from_ensemble,
)
from .fileformat import format_ensemble, parse_ensemble, read_ensemble, write_ensemble
from .fixtures import cyclic_ensemble, game_ensemble, shift
from .labels import Ensemble, StateLabel
