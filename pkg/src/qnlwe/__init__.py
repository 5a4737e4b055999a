from .ensemble import (
    Ensemble,
    StateLabel,
    ensemble_from_process,
    is_orthonormal_exact,
    local_obstruction_report,
    process_from_ensemble,
    shift,
)
from .errors import InputError, NonOrthonormalError, ParseError, QnlweError
from .process import (
    Intervention,
    ProcessTable,
    afbw,
    has_no_global_past,
    is_classical_process,
)
