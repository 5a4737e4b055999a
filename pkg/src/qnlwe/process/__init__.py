from .fileformat import format_process, parse_process, read_process, write_process
from .intervention import Func, Intervention, all_interventions, apply_intervention
from .table import ProcessTable, afbw, evaluate
from .verifier import (
    ClassicalVerdict,
    FixedPointWitness,
    SignalingMatrix,
    check_classical_process,
    double_fixed_point_witness,
    fixed_points,
    has_no_global_past,
    is_classical_process,
    reduce,
    signaling_relation,
)
