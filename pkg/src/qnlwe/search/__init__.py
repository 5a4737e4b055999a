from .canonical import GroupElement, canonicalize, canonicalize_batch, group_elements, transform
from .enumerate import (
    ExhaustiveSearch,
    SearchReport,
    canonical_classes,
    classical_process_tables,
    enumerate_classical_processes,
    enumerate_no_global_past,
    exhaustive_search,
    sample_functions,
)
