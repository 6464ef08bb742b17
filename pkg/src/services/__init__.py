# nc-rank services

from .logging_service import (
    TraceLoggingService,
    logging_service
)

from .towers import (
    build_asw_tower,
    build_cyclic_extension,
    build_kummer,
    embed_point,
    ensure_root_of_unity,
    finite_field_extension,
    regular_rep_embed,
    verify_asw_tower
)

from .divalg import (
    build_division_algebra,
    evaluation_rank,
    sample_division_property,
    specialize,
    verify_division_relations
)

from .spaces import (
    assemble,
    assembled_rank,
    blowup_space,
    compress_shrunk,
    lift_shrunk,
    reduce_coefficients,
    shrink_value,
    verify_certificate,
    verify_window
)

from .regularity import (
    find_full_window,
    round_rank
)

from .increment import (
    IncrementResult,
    WongSequence,
    increment_or_certify,
    wong_sequence
)

from .reduce import (
    DMTable,
    dm_conclude,
    dm_reduce,
    dm_repair_table,
    greedy_reduce
)

from .driver import (
    BitGrowthMonitor,
    NCRankService,
    ncrank,
    ncrank_service,
    ncrank_small_field
)

from .oracle import (
    max_shrink,
    oracle_rank
)

__all__ = [
    # Logging
    "TraceLoggingService",
    "logging_service",

    # Extensions
    "build_asw_tower",
    "build_cyclic_extension",
    "build_kummer",
    "embed_point",
    "ensure_root_of_unity",
    "finite_field_extension",
    "regular_rep_embed",
    "verify_asw_tower",

    # Division algebras
    "build_division_algebra",
    "evaluation_rank",
    "sample_division_property",
    "specialize",
    "verify_division_relations",

    # Matrix spaces
    "assemble",
    "assembled_rank",
    "blowup_space",
    "compress_shrunk",
    "lift_shrunk",
    "reduce_coefficients",
    "shrink_value",
    "verify_certificate",
    "verify_window",

    # Rounding and windows
    "find_full_window",
    "round_rank",

    # Increment
    "IncrementResult",
    "WongSequence",
    "increment_or_certify",
    "wong_sequence",

    # Reduction
    "DMTable",
    "dm_conclude",
    "dm_reduce",
    "dm_repair_table",
    "greedy_reduce",

    # Driver
    "BitGrowthMonitor",
    "NCRankService",
    "ncrank",
    "ncrank_service",
    "ncrank_small_field",

    # Oracle
    "max_shrink",
    "oracle_rank",
]
