"""Disjoint sum-of-products covers via cube splitting and weight ordering.

The pieces compose bottom-up: `cubes` is the bit-level cube algebra,
`covers` adds cube lists, containment and tautology checking, `minimize`
rebuilds small SOPs between splitting rounds, `engine` turns an SOP into
a pairwise-disjoint cover, `partial` relaxes disjointness on a shared
region, `verify` holds the point-level oracles, and `pla`/`cli` do the
file format and command-line plumbing.
"""

from .covers import (
    Cover,
    EnumerationCapExceeded,
    FunctionSpec,
    cover_contains_cube,
    cover_intersects_cube,
    cover_point_mask,
    enumerate_minterm_counts,
    is_tautology,
    normalize,
)
from .cubes import (
    ContractViolation,
    Cube,
    DimensionMismatch,
    common_literal_count,
    contains,
    disjoint_sharp,
    intersect,
)
from .engine import (
    SORT_DIMENSION_WEIGHT,
    SORT_POLICIES,
    SORT_WEIGHT_DIMENSION,
    DsopConfig,
    ProgressError,
    WeightedCube,
    dsop,
    relative_weight,
    sort_cubes,
    weight_all,
)
from .minimize import (
    MinimizerBackend,
    MinimizerBackendError,
    build_sop,
    expand_cube,
    irredundant,
)
from .partial import PartialSpec, partial_break, partial_dsop
from .pla import (
    PlaFile,
    PlaParseError,
    merged_product_count,
    parse_pla,
    split_outputs,
    write_pla,
)
from .verify import (
    VerificationReport,
    chain_family,
    exact_min_dsop,
    verify_dsop,
    verify_partial_dsop,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ContractViolation",
    "Cube",
    "DimensionMismatch",
    "common_literal_count",
    "contains",
    "disjoint_sharp",
    "intersect",
    "Cover",
    "EnumerationCapExceeded",
    "FunctionSpec",
    "cover_contains_cube",
    "cover_intersects_cube",
    "cover_point_mask",
    "enumerate_minterm_counts",
    "is_tautology",
    "normalize",
    "MinimizerBackend",
    "MinimizerBackendError",
    "build_sop",
    "expand_cube",
    "irredundant",
    "SORT_DIMENSION_WEIGHT",
    "SORT_POLICIES",
    "SORT_WEIGHT_DIMENSION",
    "DsopConfig",
    "ProgressError",
    "WeightedCube",
    "dsop",
    "relative_weight",
    "sort_cubes",
    "weight_all",
    "PartialSpec",
    "partial_break",
    "partial_dsop",
    "VerificationReport",
    "chain_family",
    "exact_min_dsop",
    "verify_dsop",
    "verify_partial_dsop",
    "PlaFile",
    "PlaParseError",
    "merged_product_count",
    "parse_pla",
    "split_outputs",
    "write_pla",
]
