"""Integer complexity, integer defect, and exact verification of the
defect spectrum near the bottom of each residue class."""

from .defect import (
    D,
    D_from_defect,
    Defect,
    Dinterp_check,
    E,
    L,
    Threshold,
    compare_defect_threshold,
    compare_defect_value,
    compare_defects,
    defect_of,
    ratio_of,
    threshold,
)
from .engine import ComplexityTable, build_fast, build_oracle, numbers_with_complexity
from .errors import (
    ArityError,
    ClassificationConflictError,
    ComplexityError,
    CorruptCacheError,
    EmptyRangeError,
    ExcludedCaseError,
    InsufficientTableError,
    RankExhaustedError,
    UndefinedArgumentError,
)

__all__ = [
    "ArityError",
    "ClassificationConflictError",
    "ComplexityError",
    "ComplexityTable",
    "CorruptCacheError",
    "D",
    "D_from_defect",
    "Defect",
    "Dinterp_check",
    "E",
    "EmptyRangeError",
    "ExcludedCaseError",
    "InsufficientTableError",
    "L",
    "RankExhaustedError",
    "Threshold",
    "UndefinedArgumentError",
    "build_fast",
    "build_oracle",
    "compare_defect_threshold",
    "compare_defect_value",
    "compare_defects",
    "defect_of",
    "numbers_with_complexity",
    "ratio_of",
    "threshold",
]
