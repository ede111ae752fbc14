"""Exception hierarchy shared by every module in the package."""


class ComplexityError(Exception):
    """Base class for all package errors."""


class EmptyRangeError(ComplexityError, ValueError):
    pass


class InsufficientTableError(ComplexityError, IndexError):
    """A table lookup or enumeration needs entries beyond ``table.limit``."""

    def __init__(self, needed, limit):
        self.needed = needed
        self.limit = limit
        super().__init__(f"need complexities up to {needed}, table only reaches {limit}")


class UndefinedArgumentError(ComplexityError, ValueError):
    pass


class ExcludedCaseError(ComplexityError, ValueError):
    pass


class RankExhaustedError(ComplexityError, LookupError):
    pass


class ArityError(ComplexityError, ValueError):
    pass


class ClassificationConflictError(ComplexityError):
    pass


class CorruptCacheError(ComplexityError, OSError):
    pass
