from __future__ import annotations

from typing import Any


class DOMPError(Exception):
    def __init__(
        self,
        message: str,
        *,
        details: dict[str, Any] | None = None,
    ):
        super().__init__(message)
        self.details = details or {}


# Instance error constants
ERR_INVALID_INSTANCE = "invalid instance"
ERR_INVALID_CARDINALITY = "p must satisfy 1 <= p <= n"
ERR_DIMENSION_MISMATCH = "dimension mismatch"
ERR_NEGATIVE_ENTRY = "negative entry"
ERR_BAD_MAGIC = "expected header 'DOMP 1'"

# Evaluation error constants
ERR_EMPTY_FACILITY_SET = "facility set must not be empty"
ERR_INVALID_FACILITY_SET = "facility set must hold exactly p distinct facilities"
ERR_INVALID_COLUMN = "invalid column"

# Oracle error constants
ERR_ORACLE_LIMIT = "instance too large for oracle"

# GRASP error constants
ERR_INVALID_PARTIAL_SIZE = "partial size must satisfy 0 <= q <= p"

# LP error constants
ERR_LP_DIMENSION = "index out of range for linear program"
ERR_INVALID_BOUNDS = "lower bound must not exceed upper bound"
ERR_LP_ITERATION_LIMIT = "simplex iteration limit reached"
ERR_LP_NUMERICAL = "simplex basis became numerically singular"

# Master error constants
ERR_MASTER_NOT_OPTIMAL = "restricted master is not solved to optimality"
ERR_DUPLICATE_CUT = "cut already present"
ERR_INVALID_CUT = "cut position must satisfy k >= 1"

# Pricing error constants
ERR_INVALID_FIXING = "inconsistent variable fixings"

# Branching error constants
ERR_NO_FRACTIONAL = "no fractional variable to branch on"
ERR_CONSISTENCY = "internal consistency failure"

# WOC error constants
ERR_MODEL_TOO_LARGE = "model exceeds the configured size guard"


class InvalidInstanceError(DOMPError):
    def __init__(self, message: str = ERR_INVALID_INSTANCE, **kw: Any):
        super().__init__(message, **kw)


class InvalidCardinalityError(InvalidInstanceError):
    def __init__(self, message: str = ERR_INVALID_CARDINALITY):
        super().__init__(message)


class InstanceFormatError(InvalidInstanceError):
    def __init__(self, message: str, *, line: int | None = None):
        text = f"line {line}: {message}" if line is not None else message
        super().__init__(text, details={"line": line})
        self.line = line


class DimensionMismatchError(InstanceFormatError):
    def __init__(self, message: str = ERR_DIMENSION_MISMATCH, *, line: int | None = None):
        super().__init__(message, line=line)


class NegativeEntryError(InstanceFormatError):
    def __init__(self, message: str = ERR_NEGATIVE_ENTRY, *, line: int | None = None):
        super().__init__(message, line=line)


class EmptyFacilitySetError(DOMPError):
    def __init__(self, message: str = ERR_EMPTY_FACILITY_SET):
        super().__init__(message)


class InvalidFacilitySetError(DOMPError):
    def __init__(self, message: str = ERR_INVALID_FACILITY_SET):
        super().__init__(message)


class InvalidColumnError(DOMPError):
    def __init__(self, message: str = ERR_INVALID_COLUMN):
        super().__init__(message)


class OracleLimitExceededError(DOMPError):
    def __init__(self, count: int, limit: int):
        super().__init__(
            f"{ERR_ORACLE_LIMIT}: {count} subsets exceed limit {limit}",
            details={"count": count, "limit": limit},
        )
        self.count = count
        self.limit = limit


class InvalidPartialSizeError(DOMPError):
    def __init__(self, message: str = ERR_INVALID_PARTIAL_SIZE):
        super().__init__(message)


class LPDimensionError(DOMPError):
    def __init__(self, message: str = ERR_LP_DIMENSION):
        super().__init__(message)


class InvalidBoundsError(DOMPError):
    def __init__(self, message: str = ERR_INVALID_BOUNDS):
        super().__init__(message)


class LPIterationLimitError(DOMPError):
    def __init__(self, message: str = ERR_LP_ITERATION_LIMIT):
        super().__init__(message)


class LPNumericalError(DOMPError):
    def __init__(self, message: str = ERR_LP_NUMERICAL):
        super().__init__(message)


class MasterNotOptimalError(DOMPError):
    def __init__(self, message: str = ERR_MASTER_NOT_OPTIMAL):
        super().__init__(message)


class DuplicateCutError(DOMPError):
    def __init__(self, message: str = ERR_DUPLICATE_CUT):
        super().__init__(message)


class InvalidCutError(DOMPError):
    def __init__(self, message: str = ERR_INVALID_CUT):
        super().__init__(message)


class InvalidFixingError(DOMPError):
    def __init__(self, message: str = ERR_INVALID_FIXING):
        super().__init__(message)


class NoFractionalVariableError(DOMPError):
    def __init__(self, message: str = ERR_NO_FRACTIONAL):
        super().__init__(message)


class ConsistencyError(DOMPError):
    def __init__(self, message: str = ERR_CONSISTENCY):
        super().__init__(message)


class ModelTooLargeError(DOMPError):
    def __init__(self, message: str = ERR_MODEL_TOO_LARGE):
        super().__init__(message)
