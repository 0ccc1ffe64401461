"""Exception types. Every error carries a machine-readable ``code``."""


class HopfPIError(Exception):
    code = "ERROR"
    exit_code = 1


class DimensionMismatch(HopfPIError, ValueError):
    code = "DIMENSION_MISMATCH"
    exit_code = 3


class ModelParseError(HopfPIError, ValueError):
    code = "PARSE_ERROR"
    exit_code = 3

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class ValidationError(HopfPIError, ValueError):
    code = "VALIDATION_ERROR"
    exit_code = 4


class AssociativityError(ValidationError):
    """Structure constants violate associativity on basis triple ``triple``."""

    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"associativity fails on basis triple {triple}")


class ProductRuleViolation(ValidationError):
    def __init__(self, name, kind, pair):
        self.pair = pair
        super().__init__(f"operator {name!r} violates its {kind} rule on basis pair {pair}")


class SplitFailure(HopfPIError):
    code = "SPLIT_FAILURE"
    exit_code = 5


class NotHSimple(HopfPIError):
    code = "NOT_H_SIMPLE"
    exit_code = 6


class NotHInvariant(HopfPIError):
    code = "NOT_H_INVARIANT"
    exit_code = 7


class SizeLimitExceeded(HopfPIError):
    code = "SIZE_LIMIT"
    exit_code = 8


class NonIntegralMultiplicity(HopfPIError):
    code = "NONINTEGRAL_MULTIPLICITY"
    exit_code = 9


class VanishingViolation(HopfPIError):
    code = "VIOLATION"
    exit_code = 10


class NotApproxIdempotent(HopfPIError, ValueError):
    code = "NOT_APPROX_IDEMPOTENT"
    exit_code = 11
