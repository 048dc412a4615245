"""Exception hierarchy shared across the package.

Every error carries enough context (row, column, group index, ...) to be
actionable from a CLI diagnostic line.
"""


class ProxyFairError(Exception):
    """Base class for all package errors."""


class DataError(ProxyFairError):
    """Problems with input data or schemas."""


class ConfigError(ProxyFairError):
    """Problems with run configuration."""


class TrainingError(ProxyFairError):
    """Problems arising during optimization."""


class MissingColumn(DataError):
    def __init__(self, column):
        self.column = column
        super().__init__(f"column {column!r} not found")


class NonBinarySensitive(DataError):
    def __init__(self, row, column):
        self.row = row
        self.column = column
        super().__init__(f"sensitive cell at row {row}, column {column!r} is not 0/1")


class NonBinaryLabel(DataError):
    def __init__(self, row, column):
        self.row = row
        self.column = column
        super().__init__(f"label cell at row {row}, column {column!r} is not 0/1")


class UnparseableCell(DataError):
    def __init__(self, row, column):
        self.row = row
        self.column = column
        super().__init__(f"cannot parse cell at row {row}, column {column!r}")


class UnknownCode(DataError):
    def __init__(self, column, code):
        self.column = column
        self.code = code
        super().__init__(f"column {column!r}: code {code!r} not covered by recipe")


class DegenerateSplit(DataError):
    def __init__(self, message="both halves of a split must be nonempty"):
        super().__init__(message)


class EmptyGroup(DataError):
    def __init__(self, group):
        self.group = group
        super().__init__(f"group {group} has zero total weight")


class DegenerateProxy(DataError):
    def __init__(self, group, total):
        self.group = group
        self.total = total
        super().__init__(f"proxy weights for group {group} sum to {total:g} (<= 1e-9)")


class NonFiniteInput(DataError):
    def __init__(self, what="input"):
        super().__init__(f"{what} contains non-finite values")


class DimensionMismatch(DataError):
    def __init__(self, expected, got):
        super().__init__(f"expected dimension {expected}, got {got}")


class NonPositiveInput(DataError):
    def __init__(self, name, value):
        super().__init__(f"{name} must be positive, got {value!r}")


class MOutOfRange(DataError):
    def __init__(self, m):
        super().__init__(f"transform requires proxy range [0,1]; model has M={m!r}")


class NonFiniteLoss(TrainingError):
    def __init__(self, round_index, value):
        self.round_index = round_index
        super().__init__(f"training diverged at round {round_index}: loss={value!r}")


class NonFiniteDual(TrainingError):
    def __init__(self, round_index):
        super().__init__(f"dual variables became non-finite at round {round_index}")


class ConfigOverflow(ConfigError):
    def __init__(self, rounds, samples, budget):
        super().__init__(
            f"theoretical schedule T={rounds}, W={samples} exceeds budget {budget}; "
            "pass explicit overrides to run a scaled-down schedule"
        )


class FTooLarge(ConfigError):
    def __init__(self, size, limit=64):
        super().__init__(f"explicit rule family has {size} members; limit is {limit}")


class EmptyInput(DataError):
    def __init__(self, what="input"):
        super().__init__(f"{what} is empty")


class NoResults(DataError):
    def __init__(self, where):
        super().__init__(f"no results found in {where}")
