class WorkbenchError(ValueError):
    """Base class of every domain failure raised by the workbench"""


class CapacityError(WorkbenchError):
    """A configured WORKBENCH_MAX_* bound would be exceeded"""

    def __init__(self, what, size, limit):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: {size} exceeds the configured limit {limit}")


class PrecisionError(WorkbenchError):
    """The result would carry no guaranteed digit"""


class FieldMismatchError(WorkbenchError):
    """Operands live in different fields"""


class DivisionByZeroError(WorkbenchError, ZeroDivisionError):
    pass


class DepthExceededError(WorkbenchError):
    """A character was evaluated below its depth"""

    def __init__(self, required_depth, valuation=None):
        self.required_depth = required_depth
        self.valuation = valuation
        detail = f" (argument of valuation {valuation})" if valuation is not None else ""
        super().__init__(f"character depth too small: depth {required_depth} required{detail}")


class SpecError(WorkbenchError):
    """A spec document is well formed but not acceptable"""


class SpecSyntaxError(SpecError):

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class SortError(SpecError):
    pass


class EvaluationError(WorkbenchError):
    pass


class NotInCeError(WorkbenchError):
    pass


class SmallCharacteristicError(WorkbenchError):
    """The residue characteristic divides a quantity the construction divides by"""


class DivergenceError(WorkbenchError):
    pass


class SingularMatrixError(WorkbenchError):
    pass
