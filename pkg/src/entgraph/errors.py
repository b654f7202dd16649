"""Exception hierarchy.

Every error raised on bad user input derives from :class:`EntgraphError`,
which is itself a ``ValueError`` so generic callers can catch it that way.
"""


class EntgraphError(ValueError):
    pass


class ZeroVectorError(EntgraphError):
    """Amplitude vector has (numerically) zero norm."""


class BadLengthError(EntgraphError):
    """Amplitude vector length is not 4, 8 or 16."""


class BadSubsetError(EntgraphError):
    """Qubit subset is empty, the full register, or out of range."""


class BadQubitError(EntgraphError):
    pass


class BadDimensionError(EntgraphError):
    """Operand has the wrong number of qubits / wrong matrix size."""


class NotHermitianError(EntgraphError):
    pass


class NotPSDError(EntgraphError):
    pass


class NotUnitaryError(EntgraphError):
    pass


class OutOfRangeError(EntgraphError):
    pass


class BadParamsError(EntgraphError):
    """Representative or canonical-form parameters are malformed."""


class ConstraintViolation(EntgraphError):
    """A family's parameter inequality does not hold.

    ``constraint`` carries the human readable inequality that failed.
    """

    def __init__(self, label, constraint, detail=""):
        self.label = label
        self.constraint = constraint
        msg = f"class {label}: constraint {constraint} violated"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NeverSatisfiableError(EntgraphError):
    """Rejection sampling gave up."""
