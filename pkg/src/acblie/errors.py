"""Exception types raised by acblie."""


class AcbError(Exception):
    """Base class for all acblie errors."""


class NotALieAlgebra(AcbError):
    """Structure constants violate the Jacobi identity."""

    def __init__(self, defect):
        self.defect = defect
        super().__init__(f"Jacobi identity fails (max defect {defect})")


class ZeroDenominator(AcbError):
    """The Jacobi closure formula divides by zero."""

    def __init__(self, which: str):
        self.which = which
        super().__init__(f"closure formula inapplicable: {which} = 0")


class MalformedF(AcbError):
    """An F tensor that cannot live on a 3-dim almost contact B-metric manifold."""


class InvalidSpec(AcbError, ValueError):
    pass


class ExhaustedRetries(AcbError):
    pass


class NoSolution(AcbError):
    """Inconsistent linear system."""


class UnsupportedClass(AcbError):
    pass


class InputError(AcbError, ValueError):
    """Malformed input document; `line` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
