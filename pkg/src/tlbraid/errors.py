"""Exception hierarchy shared by every tlbraid module."""


class BraidError(Exception):
    """Base class for all tlbraid errors."""


class ShapeError(BraidError, ValueError):
    pass


class EmptyProduct(BraidError, ValueError):
    pass


class DenseLimitExceeded(BraidError, ValueError):
    pass


class OutOfUnitaryWindow(BraidError, ValueError):
    """Raised when d or a^2 falls outside the window where the Jones representation is unitary."""


class PhaseError(BraidError, ValueError):
    pass


class PivotCollision(BraidError, ValueError):
    pass


class InvalidInvolution(BraidError, ValueError):
    pass


class ArityError(BraidError, ValueError):
    pass


class LevelError(BraidError, ValueError):
    pass


class PartitionError(BraidError, ValueError):
    pass


class NormError(BraidError, ValueError):
    pass


class BelowThreshold(BraidError, ValueError):
    """The component amplitude is too small for a unitary connector gate."""

    def __init__(self, alpha2: float, message: str | None = None):
        self.alpha2 = alpha2
        super().__init__(message or f"|alpha|^2 = {alpha2:.6g} is below 1/4")


class PositionError(BraidError, ValueError):
    """A register position (1-based) is outside 1..n."""


class DslError(BraidError):
    """Base for circuit-language diagnostics; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}")


_ENDINGS = ("end of line", "end of input")


class DslSyntaxError(DslError):
    def __init__(self, line: int, col: int, expected: str, found: str | None = None):
        self.expected = expected
        self.found = found
        shown = found if found in _ENDINGS else repr(found)
        msg = f"expected {expected}" + (f", found {shown}" if found is not None else "")
        super().__init__(msg, line, col)


class DslSemanticError(DslError):
    pass


class DslRuntimeError(DslError):
    """Failure while executing statement number ``index`` (0-based, header excluded)."""

    def __init__(self, index: int, line: int, message: str):
        self.index = index
        super().__init__(f"statement {index}: {message}", line, 1)
