"""Exception hierarchy shared by all gkcomplex modules."""


class GKError(Exception):
    """Base class for every error raised by gkcomplex."""


class DiagramError(GKError, ValueError):
    pass


class NonTrivalent(DiagramError):
    pass


class Disconnected(DiagramError):
    pass


class BadPairing(DiagramError):
    pass


class DegreeOdd(GKError, ValueError):
    pass


class DegreeTooLarge(GKError, ValueError):
    pass


class DegreeMismatch(GKError, ValueError):
    pass


class TadpoleTest(GKError, ValueError):
    pass


class NegativeDim(GKError, ValueError):
    pass


class NoValidPrime(GKError, ArithmeticError):
    pass


class JgdError(GKError, ValueError):
    """Problem in a ``.jgd`` document, located by line and column."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class JgdSyntaxError(JgdError):
    pass


class JgdSemanticError(JgdError):
    pass
