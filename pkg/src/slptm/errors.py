"""Exception types shared across the package."""


class UnboundVariable(ValueError):
    pass


class NotHorn(ValueError):
    pass


class NotDomainRestricted(ValueError):
    pass


class GroundingTooLarge(RuntimeError):
    """Raised when naive grounding would exceed a caller-supplied clause budget."""

    def __init__(self, size, limit):
        super().__init__(f"naive grounding has {size} clause instances, limit is {limit}")
        self.size = size
        self.limit = limit


class BaseTooLarge(ValueError):
    pass


class HorizonError(ValueError):
    """The tape length p(n) cannot hold the input (or is zero)."""


class InputTooLong(HorizonError):
    pass


class BoundExceeded(ValueError):
    pass


class InvalidRun(ValueError):
    pass


class MalformedModel(ValueError):
    pass


class ParseError(SyntaxError):
    """Syntax error in a program or machine file, with 1-based line/column."""

    def __init__(self, message, line=None, column=None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.lineno = line
        self.offset = column


class SemanticError(ValueError):
    pass
