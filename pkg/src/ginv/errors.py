"""Exception hierarchy shared by every module."""


class GinvError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(GinvError, ValueError):
    pass


class InvalidMatrix(GinvError, ValueError):
    """Raised for empty, non-2D, or non-finite input."""


class SvdError(GinvError, ArithmeticError):
    """The SVD did not converge."""


class NotGroupMatrix(GinvError, ValueError):
    """A core inverse was required for a matrix of index > 1."""

    def __init__(self, name="A", index=None):
        self.name = name
        self.index = index
        msg = f"{name} is not a group matrix"
        if index is not None:
            msg += f" (index {index})"
        super().__init__(msg)


class NotApplicable(GinvError):
    """A block formula's hypothesis does not hold; ``clause`` names it."""

    def __init__(self, clause):
        self.clause = clause
        super().__init__(f"block formula not applicable: {clause}")


class PredicateFailed(GinvError):
    """A theorem hypothesis required by an operation is false."""

    def __init__(self, predicate, residual=None):
        self.predicate = predicate
        self.residual = residual
        msg = f"hypothesis failed: {predicate}"
        if residual is not None:
            msg += f" (residual {residual:.3e})"
        super().__init__(msg)


class BothZero(GinvError, ValueError):
    """Parallel sum requested with both operands zero."""


class ParseError(GinvError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class UnknownTheorem(GinvError, KeyError):
    pass
