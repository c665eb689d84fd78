"""Exception hierarchy. Every error carries enough context to rebuild the failing call."""


class BrinvError(Exception):
    """Base class for all library errors."""


class BoxNotInPattern(BrinvError):
    pass


class DepthCapExceeded(BrinvError):
    pass


class NotSiblings(BrinvError):
    pass


class NotATiling(BrinvError):
    pass


class NoCommonLowerBound(BrinvError):
    pass


class BudgetExceeded(BrinvError):
    def __init__(self, message, explored=None):
        super().__init__(message)
        self.explored = explored


class NonHierarchicalFrame(BrinvError):
    pass


class BaseMismatch(BrinvError):
    pass


class PreconditionViolated(BrinvError):
    pass


class NotDisjoint(BrinvError):
    pass


class SizeMismatch(BrinvError):
    pass


class NotBijective(BrinvError):
    pass


class BoxNotBelowDomain(BrinvError):
    pass


class NotBoxWorld(BrinvError):
    pass


class NoEdge(BrinvError):
    pass


class StarSearchBudgetExceeded(BudgetExceeded):
    pass


class CertificateViolation(BrinvError):
    """A cardinality or ordering certificate failed.  The offending instance is
    preserved verbatim in ``instance`` so it can be replayed."""

    def __init__(self, message, instance=None):
        super().__init__(message)
        self.instance = instance


class UnknownSuite(BrinvError):
    pass


class ParseError(BrinvError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column})" if column is not None else ")")
        super().__init__(message + loc)
        self.line = line
        self.column = column


class InvariantViolation(BrinvError):
    pass
