"""Exception hierarchy shared by every module."""


class DiscreteZError(Exception):
    """Base class for all toolkit errors."""


class ParseError(DiscreteZError, ValueError):
    def __init__(self, message, token=None, line=None, column=None):
        self.token = token
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}, column {column}"
        super().__init__(message + where)


class ValidationError(DiscreteZError, ValueError):
    pass


class PreconditionError(DiscreteZError, ValueError):
    pass


class DomainError(DiscreteZError, ValueError):
    pass


class SingularityError(DiscreteZError, ZeroDivisionError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"nu is singular at d = {point}: f(d) equals the level")


class InsufficientDensityError(DiscreteZError):
    def __init__(self, requested, reached):
        self.requested = requested
        self.reached = reached
        super().__init__(
            f"insufficient density at truncation: wanted depth {requested}, "
            f"search reached depth {reached}"
        )


class DependenceError(DiscreteZError, ValueError):
    pass


class EvaluationError(DiscreteZError):
    def __init__(self, message, subterm=None):
        self.subterm = subterm
        if subterm is not None:
            message = f"{message}: {subterm}"
        super().__init__(message)
