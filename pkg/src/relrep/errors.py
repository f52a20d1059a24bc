"""Exception hierarchy shared by every module.

Each class carries the CLI exit code used when it escapes to the command line.
"""


class RelrepError(Exception):
    exit_code = 4


class MalformedInput(RelrepError):
    exit_code = 2


class ParseError(MalformedInput):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ValidationError(RelrepError):
    exit_code = 1

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidSemilattice(ValidationError):
    pass


class NotResiduated(ValidationError):
    def __init__(self, a, c, message=None):
        self.a = a
        self.c = c
        super().__init__(message or f"no residual for a={a}, c={c}")


class UnboundVariable(RelrepError):
    exit_code = 1

    def __init__(self, var):
        self.var = var
        super().__init__(f"variable v{var} is unbound")


class SizeCapExceeded(RelrepError):
    exit_code = 3


class DepthCapExceeded(RelrepError):
    exit_code = 3


class BudgetExhausted(RelrepError):
    exit_code = 3


class BaseMismatch(RelrepError):
    exit_code = 1


class InvalidGenerators(ValidationError):
    pass


class InvalidGoal(ValidationError):
    pass


class MalformedPrenetwork(MalformedInput):
    pass


class IllegalMove(RelrepError):
    exit_code = 1


class MalformedCertificate(MalformedInput):
    pass


class NotKnownExistsWin(RelrepError):
    exit_code = 1


class InternalError(RelrepError):
    exit_code = 4
