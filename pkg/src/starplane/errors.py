"""Error types shared by the library and mapped to CLI exit codes."""


class StarplaneError(Exception):
    exit_code = 2
    kind = "error"


class ParseError(StarplaneError, ValueError):
    """Syntax or vocabulary error in an expression; carries a position."""

    exit_code = 1
    kind = "parse"

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} at position {position}")
        self.position = position
        self.bare = message


class PreconditionError(StarplaneError, ValueError):
    exit_code = 2
    kind = "precondition"


class DivergenceError(StarplaneError, ArithmeticError):
    exit_code = 3
    kind = "divergence"
