"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation's stated precondition or size guard was violated."""


class NoCrossingError(PreconditionError):
    """The transcendental balance equation has no root in its bracket
    (the degree scale is below the solvable threshold)."""


class InternalCheckError(RuntimeError):
    """A construction violated one of its own invariants; indicates a bug,
    not bad input."""
