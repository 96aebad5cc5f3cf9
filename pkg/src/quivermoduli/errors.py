"""Exception types and the CLI exit-code taxonomy."""


class QuiverModuliError(Exception):
    """Base class for all library errors."""


class SchemaError(QuiverModuliError):
    """Malformed or inconsistent input data (JSON parsing, shape mismatches)."""


class NotDecidableError(QuiverModuliError):
    """The requested decision procedure is not implemented for these inputs.

    Raised instead of guessing, e.g. norm membership in Q(sqrt(m)) for m != -1.
    """


class NotInvertibleError(QuiverModuliError):
    """Inversion of a non-unit (zero divisor or zero reduced norm)."""


class BudgetExceededError(QuiverModuliError):
    """An enumeration would exceed the configured resource budget."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class InconclusiveError(QuiverModuliError):
    """A randomized or certificate-based search ended without an answer.

    Never used to hide a wrong result: callers receive this instead of an
    unverified claim.  Carries the seed needed to replay the search.
    """

    def __init__(self, message, seed=None):
        super().__init__(message)
        self.seed = seed


class InvariantError(QuiverModuliError):
    """An internal mathematical invariant failed; indicates a bug, not bad input."""


# Exit codes for the command-line interface.  Mathematically negative answers
# (e.g. "not semistable", "orbit not Galois-fixed") are still exit 0.
EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_INCONCLUSIVE = 4
EXIT_INVARIANT = 5
