"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid parameter (bad prime, bad index, malformed element)."""


class DimensionMismatchError(ValueError):
    """Vector length or ambient space does not match."""


class ContainmentError(ValueError):
    """Quotient requested for a pair that is not nested."""


class ClosureConsistencyError(RuntimeError):
    """A normal closure could not be certified in split form.

    Raised when the generator set would need mixed top/base cosets,
    i.e. the closure contains x^a * h without containing x^a and h
    separately.  This does not happen for the generator sets produced
    by the series and verification code; it guards the public API.
    """


class BudgetError(RuntimeError):
    """Requested parameters exceed the configured feasibility budget."""


class OracleError(RuntimeError):
    """The exhaustive reference group failed an internal sanity check."""


class UnknownCheckError(ValueError):
    """A run configuration named a check that does not exist."""
