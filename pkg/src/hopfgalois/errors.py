"""Shared exception types."""


class CapExceeded(RuntimeError):
    """A configured size cap (closure size, group order, degree) was exceeded."""


class BudgetExceeded(RuntimeError):
    """The search node budget ran out before the search finished."""


class NotNormalClosure(ValueError):
    """The chosen subgroup contains a nontrivial normal subgroup of the
    ambient group, so the pair cannot model a normal closure."""
