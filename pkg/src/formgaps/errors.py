"""Exceptions shared across the package."""


class BudgetError(Exception):
    """A request exceeds a configured memory or work budget."""


class InvariantError(Exception):
    """An internal consistency check failed; indicates an implementation fault."""
