"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``InputError`` -> 2 and
``Inconclusive`` (and subclasses) -> 3.
"""


class SimpcatError(Exception):
    pass


class InputError(SimpcatError, ValueError):
    """Malformed or out-of-range input; the message names the offending field."""


class Inconclusive(SimpcatError):
    """A verdict could not be reached within the stated truncation or budget."""


class TruncationError(Inconclusive):
    """The needed simplicial dimension exceeds the stored truncation."""


class BudgetExceeded(Inconclusive):
    """An exhaustive enumeration hit its configured cap."""


class Undecided(Inconclusive):
    """A word problem did not stabilize below the configured length cap."""
