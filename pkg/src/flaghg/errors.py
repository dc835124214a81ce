"""Exception types shared across the engine."""


class FlagHGError(Exception):
    """Base class for engine errors."""


class UsageError(FlagHGError):
    """Bad command-line input."""


class ZeroDenominatorError(FlagHGError):
    """A denominator factor is the zero polynomial."""


class SingularSubstitutionError(FlagHGError):
    """A substitution made a denominator factor vanish identically."""


class SymmetryViolationError(FlagHGError):
    """An input class is not symmetric within a root block."""


class BudgetExceededError(FlagHGError):
    """A coset enumeration would exceed the configured budget."""


class CancellationFailureError(FlagHGError):
    """A normal-bundle ledger retained a weight-0 term."""


class InfeasibleTableauError(FlagHGError):
    """A tableau's fibration tower has a negative-dimensional step."""


class FormulaMismatchError(FlagHGError):
    """Two supposedly equivalent computation routes disagree."""


class IntegrationShapeError(FlagHGError):
    """A fully integrated class still contains root variables."""
