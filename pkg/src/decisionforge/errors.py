"""Exception hierarchy shared across the toolkit."""


class DecisionForgeError(Exception):
    """Base class for all toolkit errors."""


class ConstraintError(DecisionForgeError):
    """Malformed or unsatisfiable target constraint."""


class TournamentError(DecisionForgeError):
    """Funnel stage cannot be evaluated (missing rows, unresolved unknowns)."""


class MorphError(DecisionForgeError):
    """Invalid morphological chart or concept selection."""


class SelectionError(DecisionForgeError):
    """Invalid screening/scoring matrix operation."""


class SensitivityError(DecisionForgeError):
    """Degenerate or ill-posed weight perturbation."""


class PersistenceError(DecisionForgeError):
    """Project file cannot be read or written."""
