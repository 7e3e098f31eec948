"""Exception hierarchy shared by all mvlab modules."""


class MvlabError(Exception):
    """Base class for every error raised by this package."""


class DegenerateInput(MvlabError):
    """Points do not affinely span the requested dimension."""


class DimensionMismatch(MvlabError):
    """Bodies or vectors with incompatible ambient dimensions."""


class DimensionLimit(MvlabError):
    """Requested ambient dimension is outside the supported range."""


class Unbounded(MvlabError):
    """Halfspace intersection is unbounded."""


class EmptyIntersection(MvlabError):
    """Halfspace intersection is infeasible."""


class ZeroVector(MvlabError):
    """A direction argument was the zero vector."""


class RangeViolation(MvlabError):
    """Facet displacement outside the verified safe range."""


class EmptyOrFlat(MvlabError):
    """A cap cut removed everything or left a lower-dimensional set."""


class BadArity(MvlabError):
    """Wrong number of bodies for the requested operation."""


class BadParams(MvlabError):
    """Invalid generator or CLI parameters."""


class BudgetExhausted(MvlabError):
    """Counterexample search ran out of gap evaluations.

    Exhaustion is not a simplex verdict; it only says the fixed search
    family found nothing within the budget.
    """

    def __init__(self, evaluations: int):
        super().__init__(f"no violation found within {evaluations} gap evaluations")
        self.evaluations = evaluations


class ParseError(MvlabError):
    """Malformed polytope document or report input."""


class InternalCheckError(MvlabError):
    """An internal cross-check failed; indicates a bug, not bad input."""
