"""Exception hierarchy shared by all resgeo modules.

Two broad families matter to callers: input-contract problems
(:class:`ValidationError` and subclasses) and numerical breakdowns
(:class:`NumericError` and subclasses).  The CLI maps the former to exit
code 1 and the latter to exit code 2.
"""


class ResgeoError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ResgeoError):
    """An input violates a documented contract (shape, sign, range)."""


class StructureError(ValidationError):
    """A graph-structural precondition fails (connectivity, reachability)."""


class MetricClassificationError(ValidationError):
    """A distance matrix is not of the metric class an operation requires.

    Carries the classification ``label`` and, when available, a ``witness``
    vector certifying the failure (a direction of positive Gram energy or a
    nontrivial kernel direction).
    """

    def __init__(self, message, label=None, witness=None):
        super().__init__(message)
        self.label = label
        self.witness = witness


class CapacityError(ValidationError):
    """A problem size exceeds a documented hard limit."""


class NumericError(ResgeoError):
    """A computation cannot be completed at acceptable accuracy."""


class DegenerateBlockError(NumericError):
    """An eliminated block is singular or too ill-conditioned to invert."""


class ConvergenceError(NumericError):
    """An iterative method exhausted its budget before certification.

    ``history`` holds the residuals seen along the way, for diagnostics.
    """

    def __init__(self, message, history=None):
        super().__init__(message)
        self.history = list(history) if history is not None else []
