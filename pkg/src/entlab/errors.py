"""Exception hierarchy shared by all entlab modules."""


class EntlabError(Exception):
    """Base class for every error raised by entlab."""


class DimensionError(EntlabError, ValueError):
    """Matrix or subsystem dimensions do not fit the operation."""


class ShapeError(DimensionError):
    """A bipartite operation received a state with the wrong number of factors."""


class DomainError(EntlabError, ValueError):
    """Input lies outside the mathematical domain (e.g. not Hermitian)."""


class ParameterError(EntlabError, ValueError):
    """A physical parameter (alpha, c0, ...) is outside its admissible range."""


class ConvergenceError(EntlabError, ArithmeticError):
    """An iterative routine hit its iteration cap."""


class NumericalError(EntlabError, ArithmeticError):
    """A computation produced non-finite or otherwise unusable numbers."""


class ConfigError(EntlabError, ValueError):
    """A sweep configuration is malformed."""


class SingularEntryError(EntlabError, ZeroDivisionError):
    """Closed-form entries divide by zero at the requested parameters.

    ``entries`` lists the labels (e.g. ``"X22"``) that are undefined.
    """

    def __init__(self, message, entries=()):
        super().__init__(message)
        self.entries = tuple(entries)
