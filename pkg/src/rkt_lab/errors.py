"""Exception hierarchy shared by every module of the package."""


class RktLabError(Exception):
    """Base class for all errors raised by rkt_lab."""


class ShapeError(RktLabError, ValueError):
    """Dimensions, counts or index sets do not fit together."""


class DomainError(RktLabError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularMatrixError(RktLabError, ArithmeticError):
    """A linear system has no unique solution."""


class CapacityError(RktLabError, RuntimeError):
    """The request exceeds the desk-scale limits of the engine."""


class FlagError(RktLabError, ValueError):
    """A toric flag does not fit the polytope it is applied to."""


class LatticeError(RktLabError, ValueError):
    """An intersection form fails the Hodge index shape."""


class GenerationError(RktLabError, RuntimeError):
    """Random instance generation gave up."""
