class HeckeLabError(Exception):
    pass


class PreconditionError(HeckeLabError, ValueError):
    """Arguments violate an operation's documented precondition."""


class DimensionTooSmallError(PreconditionError):
    """The cusp form space is too small for the requested coefficient."""


class InternalInconsistencyError(HeckeLabError, ArithmeticError):
    """An exactness invariant failed; indicates a bug, never rounded away."""
