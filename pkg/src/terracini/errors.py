"""Exception types shared across the package."""


class TerraciniError(Exception):
    """Base class for all errors raised by this package."""


class CompositeModulus(TerraciniError, ValueError):
    pass


class NoRoot(TerraciniError, ArithmeticError):
    """The element is a quadratic nonresidue."""


class SplittingFailure(TerraciniError, RuntimeError):
    """Equal-degree splitting exhausted its retry budget."""


class CorankNotOne(TerraciniError, ValueError):
    pass


class InternalInconsistency(TerraciniError, RuntimeError):
    pass


class Unliftable(TerraciniError, ArithmeticError):
    """A dual-number matrix has no kernel lifting its residue kernel."""


class DegenerateLeadingCoefficient(TerraciniError, ArithmeticError):
    pass


class PointsNotDistinct(TerraciniError, ValueError):
    def __init__(self, message="points not distinct"):
        super().__init__(message)


class PreconditionError(TerraciniError, ValueError):
    pass


class PositiveDimensionalSingularLocus(TerraciniError, ValueError):
    pass


class NotSingular(TerraciniError, ValueError):
    pass


class GenericityFailure(TerraciniError, RuntimeError):
    """A sampler ran out of retries; ``seeds`` records every attempt."""

    def __init__(self, message, seeds=()):
        self.seeds = list(seeds)
        if self.seeds:
            message = f"{message} (seed trail: {self.seeds})"
        super().__init__(message)


class DegenerateParams(TerraciniError, ArithmeticError):
    pass


class NoRationalRoot(DegenerateParams):
    pass


class WrongNetDimension(DegenerateParams):
    pass


class ExtraSingularity(DegenerateParams):
    pass


class ChartDegeneracy(DegenerateParams):
    pass


class DependentNodes(TerraciniError, ValueError):
    pass
