"""Exception hierarchy shared by all modules."""


class BHEError(ValueError):
    """Base class for every domain error raised by the package."""


class DegenerateLeadingCoefficient(BHEError):
    pass


class ComplexRoots(BHEError):
    pass


class SingularPoint(BHEError):
    pass


class NotAdmissible(BHEError):
    pass


class RootMismatch(BHEError):
    pass


class DegenerateD(BHEError):
    pass


class RootOrdering(BHEError):
    pass


class DoubleRoot(BHEError):
    pass


class QuadratureNotConverged(BHEError):
    pass


class OutOfDomain(BHEError):
    pass


class NonpositiveProfile(BHEError):
    pass


class NonpositiveScalarCurvature(BHEError):
    pass
