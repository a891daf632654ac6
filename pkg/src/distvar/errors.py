"""Exception hierarchy shared by all modules."""


class DistvarError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(DistvarError, ValueError):
    pass


class SingularMatrixError(DistvarError, ArithmeticError):
    """A pivot fell below the singularity tolerance."""

    def __init__(self, pivot, message=None):
        self.pivot = float(pivot)
        super().__init__(message or f"matrix is singular to tolerance (pivot magnitude {self.pivot:.3e})")


class DegenerateInputError(DistvarError, ValueError):
    pass


class ConvergenceError(DistvarError, ArithmeticError):
    pass


class UnitarityError(DistvarError, ValueError):
    pass


class InterpolationError(DistvarError, ArithmeticError):
    """Interpolated polynomial disagrees with the determinant it was built from."""


class DegenerateFiberError(DistvarError, ArithmeticError):
    def __init__(self, point, variable="z"):
        self.point = complex(point)
        super().__init__(f"leading coefficient vanishes on the fiber {variable} = {self.point:.6g}")


class PoleError(DistvarError, ArithmeticError):
    pass


class DegenerateDeterminantError(DistvarError, ValueError):
    pass


class FeasibilityError(DistvarError, ValueError):
    pass
