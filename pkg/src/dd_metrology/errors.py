"""Exception types raised across the package."""


class InvalidArgument(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class DegenerateDirection(ValueError):
    """Mean spin vector too short to define a squeezing plane."""


class NumericFailure(RuntimeError):
    """A numerical routine could not reach its accuracy target.

    ``value`` and ``error`` carry the partial result where one exists;
    ``point`` is filled in by sweep drivers to identify the grid point.
    """

    def __init__(self, message, value=None, error=None, point=None):
        super().__init__(message)
        self.value = value
        self.error = error
        self.point = point

    def __str__(self):
        msg = super().__str__()
        if self.error is not None:
            msg += f" (partial value={self.value!r}, error estimate={self.error:.3g})"
        if self.point is not None:
            msg += f" at {self.point}"
        return msg
