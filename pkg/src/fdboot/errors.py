"""Exception hierarchy shared by every fdboot module."""


class FdError(ValueError):
    """Base class for validation failures on functional data inputs."""


class DimensionError(FdError):
    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class NonFiniteError(FdError):
    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class GridMismatchError(FdError):
    pass


class InsufficientSampleError(FdError):
    pass


class InfeasibleParameterError(FdError):
    """A tuning parameter (alpha, gamma, level, ...) is unusable for this n."""

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class FactorizationError(FdError):
    def __init__(self, message, smallest_eigenvalue=None):
        super().__init__(message)
        self.smallest_eigenvalue = smallest_eigenvalue
