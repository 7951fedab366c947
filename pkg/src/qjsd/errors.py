"""Exception types raised on invalid input."""


class QJSDError(ValueError):
    """Base class for all input errors raised by the package."""


class NonHermitianInput(QJSDError):
    pass


class InvalidDensityMatrix(QJSDError):
    pass


class DimensionMismatch(QJSDError):
    pass


class ParameterOutOfRange(QJSDError):
    pass


class BadRank(QJSDError):
    pass


class ScheduleInvalid(QJSDError):
    pass


class UnknownFamily(QJSDError):
    pass
