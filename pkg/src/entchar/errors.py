"""Exception types shared across the package."""


class EntcharError(Exception):
    """Base class for all entchar errors."""


class NotHermitianError(EntcharError):
    pass


class TraceNotOneError(EntcharError):
    pass


class NotPSDError(EntcharError):
    pass


class IndexOutOfRangeError(EntcharError):
    pass


class OutOfDomainError(EntcharError):
    pass


class InvalidSimplexPointError(EntcharError):
    pass


class InvalidGridSizeError(EntcharError):
    pass


class EmptySettingError(EntcharError):
    pass


class AllStatesExcludedError(EntcharError):
    """Every test state assigns zero probability to the observed record."""


class LengthMismatchError(EntcharError):
    pass


class InvalidCountError(EntcharError):
    pass


class UnknownStateFamilyError(EntcharError):
    pass


class ParseFailureError(EntcharError):
    pass


class MissingSettingError(EntcharError):
    pass
