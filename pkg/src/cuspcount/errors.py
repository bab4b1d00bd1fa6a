"""Exception hierarchy.  The CLI maps ValidationError to exit 2 and the rest to 3."""


class CuspCountError(Exception):
    pass


class ValidationError(CuspCountError, ValueError):
    """Arguments violate a precondition (dimension gate, unsupported level, ...)."""


class DimensionMismatchError(ValidationError):
    pass


class UnsupportedLevelError(ValidationError):
    pass


class EngineError(CuspCountError, ArithmeticError):
    """An internal consistency assertion failed; indicates a bug or bad data."""


class NonIntegralError(EngineError):
    pass


class ReconstructionError(EngineError):
    pass


class ProviderMismatchError(EngineError):
    pass


class MissingBaseNumberError(EngineError, KeyError):
    pass


class StoreError(CuspCountError):
    pass


class VersionMismatchError(StoreError):
    pass


class FingerprintMismatchError(StoreError):
    pass


class RecordParseError(StoreError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


class RecordConflictError(StoreError):
    pass
