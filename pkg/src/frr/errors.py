"""Exception hierarchy shared by the library and the command line front end."""


class FrrError(ValueError):
    """Base class for all errors raised by :mod:`frr`."""

    kind = "error"


class InvalidArgumentError(FrrError):
    kind = "invalid-argument"


class InvalidOrderError(FrrError):
    """Raised when an operation needs a Regular order axis and gets a singular one."""

    kind = "invalid-order"


class GridMismatchError(FrrError):
    kind = "grid-mismatch"


class FormatError(FrrError):
    """Malformed or unsupported file contents.

    ``offset`` is the byte offset at which parsing failed, when known.
    """

    kind = "format-error"

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset
