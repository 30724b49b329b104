"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: InputError -> 2, ResourceError -> 3.
"""


class GyroError(Exception):
    """Base class for all errors raised by gyrotable."""


class InputError(GyroError, ValueError):
    """Malformed or out-of-range input (bad indices, bad files, bad names)."""


class StructureError(GyroError):
    """The table lacks structure an operation needs (e.g. a unique left inverse)."""


class ResourceError(GyroError):
    """A size cap or search budget would be exceeded."""


class InternalError(GyroError, AssertionError):
    """A cross-check that must hold by theory did not hold."""
