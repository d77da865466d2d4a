"""Exceptions raised across doublab."""


class DoublabError(Exception):
    """Base class for every error the lab reports to the user."""

    exit_code: int = 1


class ConfigError(DoublabError):
    """Invalid experiment configuration or usage."""

    exit_code = 2


class RecordError(DoublabError):
    """Missing or corrupt run records."""

    exit_code = 2


class ResourceCapExceeded(DoublabError):
    """A node count, support size or step count passed its configured cap."""

    exit_code = 3

    def __init__(self, what: str, value: int, cap: int):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what} would reach {value}, above the cap of {cap}")

    def __reduce__(self):
        # rebuilt in the parent when raised inside a worker process
        return (type(self), (self.what, self.value, self.cap))


class TrajectoryTooShort(DoublabError):
    """A skeleton trajectory does not extend past the requested step."""


class InvariantViolation(AssertionError):
    """A structural invariant or exact identity failed."""
