"""Exception hierarchy for derhall.

Every failure the library can signal maps to one class here. The CLI turns
them into exit codes and the HTTP routes into status codes, so callers never
need to inspect messages.
"""


class DerhallError(Exception):
    """Base class for all library errors."""

    exit_code: int = 1
    http_status: int = 500


class ConfigError(DerhallError, ValueError):
    """Invalid quiver spec, non-prime field size or unknown selector."""

    exit_code = 2
    http_status = 400


class WindowExceeded(ConfigError):
    """An object carries a shift outside the configured window [-w, w]."""


class NotTypeA(ConfigError):
    """A guaranteed-mode operation was asked for on a non type-A quiver."""


class CapExceeded(DerhallError):
    """An enumeration would visit more elements than the configured cap."""

    exit_code = 3
    http_status = 413

    def __init__(self, what: str, size: int, cap: int) -> None:
        super().__init__(f"{what}: {size} elements exceeds enumeration cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class InterpolationFailure(DerhallError):
    """Point counts at the held-out primes disagree with the fitted polynomial."""

    def __init__(self, message: str, samples: list | None = None) -> None:
        super().__init__(message)
        self.samples = samples or []


class IdentityMismatch(DerhallError):
    """Two computations that must agree by construction did not."""
