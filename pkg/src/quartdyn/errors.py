"""Exception types shared across the package."""


class QuartdynError(Exception):
    """Base class for all package errors."""


class MapDomainError(QuartdynError):
    """Input outside the domain of an exact-formula evaluation (e.g. a pole)."""


class CapacityError(QuartdynError):
    """An exact computation would exceed the configured size limits."""


class NotInBasin(QuartdynError):
    """The point did not escape to infinity within the iteration budget."""


class WrongStratum(QuartdynError):
    """The parameter's escape level does not match the requested index."""


class BranchAmbiguous(QuartdynError):
    """Branch continuation of an argument could not be resolved reliably."""


class NotConverged(QuartdynError):
    """An iterative limit failed to settle within its budget."""


class RefinementDiverged(QuartdynError):
    """Newton polishing of a cycle left the convergence region."""


class RootFindingStalled(QuartdynError):
    """The simultaneous root iteration did not reach its tolerance."""


class ConfigError(QuartdynError):
    """Malformed configuration file or unknown configuration key."""
