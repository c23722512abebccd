"""Exception hierarchy shared by every module."""


class NoethError(Exception):
    """Base class for all library errors."""


class SpaceError(NoethError, ValueError):
    """Malformed space, point, or set input."""


class SpaceMismatchError(NoethError, ValueError):
    """Two objects live on different spaces."""


class NotZariskiError(NoethError, ValueError):
    """The operation needs every irreducible closed set to have one generic point."""


class NotUSCError(NoethError, ValueError):
    """A function was required to be upper semicontinuous but is not."""


class NotSCError(NoethError, ValueError):
    """A function is not a difference of upper semicontinuous functions."""


class NonAdditiveError(NoethError, ValueError):
    """Closed-set values violate inclusion-exclusion, so no measure induces them."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BoundViolation(NoethError, ValueError):
    """A total-variation bound stated by the caller does not hold."""


class ContinuityError(NoethError, ValueError):
    """A point map is not monotone for the specialization preorder.

    ``witness`` is a pair ``(y, x)`` with ``y`` in the closure of ``x`` but
    ``f(y)`` outside the closure of ``f(x)``.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class ReverseOrbitError(NoethError, ValueError):
    """A reverse-orbit description is inconsistent with the map."""


class NotSurjectiveError(NoethError, ValueError):
    """The map must be surjective for reverse orbits to exist everywhere."""


class UndefinedResult(NoethError):
    """The quantity is undefined at this input (no infinite reverse orbit)."""


class NotBorelError(NoethError, ValueError):
    """The set has neither type 1 nor type 2 intersection with some atom."""


class NotPositiveError(NoethError, ValueError):
    """Values were required to come from a positive measure but do not."""
