"""Exception types shared across the package."""


class UnionPathError(Exception):
    """Base class for all package-specific errors."""


class DegenerateOverlap(UnionPathError):
    """Two arcs overlap along a sub-arc (general-position violation)."""


class DegeneracyDetected(UnionPathError):
    """A computation hit an input configuration it cannot disambiguate."""


class GenerationFailed(UnionPathError):
    """The random instance generator exhausted its retry budget."""


class NotConnected(UnionPathError):
    """An operation requiring a connected intersection graph got a disconnected one."""


# Some call sites talk about disconnected inputs rather than instances;
# both names refer to the same condition.
Disconnected = NotConnected
