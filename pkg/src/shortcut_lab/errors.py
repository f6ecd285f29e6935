"""Exception types shared across the library."""


class ShortcutLabError(Exception):
    """Base class for all library errors."""


class DisconnectedGraph(ShortcutLabError):
    """A metric operation was asked to run on a disconnected graph."""


class CycleNotInGraph(ShortcutLabError):
    """A cycle refers to vertices or edges absent from its host graph."""


class InvalidXi(ShortcutLabError):
    """An almost-isometry parameter outside the open interval (0, 1)."""


class InvalidK(ShortcutLabError):
    """A bilipschitz constant below 1."""


class TooLarge(ShortcutLabError):
    """Input exceeds the size budget of an exhaustive scan."""


class BudgetExhausted(ShortcutLabError):
    """A search ran out of its expansion budget before completing."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class CycleTooLong(ShortcutLabError):
    """A boundary cycle is longer than the filling range allows."""


class PropertyAViolated(ShortcutLabError):
    """A cycle in the filling range turned out almost isometric.

    Carries the offending cycle so the caller can see why the chosen
    (theta, xi, range) parameters do not fit the graph.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class UnknownWall(ShortcutLabError):
    """A wall id not present in the wall cycle's coloring."""


class NotCubical(ShortcutLabError):
    """No hyperplane map is available for the requested graph."""


class RadiusInsufficient(ShortcutLabError):
    """A word-metric query needs an element outside the generated ball.

    The query is refused rather than approximated; ``required`` is the
    group element whose depth was missing.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required
