"""Exception types shared across the toolkit."""


class InternalInconsistency(RuntimeError):
    """Two independent routes to the same quantity disagreed.

    This signals a bug in the toolkit, not a disagreement with a published value.
    """


class DegenerateSample(RuntimeError):
    """A randomized construction kept landing on a degenerate instance."""


class SingularAlong(ValueError):
    """The hypersurface is singular somewhere along the given linear space."""
