"""Exception hierarchy shared across the package."""


class CovlatError(Exception):
    """Base class for all library errors."""


class BaseMismatchError(CovlatError):
    """An operation mixed subsets or elements of different base sets."""


class CapExceededError(CovlatError):
    """An enumeration-heavy operation was asked to run past its size cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: base size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class InputError(CovlatError):
    """Malformed or inconsistent on-disk data."""


class MorphismValidationError(CovlatError):
    """A relation failed cover-respect validation; carries the verdict."""

    def __init__(self, verdict):
        super().__init__(f"relation does not respect the covers: {verdict.witness}")
        self.verdict = verdict


class CompositionDefectError(CovlatError):
    """Composite of two validated morphisms failed re-verification.

    This indicates a library defect, not bad input; it is raised rather
    than silently swallowed so it can be reported.
    """


class PartialTableError(CovlatError):
    """An operator table does not cover every subobject."""


class MixedParentError(CovlatError):
    """Operator tables in one operation belong to different parent covers."""


class ExtensionFailureError(CovlatError):
    """Initial closure construction failed: the relation is not left-total.

    The extension axiom of the derived table would be violated at
    ``witness`` (a carrier not contained in its round-trip image).
    """

    def __init__(self, witness):
        super().__init__(f"extension failure at carrier {witness.sorted_members()}")
        self.witness = witness


class InitialContinuityDefectError(CovlatError):
    """The initial closure table is not continuity-inducing for this relation.

    For genuinely relational (non-functional) morphisms the derived table
    can fail the image-continuity condition even when it is a valid
    closure table.  This is reported, never silently patched.
    """

    def __init__(self, witness):
        super().__init__(
            f"initial closure not continuous at carrier {witness.sorted_members()}"
        )
        self.witness = witness


class UpperBoundFailureError(CovlatError):
    """Corrected initial interior failed: preimage of the full target base
    does not cover the source base, so the top-fixing axiom cannot hold."""

    def __init__(self, witness):
        super().__init__(
            f"interior top axiom unattainable, preimage of top is {witness.sorted_members()}"
        )
        self.witness = witness


class ContinuityPreconditionError(CovlatError):
    """A check requiring a continuous morphism was given a non-continuous one."""
