"""Exception types raised by the library."""


class YMStrataError(Exception):
    pass


class BranchCut(YMStrataError):
    """The principal logarithm is ambiguous (eigenvalue close to -1)."""


class SingularProjection(YMStrataError):
    """A matrix is too close to rank deficient to project onto the group."""


class UnsupportedGroup(YMStrataError):
    """No centralizer decision rule covers the given data."""


class RankAmbiguity(YMStrataError):
    """A singular value sits too close to the rank cutoff to decide."""

    def __init__(self, message, singular_values=None, cutoff=None):
        super().__init__(message)
        self.singular_values = singular_values
        self.cutoff = cutoff


class NoConvergence(YMStrataError):
    def __init__(self, final_residual, iterations):
        super().__init__(
            f"solver stopped after {iterations} iterations with residual {final_residual:.3e}"
        )
        self.final_residual = final_residual
        self.iterations = iterations


class DegenerateForm(YMStrataError):
    """The symplectic pairing is degenerate at a point classified non-singular."""


class InvalidData(YMStrataError, ValueError):
    """Input violates a documented invariant (membership, centrality, components)."""
