"""Exception types shared across the package."""


class InfeasibleError(ValueError):
    """An operation that needs a feasible linear system got an infeasible one."""


class DegenerateConfigError(ValueError):
    """A basis or point configuration does not affinely span its ambient space."""


class SizeGuardError(ValueError):
    """Input is larger than the exhaustive enumerators are allowed to handle."""


class NotMemberError(ValueError):
    """A decomposition was requested for a vector outside the secant variety."""
