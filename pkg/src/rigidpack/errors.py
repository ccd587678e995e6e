"""Exception hierarchy shared by all rigidpack modules."""


class RigidpackError(Exception):
    pass


class ParameterError(RigidpackError, ValueError):
    """Invalid (n, delta, k) or other structural parameters."""


class HypothesisViolation(ParameterError):
    """Input graph does not satisfy the hypotheses of the checked statement."""


class BudgetExceeded(RigidpackError):
    """An exhaustive routine was asked to do more work than its guard allows."""


class SizeLimitExceeded(BudgetExceeded):
    pass


class NonConvergence(RigidpackError, ArithmeticError):
    pass


class Graph6Error(RigidpackError, ValueError):
    pass
