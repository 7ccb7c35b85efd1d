"""Exception hierarchy shared across the package."""


class PrefGameError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidStubbornness(PrefGameError):
    """A stubbornness value lies outside the open interval (0, 1)."""


class EvenN(PrefGameError):
    """An operation that needs an odd number of vertices got an even one."""


class InvalidK(PrefGameError):
    """Swap-size bound for the local search must be a positive integer."""


class NoPairExists(PrefGameError):
    """No rebalancing pair exists for the requested vertex/constraints."""


class AlgorithmInvariantViolated(PrefGameError):
    """A structural invariant of the constructive search failed at runtime.

    Carries a short invariant id (stable, machine-checkable) plus free-form
    detail.  These fire only on inputs that contradict the design analysis,
    so any occurrence is a bug report in itself.
    """

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        self.detail = detail
        msg = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(msg)


class AllStubborn(PrefGameError):
    """Every vertex is stubborn, so no subvertable assignment exists."""


class NotGood(PrefGameError):
    """A bisection expected to admit a belief construction is not good."""


class InvalidScript(PrefGameError):
    """A scripted schedule referenced an invalid vertex or ran dry early."""


class NotMajorityZero(PrefGameError):
    """A belief assignment required to have a strict majority of zeros lacks one."""


class BudgetExceeded(PrefGameError):
    """An exhaustive schedule exploration exceeded its size budget."""


class TooLarge(PrefGameError):
    """A brute-force enumeration was asked to run beyond its size budget."""


class Not2P2N(PrefGameError):
    """A formula violates the two-positive/two-negative occurrence pattern."""


class Not3SAT(PrefGameError):
    """A clause is not made of three distinct variables."""


class InvalidParams(PrefGameError):
    """Reduction parameters are outside the feasible region."""


class ReductionMismatch(PrefGameError):
    """A guided run of a reduction instance departed from the expected script."""
