"""Exception hierarchy for path construction and interception solving."""


class InterceptError(Exception):
    """Base class for every error raised by this package."""


class Infeasible(InterceptError, ValueError):
    """A requested path or tangent does not exist for the given geometry."""


class AllModesInfeasible(InterceptError):
    """No CSC mode connects the start pose to the goal pose."""


class NoTransition(InterceptError):
    """No mode-transition angle exists on the target circle for this scene."""


class BracketOverflow(InterceptError):
    """The interception bracket could not be established."""


class InvalidBracket(InterceptError, ValueError):
    """The bracket handed to the bisection does not straddle a root."""


class ScenarioError(InterceptError, ValueError):
    """A scenario document failed to parse or validate."""


class VerificationFailed(InterceptError):
    """An interception solution failed an independent consistency check.

    The failing :class:`~circle_intercept.intercept.VerificationReport` is
    available as ``report``.
    """

    def __init__(self, report):
        self.report = report
        failed = ", ".join(report.failed_clauses())
        super().__init__(f"interception verification failed: {failed}")
