"""Exception hierarchy shared by the library and the command line."""


class QuotTautError(Exception):
    """Base class for every error raised by this package."""


class PreconditionViolated(QuotTautError, ValueError):
    pass


class OutOfRange(PreconditionViolated):
    pass


class RankAssumptionViolated(PreconditionViolated):
    """The fixed bundle E must have rank at least 2."""


class InconsistentOverride(PreconditionViolated):
    """A cohomology override disagrees with Riemann-Roch."""


class AmbiguousCohomology(QuotTautError):
    """Strict policy and no rule determines h0/h1 from the bundle data."""


class OracleBoundsError(QuotTautError, ValueError):
    """Enumeration request exceeds the oracle's size guard."""
