"""Exception types shared across the package."""


class CylasymError(Exception):
    """Base class for all package-specific failures."""


class NonConvergence(CylasymError):
    """A quadrature or iteration exhausted its refinement budget."""


class SectorViolation(CylasymError):
    """The requested point lies outside the sector where a formula is valid."""


class IntegerOrder(CylasymError):
    """Continuation formulas need sin(pi*nu) != 0; integer order is out of scope."""


class NoBracket(CylasymError):
    """A root bracket stated by the case tables does not contain the angle."""


class TooSmallN(CylasymError):
    """The simplified near-Stokes bound requires a larger truncation index."""
