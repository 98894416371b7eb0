"""Exception types shared across the package."""


class RwpError(Exception):
    """Base class for all domain errors raised by this package."""


class SupercriticalCharge(RwpError):
    """(j+1/2)^2 <= (Z*alpha)^2: the Coulomb-Dirac square root turns imaginary."""


class InvalidQuantumNumbers(RwpError):
    """Quantum numbers outside the bound-state domain (n < l+1, bad j, ...)."""


class UnsupportedOrder(RwpError):
    """Time-scale hierarchy order k outside the implemented range 1..3."""


class InvalidGridSpec(RwpError):
    """Radial grid request incompatible with composite Simpson quadrature."""


class LengthMismatch(RwpError):
    """Sample arrays do not match the quadrature grid length."""


class EmptyRange(RwpError):
    """Empty principal-quantum-number range."""


class NonNormalizedSpinor(RwpError):
    """|a|^2 + |b|^2 deviates from 1 beyond tolerance."""


class InvalidRange(RwpError):
    """Packet truncation bounds violate l+1 <= n_min <= n_av <= n_max."""


class RangeMismatch(RwpError):
    """Energy or radial table does not cover the packet's n range."""


class EmptyWindow(RwpError):
    """Peak-detection window contains no samples."""
