"""Exception hierarchy shared across the package.

Anything raised here means the *input* was unusable; a verification that
merely comes out negative is reported as a boolean or a fail-status result,
never as an exception.
"""


class PcatError(Exception):
    """Base class for all errors raised by pointedcat."""


class DimensionMismatch(PcatError):
    """An element's residue vector does not match its group's rank."""


class ModulusMismatch(PcatError):
    """Two scalar tables with different moduli were combined.

    Mixed moduli are never coerced implicitly; use ``Cochain.lift`` first.
    """


class NotASubgroup(PcatError):
    """A subgroup argument does not live inside the expected parent group."""


class BoundExceeded(PcatError):
    """An enumeration would exceed the configured bound (see PCAT_BOUND)."""


class InvalidHomomorphism(PcatError):
    """Generator images do not define a homomorphism (or are not bijective
    where a bijection is required)."""


class InvalidInput(PcatError):
    """Malformed or semantically inconsistent serialized data."""
