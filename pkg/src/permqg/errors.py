"""Exception types shared across the package."""


class PermQGError(Exception):
    """Base class for all package errors."""


class ZeroEntry(PermQGError):
    """An array entry has modulus at or below the working tolerance."""


class ZeroScale(PermQGError):
    """Scaling constant must be nonzero."""


class InvalidParam(PermQGError):
    """Constructor parameter outside its documented domain."""


class InconsistentInvariants(PermQGError):
    """Computed invariants violate a structural identity.

    Usually a sign that the tolerance is badly chosen for the input data.
    """


class Unclassifiable(PermQGError):
    """Branch hypotheses hold but no closed form matches the input."""


class BadFamily(PermQGError):
    """Requested representation family does not exist for these parameters."""


class CommutationMismatch(PermQGError):
    """Clock-shift commutation phase does not match the required twist."""


class UnsupportedParam(PermQGError):
    """Representation builder does not cover this parameter range."""


class DimensionOverflow(PermQGError):
    """Tensor power would exceed the configured size cap."""


class DimensionMismatch(PermQGError):
    """Operator shape incompatible with the requested tensor powers."""
