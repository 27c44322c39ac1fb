"""Exception types shared across the library.

The CLI maps these onto its exit-code contract: invalid input -> 2,
resource caps -> 3, internal assertion failures -> 4.
"""


class PermresError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(PermresError):
    """Matrix shapes or field characteristics are incompatible."""


class CapExceeded(PermresError):
    """A module dimension or group order exceeds the configured cap."""


class GroupMismatch(PermresError):
    """Operands live over different groups."""


class NotInjective(PermresError):
    """A map required to be injective is not."""


class OddLength(PermresError):
    """Periodic complexes need an even length >= 2."""


class NotResolution(PermresError):
    """An operation requires a certified resolution as input."""


class LiftFailed(PermresError):
    """No chain-map lift exists; preconditions were violated or there is a bug."""


class SelectionFailed(PermresError):
    """Free-summand selection failed; the trim preconditions do not hold."""


class NotPermutationBasis(PermresError):
    """A generator matrix is not a permutation matrix in the given basis."""

    def __init__(self, generator_index, row_index, message=None):
        self.generator_index = generator_index
        self.row_index = row_index
        super().__init__(
            message
            or f"generator {generator_index + 1} is not a permutation matrix "
            f"(first offending row {row_index})"
        )


class InternalError(PermresError):
    """An identity that is mathematically guaranteed failed to hold."""
