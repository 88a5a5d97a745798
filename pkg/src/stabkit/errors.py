"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: user-input problems exit 1,
computation failures (budgets, degenerate configurations) exit 2.
"""


class StabkitError(Exception):
    """Base class for all toolkit errors."""


class LatticeError(StabkitError):
    """Invalid lattice data: wrong signature, odd Gram where even is required,
    dimension mismatches, non-integral results."""


class ChargeError(StabkitError):
    """Invalid charge value or parameters (zero charge where nonzero needed,
    charge outside the allowed half-plane, bad omega)."""


class PresentationError(StabkitError):
    """Malformed category presentation: the data does not support the
    requested filtration or violates a structural invariant."""


class DegenerateError(StabkitError):
    """Degenerate configuration: restricted form degenerate, charge outside
    the good locus, proportional vectors where independence is required."""


class BudgetError(StabkitError):
    """An enumeration exceeded its configured budget."""

    def __init__(self, message: str, bound_reached=None):
        super().__init__(message)
        self.bound_reached = bound_reached
