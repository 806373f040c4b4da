"""Exception types shared across the package.

The three classes mirror the CLI exit codes: validation errors exit 2,
numerical guards exit 3, search failures exit 4.
"""


class ValidationError(ValueError):
    """Malformed or unphysical input (bad shape, asymmetry, γ < 1/2, ...)."""


class NumericalGuardError(ArithmeticError):
    """A numerical guard tripped (near-pure state, pairing failure,
    indefinite matrix, out-of-domain border parameters)."""


class SearchFailureError(RuntimeError):
    """An optimization failed to produce a usable result."""
