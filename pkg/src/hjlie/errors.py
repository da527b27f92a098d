"""Error taxonomy: malformed input vs a mathematical check that failed.

The CLI maps InputError to exit code 2 and CheckError to exit code 1, so the
distinction is part of the external contract.
"""


class InputError(ValueError):
    """Malformed or shape-inconsistent data (bad file, wrong dimensions)."""


class CheckError(ValueError):
    """A mathematical precondition or verdict failed; carries a witness."""

    def __init__(self, message, witness=None, check=None):
        super().__init__(message)
        self.witness = witness
        self.check = check
