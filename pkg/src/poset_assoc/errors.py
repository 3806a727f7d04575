"""Exception hierarchy.  Every error carries a short ``code`` string."""


class AssocError(Exception):
    code = "ERROR"

    def __init__(self, message="", code=None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def __str__(self):
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


class InputError(AssocError):
    """Malformed or inconsistent user input (CLI exit code 1)."""

    code = "INVALID_INPUT"


class VerificationError(AssocError):
    """An internal invariant or cross-check failed (CLI exit code 2)."""

    code = "VERIFICATION_FAILED"


class BudgetExceeded(AssocError):
    code = "BUDGET_EXCEEDED"


def cycle(msg):
    return InputError(msg, "CYCLE")


def unknown_element(x):
    return InputError(f"unknown element {x!r}", "UNKNOWN_ELEMENT")
