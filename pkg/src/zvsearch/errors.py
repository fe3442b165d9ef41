"""Error types shared across the package.

Two failure modes are kept strictly apart: bad input (the caller's fault,
exit code 1 in the CLI) and an exhausted resource budget (the instance is
too big for the configured limits, exit code 2). A budget overrun is never
reported as a "no" answer.
"""


class InputError(ValueError):
    """Malformed or precondition-violating input."""


class ResourceLimitError(RuntimeError):
    """A configured budget (state count, vertex count, ...) was exceeded."""

    def __init__(self, message, budget=None, used=None):
        super().__init__(message)
        self.budget = budget
        self.used = used
