class KanforgeError(Exception):
    """Base class for all library errors."""


class InputError(KanforgeError):
    """Rejected input: a precondition or schema requirement does not hold."""


class CapExceeded(InputError):
    """A fiber is larger than the configured fiber cap."""

    def __init__(self, message: str, level: int | None = None, simplex: int | None = None):
        super().__init__(message)
        self.level = level
        self.simplex = simplex


class BudgetExhausted(KanforgeError):
    """A bounded search ran out of nodes before reaching a verdict."""

    def __init__(self, message: str, nodes: int = 0, stage: str | None = None):
        super().__init__(message)
        self.nodes = nodes
        self.stage = stage


class InternalError(KanforgeError):
    """A certificate that the theory guarantees could not be produced or verified."""


class Uncertified(KanforgeError):
    """A construction finished but a certificate it must carry could not be established."""

    def __init__(self, message: str, missing: str = ""):
        super().__init__(message)
        self.missing = missing
