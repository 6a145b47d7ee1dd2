"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class ParseError(ValidationError):
    """Malformed text input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StructuralError(RuntimeError):
    """A simplex tree operation would break the tree's invariants.

    Raised on out-of-order or duplicate insertions. Constructions never
    trigger this on valid input, so seeing it means an algorithm bug.
    """


class NodeBudgetExceeded(MemoryError):
    """A construction created more nodes than its budget allows."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"node budget of {budget} exceeded")
