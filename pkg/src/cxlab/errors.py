"""Exception types shared across the engine."""


class InputError(ValueError):
    """Raised when caller-supplied data violates a documented precondition."""


class ScenarioError(InputError):
    """Parse or semantic error in a scenario file, with a source location."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
