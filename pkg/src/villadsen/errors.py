"""Exception types shared across the engine."""


class CompositionError(ValueError):
    """Raised when two space maps do not chain source-to-target."""


class PresentationMismatchError(ValueError):
    """Raised when graded classes over different rings are combined."""


class BaseMismatchError(ValueError):
    """Raised when bundles over different base spaces are compared."""


class InvalidLineClassError(ValueError):
    """Raised when a bundle summand's line class is not a single pulled-back
    generator (coefficient 1) or zero."""


class ConfigError(ValueError):
    """Raised on malformed configuration documents (unknown keys, bad values)."""


class GeneratorBudgetExceeded(RuntimeError):
    """Raised when a full sparse expansion would exceed the configured term
    budget (see the ENGINE_GENERATOR_BUDGET environment variable)."""

    def __init__(self, required: int, budget: int, what: str = "expansion"):
        self.required = required
        self.budget = budget
        super().__init__(
            f"{what} needs about {required} terms but the budget is {budget}; "
            f"raise ENGINE_GENERATOR_BUDGET to allow it"
        )
