"""Shared exception types."""


class InconclusiveError(RuntimeError):
    """A randomized procedure exhausted its budget without a sound verdict.

    Raised instead of guessing: callers either retry with a different
    seed/budget or propagate the inconclusive status.
    """


class NotSplitError(ValueError):
    """The semisimple quotient has a simple component of dimension > 1 over GF(p)."""


class SchemaError(ValueError):
    """An input document violates its file schema.

    Carries the JSON path of the offending value so callers can report
    the exact location; nothing is partially parsed.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
