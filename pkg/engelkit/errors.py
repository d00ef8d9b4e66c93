"""Exception hierarchy shared by every service."""


class EngelkitError(Exception):
    """Base class for all domain errors."""

    module = "engelkit"


class WordSyntaxError(EngelkitError):
    """Raised when a word expression cannot be parsed."""

    module = "words"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownGeneratorError(EngelkitError):
    """Raised when a name or id is not declared in the generator context."""

    module = "words"


class SeriesError(EngelkitError):
    """Raised for incompatible series or a non-invertible series."""

    module = "magnus"


class ShapeMismatchError(EngelkitError):
    """Raised when matrix and vector dimensions do not agree."""

    module = "zlattice"


class EngelError(EngelkitError):
    """Raised when an Engel computation gets input outside its scope."""

    module = "engel"


class DecompositionError(EngelkitError):
    """Raised when a grope attaching curve cannot be decomposed."""

    module = "decomp"


class LinkConstructionError(EngelkitError):
    """Raised for bad component indices, ramification or oversized longitudes."""

    module = "links"


class LinkDslSyntaxError(LinkConstructionError):
    """Raised when a link construction expression cannot be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DiagramError(EngelkitError):
    """Raised for unknown curves, nonzero framings or malformed diagram states."""

    module = "slides"


class SlideScriptError(DiagramError):
    """Raised when a slide script line is malformed."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InvariantViolation(EngelkitError):
    """Raised when an internal consistency check fails."""
