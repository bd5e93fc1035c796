"""Exception types shared across the toolkit."""


class CitecellsError(Exception):
    """Base class for all toolkit errors."""


class EmptyCategorySet(CitecellsError):
    """A category set or cell key was empty."""


class InvalidCategoryCode(CitecellsError):
    """A category code is empty, contains ';', or contains whitespace."""


class InvalidRegistry(CitecellsError):
    """The category registry violates its invariants (non-unique names)."""


class UnknownCategory(CitecellsError):
    """A publication references a category code missing from the registry."""


class RowParseError(CitecellsError):
    """An input row could not be parsed."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateId(CitecellsError):
    """Two publications share the same pub_id."""

    def __init__(self, pub_id: str):
        super().__init__(f"duplicate pub_id {pub_id!r}")
        self.pub_id = pub_id


class TemporalViolation(CitecellsError):
    """A publication records citations before its publication year."""

    def __init__(self, pub_id: str, detail: str = ""):
        message = f"publication {pub_id!r}: {detail}" if detail else (
            f"publication {pub_id!r} has citations before its publication year"
        )
        super().__init__(message)
        self.pub_id = pub_id


class DegenerateTriple(CitecellsError):
    """An adjacent-cell triple was requested with identical categories."""


class InvalidSpec(CitecellsError):
    """A synthetic-corpus generator spec is invalid."""


class EmptyDistribution(CitecellsError):
    """A statistic was requested over an empty distribution."""


class MissingReference(CitecellsError):
    """No reference values exist for the requested (cell, year, window)."""


class ZeroExpectation(CitecellsError):
    """Normalization is undefined when the expected citation rate is zero."""


class NonPositiveValue(CitecellsError):
    """Relative differences are defined for positive values only."""


class MixedDimensions(CitecellsError):
    """A summary was requested over records from different dimensions or metrics."""


class EmptyProfile(CitecellsError):
    """A researcher has no admitted articles in the requested period."""


class EmptyReport(CitecellsError):
    """A report was requested for an empty input collection."""
