"""Exception hierarchy shared across the toolkit.

Each error carries a short machine-parsable ``code`` so the CLI can emit
single-line diagnostics and map failures onto exit codes.
"""


class GlossPairsError(Exception):
    """Base class for all toolkit errors."""

    code = "ERROR"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class ConfigError(GlossPairsError):
    code = "CONFIG"


class UnknownProfileError(ConfigError):
    code = "UNKNOWN_PROFILE"


class UndefinedSimilarityError(GlossPairsError):
    """Cosine similarity is undefined for empty character vectors."""

    code = "UNDEFINED_SIMILARITY"


class DataError(GlossPairsError):
    code = "DATA"


class HeaderMismatchError(DataError):
    code = "HEADER_MISMATCH"


class MissingParserSpecError(DataError):
    code = "MISSING_PARSER_SPEC"


class ParseError(DataError):
    code = "PARSE_ERROR"


class EmptyTestSetError(DataError):
    code = "EMPTY_TEST_SET"


class UnannotatedContextError(DataError):
    code = "UNANNOTATED_CONTEXT"

    def __init__(self, context_ids):
        self.context_ids = list(context_ids)
        super().__init__(
            "contexts without a usable annotation: " + ", ".join(self.context_ids)
        )


class UnknownContextError(DataError):
    code = "UNKNOWN_CONTEXT"


class ReviewConflictError(DataError):
    """The annotation changed since the revision the client looked at."""

    code = "REVIEW_CONFLICT"


class InvalidReviewError(DataError):
    code = "INVALID_REVIEW"


class PredictionCoverageError(DataError):
    code = "PREDICTION_COVERAGE"


class ReportMismatchError(DataError):
    code = "REPORT_MISMATCH"


class MalformedSequenceError(DataError):
    code = "MALFORMED_SEQUENCE"
