"""Exception hierarchy.

Errors split in two families so the CLI can map them to exit codes:
``UsageError`` (bad input files, bad config; exit 2) and
``AssessmentError`` (the catalog cannot be assessed; exit 1).
"""


class DcatqError(Exception):
    """Base class for every error raised by this package."""


class UsageError(DcatqError):
    pass


class AssessmentError(DcatqError):
    pass


class IoError(UsageError):
    pass


class EncodingError(UsageError):
    pass


class FormatUndetectable(UsageError):
    pass


class ConfigSchemaError(UsageError):
    def __init__(self, key, message=None):
        self.key = key
        super().__init__(message or f"invalid config key {key!r}")


class FixtureSchemaError(UsageError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class RdfSyntaxError(UsageError):
    """Malformed Turtle or RDF/XML input."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class EmptyCatalog(AssessmentError):
    pass


class InsufficientData(AssessmentError):
    pass


class KeyUnavailable(AssessmentError):
    pass


class NoWords(AssessmentError):
    pass


class ProbeMissing(AssessmentError):
    def __init__(self, url):
        self.url = url
        super().__init__(f"no probe result for {url}")


class UnsupportedScheme(DcatqError):
    def __init__(self, url):
        self.url = url
        super().__init__(f"unsupported URL scheme: {url}")
