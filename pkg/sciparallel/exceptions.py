"""Custom exceptions for sciparallel"""


class SciParallelError(Exception):
    """Base class for all sciparallel errors."""


class ValidationError(SciParallelError, ValueError):
    """Raised if a domain value violates one of its invariants."""


class ConfigError(ValidationError):
    """Raised on an unknown or malformed configuration key."""


class ParseError(SciParallelError, ValueError):
    """Base class for errors raised while reading an artifact file."""


class StoreParseError(ParseError):
    """Raised when a line of a corpus store cannot be decoded.

    Attributes:
        line_number (int): 1-based line number of the corrupt line
    """

    def __init__(self, line_number, message=''):
        self.line_number = line_number
        super().__init__(message or
                         'Corrupt store line {}'.format(line_number))


class ManifestParseError(ParseError):
    """Raised on a malformed manifest row.

    Attributes:
        row_number (int): 1-based row number in the manifest file
    """

    def __init__(self, row_number, message=''):
        self.row_number = row_number
        super().__init__(message or
                         'Malformed manifest row {}'.format(row_number))


class ProfileFormatError(ParseError):
    """Raised when a language profile file is malformed."""


class TmxParseError(ParseError):
    """Raised when a TMX file is not well-formed or violates its structure.

    Attributes:
        unit_index (int): 0-based index of the offending translation
            unit, or ``None`` for document-level problems
    """

    def __init__(self, message, unit_index=None):
        self.unit_index = unit_index
        super().__init__(message)


class UnsupportedVersionError(ParseError):
    """Raised when a TMX file declares a version other than 1.4."""

    def __init__(self, version):
        self.version = version
        super().__init__("Unsupported TMX version '{}'".format(version))


class StoreError(SciParallelError):
    """Base class for corpus store errors.

    Attributes:
        message (str): Message of the error
        error (:exc:`Exception`): Original exception, if available
    """

    def __init__(self, message='', error=None):
        self.message = message
        self.error = error

    def __str__(self):
        return self.message


class DuplicateIdError(StoreError, ValueError):
    """Raised when appending a record whose id is already stored.

    Attributes:
        existing_id (str): The duplicated scielo id
    """

    def __init__(self, existing_id, *args, **kwargs):
        self.existing_id = existing_id
        kwargs.setdefault('message',
                          "Article '{}' is already stored".format(existing_id))
        super().__init__(*args, **kwargs)


class MissingFileError(SciParallelError, OSError):
    """Raised when a manifest references a file that does not exist.

    Attributes:
        path (str): The missing path
    """

    def __init__(self, path):
        self.path = str(path)
        super().__init__("Referenced file does not exist: '{}'".format(path))


class FetchError(StoreError, OSError):
    """Raised if a fetcher fails to retrieve an article body.
    Should contain the original error that caused the failure, if
    available.
    """


class EmptyDocumentError(SciParallelError, ValueError):
    """Raised when no text is left after stripping a document's markup."""


class InsufficientDataError(SciParallelError, ValueError):
    """Raised when a language profile is trained on too little text."""


class EmptyInputError(SciParallelError, ValueError):
    """Raised when language detection is asked about an empty text."""


class InvalidBeadError(ValidationError):
    """Raised for an unknown bead kind or an illegal bead sequence."""


class IncompatibleStructureError(SciParallelError, ValueError):
    """Raised when aligning two documents judged structurally
    incompatible without the document-level override.
    """


class PivotMismatchError(SciParallelError, ValueError):
    """Raised when a pair list does not share the requested pivot
    language.
    """


class InvalidRatiosError(ValidationError):
    """Raised when split ratios are not positive or do not sum to one."""


class InputMismatchError(SciParallelError, ValueError):
    """Raised when BLEU candidates and references cannot be paired."""


class IncompleteReviewError(SciParallelError, ValueError):
    """Raised when accuracy is requested for items without verdicts.

    Attributes:
        ids (list of str): Ids of the items still missing a verdict
    """

    def __init__(self, ids, message=''):
        self.ids = list(ids)
        super().__init__(message or 'Missing verdicts for: {}'.format(
            ', '.join(self.ids) or '(empty review set)'))


class MissingMetadataError(SciParallelError, LookupError):
    """Raised when TMX export finds no metadata for an article id.

    Attributes:
        article_id (str): The article lacking metadata
    """

    def __init__(self, article_id):
        self.article_id = article_id
        super().__init__("No metadata for article '{}'".format(article_id))
