from abc import ABC, abstractmethod
from pathlib import Path

from sciparallel.exceptions import FetchError, MissingFileError


class AbstractFetcher(ABC):
    """Abstract interface for retrieving article bodies.

    Ingest only depends on this interface, so a crawler for a remote
    archive can be plugged in without touching the rest of the pipeline.

    Expects the following to be defined by the subclass:
        - :attr:`type` (as a read-only property)
        - :func:`fetch`
    """

    @property
    @abstractmethod
    def type(self):
        """A string denoting the type of fetcher (e.g. local-file)."""

    @abstractmethod
    def fetch(self, entry, lang):
        """Retrieve the raw markup of one language version.

        Args:
            entry (:class:`~.ManifestEntry`): The manifest entry
            lang (:class:`~.LanguageTag`): Language version to fetch

        Returns:
            str: The raw document markup

        Raises:
            :exc:`~.MissingFileError`: If the source is gone
            :exc:`~.FetchError`: If any other retrieval error occurred
        """


class LocalFileFetcher(AbstractFetcher):
    """Reads article bodies from the paths listed in the manifest."""

    def __init__(self, encoding='utf-8'):
        self.encoding = encoding

    def __repr__(self):
        return 'LocalFileFetcher(encoding={})'.format(self.encoding)

    @property
    def type(self):
        return 'local-file'

    def fetch(self, entry, lang):
        path = Path(entry.languages[lang].path)
        if not path.is_file():
            raise MissingFileError(path)
        try:
            return path.read_text(encoding=self.encoding)
        except (OSError, UnicodeDecodeError) as ex:
            raise FetchError(message="Could not read '{}': {}".format(
                path, ex), error=ex) from ex
