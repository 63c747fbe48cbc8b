"""Append-only, line-delimited corpus stores.

:class:`CorpusStore` keeps one :class:`~.ArticleRecord` per line (the
fields ``scielo_id``, ``doi``, ``journal``, ``subject_area``,
``authors``, ``license``, ``titles`` and ``bodies``);
:class:`DocumentStore` keeps the parsed documents and compatibility
verdicts of each article. Both are plain UTF-8 files scanned linearly.

Any number of readers may scan a store concurrently; writers must be
serialised by the caller. Appends through one store instance are
serialised with a lock, and the instance reads the stored ids only once,
so records written by another writer after the first append are not seen
by its duplicate check.
"""

import logging
import threading
from pathlib import Path

import attr

from sciparallel.data_formats import (
    article_from_dict,
    article_to_dict,
    dumps_line,
    iter_jsonl,
    parsed_from_dict,
    parsed_to_dict,
)
from sciparallel.exceptions import (
    DuplicateIdError,
    StoreParseError,
    ValidationError,
)
from sciparallel.models import ArticleRecord, LanguageTag, ParsedArticle


logger = logging.getLogger(__name__)


@attr.s(repr=False)
class _LineStore:
    path = attr.ib(converter=Path)
    _lock = attr.ib(init=False, default=attr.Factory(threading.Lock))
    _known_ids = attr.ib(init=False, default=None)

    record_type = None
    to_dict = None
    from_dict = None

    def __repr__(self):
        return '{}({})'.format(self.__class__.__name__, self.path)

    def exists(self):
        return self.path.is_file()

    def _decode(self, line_number, data):
        try:
            return type(self).from_dict(data)
        except (KeyError, TypeError, ValueError) as ex:
            raise StoreParseError(
                line_number, 'Invalid record on line {} of {}: {}'.format(
                    line_number, self.path, ex)) from ex

    def scan(self, predicate=None):
        """Yield the stored records in append order, keeping those for
        which :attr:`predicate` is true.

        Raises:
            :exc:`~.StoreParseError`: on the first corrupt line, carrying
                its line number
            :exc:`FileNotFoundError`: If the store file does not exist
        """
        for line_number, data in iter_jsonl(self.path):
            record = self._decode(line_number, data)
            if predicate is None or predicate(record):
                yield record

    def ids(self):
        """list of str: stored article ids, in append order."""
        if not self.exists():
            return []
        return [data.get('scielo_id') for _, data in iter_jsonl(self.path)]

    def count(self):
        return len(self.ids())

    def _stored_ids(self):
        # read once per instance; later appends keep the set current
        if self._known_ids is None:
            self._known_ids = set(self.ids())
        return self._known_ids

    def append(self, record):
        """Append :attr:`record` as one line.

        Returns:
            str: the stored article id

        Raises:
            :exc:`~.ValidationError`: If :attr:`record` is not a record
                of this store's type
            :exc:`~.DuplicateIdError`: If the id is already stored
        """
        if not isinstance(record, self.record_type):
            raise ValidationError("{} only stores '{}' records. Given "
                                  "'{}'".format(type(self).__name__,
                                                self.record_type.__name__,
                                                record))
        line = dumps_line(type(self).to_dict(record))
        article_id = self._record_id(record)
        with self._lock:
            known_ids = self._stored_ids()
            if article_id in known_ids:
                raise DuplicateIdError(article_id)
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open('a', encoding='utf-8', newline='\n') as fp:
                fp.write(line)
                fp.write('\n')
            known_ids.add(article_id)
        logger.debug("Stored '%s' in %s", article_id, self.path)
        return article_id

    def extend(self, records):
        return [self.append(record) for record in records]

    def _record_id(self, record):
        raise NotImplementedError


class CorpusStore(_LineStore):
    """Store of :class:`~.ArticleRecord` values, one per line."""

    record_type = ArticleRecord
    to_dict = staticmethod(article_to_dict)
    from_dict = staticmethod(article_from_dict)

    def _record_id(self, record):
        return record.scielo_id


class DocumentStore(_LineStore):
    """Store of :class:`~.ParsedArticle` values, one per line."""

    record_type = ParsedArticle
    to_dict = staticmethod(parsed_to_dict)
    from_dict = staticmethod(parsed_from_dict)

    def _record_id(self, record):
        return record.article_id


def has_language(*langs):
    """Store predicate: true for records with a body in every language
    of :attr:`langs`.
    """
    wanted = {LanguageTag.parse(lang) for lang in langs}
    return lambda record: wanted.issubset(record.bodies)


def store_append(record, store_path):
    """Append :attr:`record` to the corpus store at :attr:`store_path`.

    Returns:
        str: the record's scielo id
    """
    return CorpusStore(store_path).append(record)


def store_scan(store_path, predicate=None):
    """Iterate over the records of the corpus store at
    :attr:`store_path` in append order, filtered by :attr:`predicate`.
    """
    return CorpusStore(store_path).scan(predicate)
