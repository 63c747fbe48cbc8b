"""Manifest loading, eligibility filtering and corpus store population.

A manifest is a tab-separated UTF-8 file with one article per row::

    scielo_id  license  journal  subject_area  doi  authors  lang:path:title

``authors`` is ``;``-joined and every language version is a
``lang:path:title`` triple (the title may itself contain colons).
Relative paths are resolved against the manifest's directory. An
optional header row starting with ``scielo_id`` is skipped.
"""

import csv
import logging
import re
from enum import Enum, unique
from pathlib import Path
from types import MappingProxyType

import attr
from joblib import Parallel, delayed
from tqdm import tqdm

import sciparallel.model_validators as validators
from sciparallel.exceptions import (
    ManifestParseError,
    MissingFileError,
    SciParallelError,
    ValidationError,
)
from sciparallel.fetcher import AbstractFetcher, LocalFileFetcher
from sciparallel.models import ArticleMetadata, ArticleRecord, LanguageTag
from sciparallel.store import CorpusStore


logger = logging.getLogger(__name__)

FIXED_COLUMNS = ('scielo_id', 'license', 'journal', 'subject_area', 'doi',
                 'authors')

_LICENSE_SEPARATORS = re.compile(r'[-_/\s]+')


@unique
class RejectReason(Enum):
    languages = 'languages'
    license = 'license'


@attr.s(frozen=True)
class LanguageSource:
    path = attr.ib(converter=Path)
    title = attr.ib(default=None)


def _sources(value):
    return MappingProxyType({LanguageTag.parse(lang): source
                             for lang, source in dict(value).items()})


@attr.s(frozen=True)
class ManifestEntry:
    """One manifest row: article metadata plus the file and title of
    each listed language version.
    """
    scielo_id = attr.ib(validator=validators.is_nonempty_str)
    license = attr.ib(validator=validators.is_nonempty_str)
    journal = attr.ib(converter=str)
    subject_area = attr.ib(converter=str)
    languages = attr.ib(converter=_sources,
                        validator=validators.has_min_length(1))
    doi = attr.ib(default=None)
    authors = attr.ib(default=(), converter=tuple)

    def to_metadata(self):
        titles = {lang: source.title
                  for lang, source in self.languages.items() if source.title}
        return ArticleMetadata(scielo_id=self.scielo_id,
                               journal=self.journal,
                               subject_area=self.subject_area,
                               license=self.license, doi=self.doi,
                               authors=self.authors, titles=titles)


@attr.s(frozen=True)
class IngestReport:
    """Outcome of :func:`ingest_all`.

    Attributes:
        kept (tuple of str): Ids of the stored articles
        rejected (tuple of (str, :class:`RejectReason`)): Ineligible
            articles with the reason
        errors (tuple of (str, str)): Articles that failed to be read or
            stored, with the error message
    """
    kept = attr.ib(default=(), converter=tuple)
    rejected = attr.ib(default=(), converter=tuple)
    errors = attr.ib(default=(), converter=tuple)

    @property
    def counts(self):
        return (len(self.kept), len(self.rejected), len(self.errors))

    @property
    def total(self):
        return sum(self.counts)


def _parse_language_cell(cell, base_dir, row_number):
    parts = cell.split(':', 2)
    if len(parts) < 2 or not parts[1].strip():
        raise ManifestParseError(
            row_number, "Row {}: language cell must look like "
                        "'lang:path:title'. Given '{}'".format(row_number,
                                                               cell))
    try:
        lang = LanguageTag.parse(parts[0])
    except ValidationError as ex:
        raise ManifestParseError(row_number, 'Row {}: {}'.format(
            row_number, ex)) from ex
    path = Path(parts[1].strip())
    if not path.is_absolute():
        path = base_dir / path
    title = parts[2].strip() if len(parts) == 3 else ''
    return lang, LanguageSource(path=path, title=title or None)


def parse_manifest_row(row, row_number, base_dir):
    """Turn one manifest row (a list of cells) into a
    :class:`ManifestEntry`.

    Raises:
        :exc:`~.ManifestParseError`: If the row is malformed
        :exc:`~.MissingFileError`: If a referenced file does not exist
    """
    if len(row) <= len(FIXED_COLUMNS):
        raise ManifestParseError(
            row_number, 'Row {}: expected {} metadata columns and at least '
                        'one language, got {} cells'.format(
                            row_number, len(FIXED_COLUMNS), len(row)))
    fields = dict(zip(FIXED_COLUMNS, (cell.strip() for cell in row)))
    languages = {}
    for cell in row[len(FIXED_COLUMNS):]:
        if not cell.strip():
            continue
        lang, source = _parse_language_cell(cell.strip(), base_dir,
                                            row_number)
        if lang in languages:
            raise ManifestParseError(
                row_number, "Row {}: language '{}' listed twice".format(
                    row_number, lang.value))
        languages[lang] = source
    for source in languages.values():
        if not source.path.is_file():
            raise MissingFileError(source.path)

    authors = [name.strip() for name in fields['authors'].split(';')
               if name.strip()]
    try:
        return ManifestEntry(scielo_id=fields['scielo_id'],
                             license=fields['license'],
                             journal=fields['journal'],
                             subject_area=fields['subject_area'],
                             doi=fields['doi'] or None, authors=authors,
                             languages=languages)
    except ValidationError as ex:
        raise ManifestParseError(row_number, 'Row {}: {}'.format(
            row_number, ex)) from ex


def load_manifest(path):
    """Load every entry of the manifest at :attr:`path`, in file order.
    No eligibility filtering is applied.

    Returns:
        list of :class:`ManifestEntry`
    """
    path = Path(path)
    entries = []
    with path.open(encoding='utf-8', newline='') as fp:
        reader = csv.reader(fp, delimiter='\t', quoting=csv.QUOTE_NONE)
        for row_number, row in enumerate(reader, start=1):
            if not any(cell.strip() for cell in row):
                continue
            if row_number == 1 and row[0].strip().lower() == 'scielo_id':
                continue
            entries.append(parse_manifest_row(row, row_number, path.parent))
    logger.info('Loaded %d manifest entries from %s', len(entries), path)
    return entries


def is_no_derivatives(license):
    """Whether :attr:`license` carries the No-Derivatives element
    (``ND``), compared case-insensitively on its ``-``/``_``/``/``
    separated elements.
    """
    elements = _LICENSE_SEPARATORS.split(license.strip().upper())
    return 'ND' in elements


def rejection_reason(entry):
    """Return the :class:`RejectReason` of an ineligible entry, or
    ``None`` when the entry may enter the corpus.
    """
    if len(entry.languages) < 2:
        return RejectReason.languages
    if is_no_derivatives(entry.license):
        return RejectReason.license
    return None


def filter_eligible(entries):
    """Split :attr:`entries` into eligible and rejected ones.

    An entry is kept when at least two of en/pt/es are available and
    its license allows derivatives.

    Returns:
        tuple: ``(kept, rejected)`` where ``rejected`` is a list of
        ``(entry, RejectReason)`` tuples
    """
    kept, rejected = [], []
    for entry in entries:
        reason = rejection_reason(entry)
        if reason is None:
            kept.append(entry)
        else:
            rejected.append((entry, reason))
    return kept, rejected


def _fetch_bodies(fetcher, entry):
    try:
        return {lang: fetcher.fetch(entry, lang) for lang in entry.languages}
    except (SciParallelError, OSError) as ex:
        return ex


def ingest_all(entries, store, *, fetcher=None, jobs=1, progress=False):
    """Read and store every eligible entry of :attr:`entries`.

    Bodies are read in a :mod:`joblib` thread pool of :attr:`jobs`
    workers; records are appended to the store in entry order from the
    calling thread. Per-entry failures are recorded in the report and
    never abort the batch.

    Args:
        entries (list of :class:`ManifestEntry`): Entries to ingest
        store (:class:`~.CorpusStore` or path): Target corpus store
        fetcher (:class:`~.AbstractFetcher`, keyword, optional): Body
            retriever; defaults to :class:`~.LocalFileFetcher`
        jobs (int, keyword, optional): Number of parallel readers
        progress (bool, keyword, optional): Show a progress bar

    Returns:
        :class:`IngestReport`
    """
    if not isinstance(store, CorpusStore):
        store = CorpusStore(store)
    fetcher = fetcher or LocalFileFetcher()
    if not isinstance(fetcher, AbstractFetcher):
        raise ValidationError("'fetcher' must implement AbstractFetcher. "
                              "Given '{}'".format(fetcher))

    eligible, ineligible = filter_eligible(entries)
    rejected = [(entry.scielo_id, reason) for entry, reason in ineligible]
    for scielo_id, reason in rejected:
        logger.info("Rejected '%s' (%s)", scielo_id, reason.value)

    fetched = Parallel(n_jobs=jobs, prefer='threads')(
        delayed(_fetch_bodies)(fetcher, entry) for entry in eligible)

    kept, errors = [], []
    for entry, bodies in tqdm(zip(eligible, fetched), total=len(eligible),
                              desc='ingest', unit='article',
                              disable=not progress):
        try:
            if isinstance(bodies, Exception):
                raise bodies
            record = ArticleRecord(metadata=entry.to_metadata(),
                                   bodies=bodies)
            kept.append(store.append(record))
        except (SciParallelError, OSError) as ex:
            logger.warning("Could not ingest '%s': %s", entry.scielo_id, ex)
            errors.append((entry.scielo_id, str(ex)))

    report = IngestReport(kept=kept, rejected=rejected, errors=errors)
    logger.info('Ingest finished: %d kept, %d rejected, %d errors',
                *report.counts)
    return report
