"""High-level functions running the corpus pipeline stage by stage.

Every stage reads the artifacts of the previous one from the output
directory and writes its own, so stages can be run one at a time or all
at once with :meth:`Pipeline.run_all` and produce the same files.
"""

import logging
import time
from collections import OrderedDict
from pathlib import Path

import attr
from joblib import Parallel, delayed
from tqdm import tqdm

from sciparallel.align import align_article
from sciparallel.config import PipelineConfig
from sciparallel.data_formats import (
    DataFormat,
    alignment_from_dict,
    alignment_to_dict,
    format_from_path,
    iter_jsonl,
    pair_from_dict,
    pair_to_dict,
    parsed_to_dict,
    read_jsonl,
    unit_from_dict,
    unit_to_dict,
    write_jsonl,
)
from sciparallel.dictionary import load_dictionary
from sciparallel.docparse import check_compatibility, parse_html
from sciparallel.evalkit import corpus_stats
from sciparallel.exceptions import (
    EmptyDocumentError,
    IncompatibleStructureError,
    ValidationError,
)
from sciparallel.fetcher import AbstractFetcher, LocalFileFetcher
from sciparallel.filters import FilterReport, run_filters
from sciparallel.ingest import ingest_all, load_manifest
from sciparallel.langid import default_profiles, load_profiles
from sciparallel.models import LanguageTag, ParsedArticle, pair_name
from sciparallel.segment import load_abbreviations
from sciparallel.store import CorpusStore, DocumentStore
from sciparallel.tmx import read_tmx, write_tmx
from sciparallel.trilingual import join_trilingual


logger = logging.getLogger(__name__)

STATS_COLUMNS = ('corpus', 'docs', 'sents', 'tokens')


@attr.s(frozen=True)
class OutputLayout:
    """Artifact paths under an output directory."""
    root = attr.ib(converter=Path)

    @property
    def documents(self):
        return self.root / 'documents.jsonl'

    def alignments(self, pair):
        return self.root / 'alignments' / '{}.jsonl'.format(pair)

    def pairs(self, pair):
        return self.root / 'pairs' / '{}.jsonl'.format(pair)

    @property
    def trilingual(self):
        return self.root / 'trilingual.jsonl'

    def tmx(self, name):
        return self.root / '{}.tmx'.format(name)

    @property
    def stats(self):
        return self.root / 'stats.tsv'

    @property
    def summary(self):
        return self.root / 'run-summary.txt'


@attr.s(frozen=True)
class AlignResult:
    """Aligned documents of one language pair, plus the ids of the
    articles that could not be aligned."""
    pair = attr.ib()
    alignments = attr.ib(converter=tuple)
    skipped = attr.ib(default=(), converter=tuple)


@attr.s(frozen=True)
class RunSummary:
    """Counts and stage timings of one run, written as ``key=value``
    lines."""
    counts = attr.ib(default=attr.Factory(OrderedDict))
    timings = attr.ib(default=attr.Factory(OrderedDict))

    def lines(self):
        lines = ['{}={}'.format(key, value)
                 for key, value in self.counts.items()]
        lines.extend('time.{}={:.3f}'.format(stage, seconds)
                     for stage, seconds in self.timings.items())
        return lines

    def write(self, path):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text('\n'.join(self.lines()) + '\n', encoding='utf-8')
        return str(path)


def read_summary(path):
    """Parse a run summary back into a ``{key: value}`` dict of
    strings."""
    values = OrderedDict()
    for line in Path(path).read_text(encoding='utf-8').splitlines():
        key, sep, value = line.partition('=')
        if sep:
            values[key] = value
    return values


def _is_unit_dict(data):
    return 'texts' in data


def load_items(path):
    """Load pairs or trilingual units from a ``.jsonl`` or ``.tmx``
    file.

    Returns:
        list of :class:`~.AlignedPair` or :class:`~.TrilingualUnit`
    """
    data_format = format_from_path(path)
    if data_format is DataFormat.tmx:
        return read_tmx(path)[0]
    if data_format is not DataFormat.jsonl:
        raise ValidationError("Cannot read pairs from '{}'; use a .jsonl "
                              'or .tmx file'.format(path))
    for _, data in iter_jsonl(path):
        from_dict = unit_from_dict if _is_unit_dict(data) else pair_from_dict
        return read_jsonl(path, from_dict)
    return []


def _parse_article(record, pairs):
    documents = {}
    for lang, markup in sorted(record.bodies.items()):
        try:
            documents[lang] = parse_html(markup, lang)
        except EmptyDocumentError as ex:
            logger.warning("Skipping %s version of '%s': %s", lang.value,
                           record.scielo_id, ex)
    verdicts = {}
    for src, tgt in pairs:
        if src in documents and tgt in documents:
            verdict = check_compatibility(documents[src], documents[tgt])
            if not verdict.is_compatible:
                logger.warning("'%s' %s: incompatible structure %s",
                               record.scielo_id, pair_name(src, tgt),
                               verdict.detail)
            verdicts[(src, tgt)] = verdict
    return ParsedArticle(article_id=record.scielo_id, documents=documents,
                         verdicts=verdicts)


@attr.s(frozen=True, repr=False)
class Pipeline:
    """Pipeline bound to a :class:`~.PipelineConfig`.

    Stages, in order:

        - :meth:`ingest`
        - :meth:`parse`
        - :meth:`align`
        - :meth:`filter`
        - :meth:`trilingual`
        - :meth:`export_tmx`
        - :meth:`stats`

    Attributes:
        config (:class:`~.PipelineConfig`): Run configuration
        fetcher (:class:`~.AbstractFetcher`): Article body retriever
        progress (bool): Show progress bars on standard error
    """
    config = attr.ib(default=attr.Factory(PipelineConfig),
                     validator=attr.validators.instance_of(PipelineConfig))
    fetcher = attr.ib(default=attr.Factory(LocalFileFetcher),
                      validator=attr.validators.instance_of(AbstractFetcher))
    progress = attr.ib(default=False)

    def __repr__(self):
        return 'Pipeline writing to {}'.format(self.config.out)

    @property
    def layout(self):
        return OutputLayout(self.config.out)

    @property
    def store(self):
        return CorpusStore(self.config.store_path)

    def _parallel(self, function, items, desc):
        items = list(items)
        return Parallel(n_jobs=self.config.jobs, prefer='threads')(
            delayed(function)(item)
            for item in tqdm(items, desc=desc, unit='article',
                             disable=not self.progress))

    def abbreviations(self):
        """Abbreviation overrides found in ``abbreviations_dir``, by
        language."""
        directory = self.config.abbreviations_dir
        if directory is None:
            return None
        overrides = {}
        for lang in LanguageTag:
            path = directory / '{}.txt'.format(lang.value)
            overrides[lang] = load_abbreviations(
                lang, path if path.is_file() else None)
        return overrides

    def profiles(self):
        if self.config.profiles_dir is not None:
            return load_profiles(self.config.profiles_dir)
        return default_profiles()

    def metadata(self):
        """Metadata of every stored article, by id."""
        return {record.scielo_id: record.metadata
                for record in self.store.scan()}

    def ingest(self, manifest_path):
        """Load a manifest and store its eligible articles. Articles
        already in the store are left alone.

        Returns:
            :class:`~.IngestReport`
        """
        store = self.store
        known = set(store.ids())
        entries = []
        for entry in load_manifest(manifest_path):
            if entry.scielo_id in known:
                logger.info("'%s' is already stored", entry.scielo_id)
            else:
                entries.append(entry)
        return ingest_all(entries, store, fetcher=self.fetcher,
                          jobs=self.config.jobs, progress=self.progress)

    def parse(self):
        """Parse every stored article and judge the structural
        compatibility of each configured pair.

        Returns:
            list of :class:`~.ParsedArticle`, in store order
        """
        records = list(self.store.scan())
        parsed = self._parallel(
            lambda record: _parse_article(record, self.config.pairs),
            records, 'parse')
        path = self.layout.documents
        path.parent.mkdir(parents=True, exist_ok=True)
        write_jsonl(path, parsed, parsed_to_dict)
        logger.info('Parsed %d articles into %s', len(parsed), path)
        return parsed

    def parsed_articles(self):
        return list(DocumentStore(self.layout.documents).scan())

    def _align_one(self, parsed, src, tgt, dictionary, abbreviations):
        verdict = parsed.verdict(src, tgt)
        if verdict is None:
            return None
        try:
            return align_article(
                parsed.documents[src], parsed.documents[tgt], verdict,
                self.config.aligner, article_id=parsed.article_id,
                document_level=self.config.document_level,
                dictionary=dictionary, abbreviations=abbreviations)
        except IncompatibleStructureError as ex:
            logger.warning("Not aligning '%s' %s: %s", parsed.article_id,
                           pair_name(src, tgt), ex)
            return None

    def align(self, pair, dictionary_path=None):
        """Align every parsed article holding both languages of
        :attr:`pair`.

        Args:
            pair ((:class:`~.LanguageTag`, :class:`~.LanguageTag`)):
                Source and target language
            dictionary_path (path, optional): External dictionary; skips
                the first pass

        Returns:
            :class:`AlignResult`
        """
        src, tgt = pair
        name = pair_name(src, tgt)
        dictionary = None
        if dictionary_path is not None:
            dictionary = load_dictionary(dictionary_path)
        abbreviations = self.abbreviations()
        candidates = [parsed for parsed in self.parsed_articles()
                      if parsed.verdict(src, tgt) is not None]
        aligned = self._parallel(
            lambda parsed: self._align_one(parsed, src, tgt, dictionary,
                                           abbreviations),
            candidates, 'align ' + name)
        alignments = [alignment for alignment in aligned
                      if alignment is not None]
        skipped = [parsed.article_id
                   for parsed, alignment in zip(candidates, aligned)
                   if alignment is None]
        path = self.layout.alignments(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        write_jsonl(path, alignments, alignment_to_dict)
        logger.info('Aligned %d %s articles (%d skipped)', len(alignments),
                    name, len(skipped))
        return AlignResult(pair=name, alignments=alignments, skipped=skipped)

    def filter(self, pair):
        """Clean the alignments of :attr:`pair` into released pairs.

        Returns:
            (list of :class:`~.AlignedPair`, :class:`~.FilterReport`)
        """
        name = pair_name(*pair)
        alignments = read_jsonl(self.layout.alignments(name),
                                alignment_from_dict)
        pairs, report = run_filters(alignments, self.config.filter_config,
                                    self.profiles())
        path = self.layout.pairs(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        write_jsonl(path, pairs, pair_to_dict)
        return pairs, report

    def pivot_pairs(self):
        """The two configured pairs containing the pivot language.

        Raises:
            :exc:`~.ValidationError`: unless exactly two configured
                pairs join the pivot with two different languages
        """
        pivot = self.config.pivot
        candidates = {}
        for src, tgt in self.config.pairs:
            if pivot in (src, tgt):
                other = tgt if src == pivot else src
                candidates.setdefault(other, (src, tgt))
        if len(candidates) != 2:
            raise ValidationError(
                "Trilingual join needs two pairs with pivot '{}'; "
                'configured: {}'.format(pivot.value,
                                        ', '.join(self.config.pair_names)))
        return [candidates[lang] for lang in sorted(candidates)]

    def trilingual(self):
        """Join the two pivot pair files into trilingual units.

        Returns:
            list of :class:`~.TrilingualUnit`
        """
        pair_ab, pair_ac = self.pivot_pairs()
        units = join_trilingual(
            load_items(self.layout.pairs(pair_name(*pair_ab))),
            load_items(self.layout.pairs(pair_name(*pair_ac))),
            self.config.pivot)
        write_jsonl(self.layout.trilingual, units, unit_to_dict)
        return units

    def trilingual_name(self):
        return '-'.join(lang.value for lang in sorted(LanguageTag))

    def export_tmx(self, pair=None, path=None, metadata=None):
        """Write the pairs of :attr:`pair`, or the trilingual units when
        :attr:`pair` is ``None``, to TMX.

        Returns:
            str: the path written
        """
        if pair is None:
            items = load_items(self.layout.trilingual)
            name = self.trilingual_name()
        else:
            name = pair_name(*pair)
            items = load_items(self.layout.pairs(name))
        metadata = self.metadata() if metadata is None else metadata
        return write_tmx(items, metadata, path or self.layout.tmx(name))

    def corpus_files(self):
        """``(name, path)`` of every existing pair and trilingual
        file."""
        files = [(name, self.layout.pairs(name))
                 for name in self.config.pair_names]
        files.append((self.trilingual_name(), self.layout.trilingual))
        return [(name, path) for name, path in files if path.is_file()]

    def stats(self, files=None, path=None):
        """Compute :class:`~.CorpusStats` for each corpus file and write
        them as a tab-separated table.

        Returns:
            list of :class:`~.CorpusStats`
        """
        files = self.corpus_files() if files is None else files
        stats = [corpus_stats(load_items(file_path))
                 for _, file_path in files]
        path = Path(path or self.layout.stats)
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = ['\t'.join(STATS_COLUMNS)]
        for (name, _), corpus in zip(files, stats):
            lines.append('\t'.join([
                name, str(corpus.docs), str(corpus.sents),
                ' / '.join(str(corpus.tokens.get(lang, 0))
                           for lang in corpus.languages)]))
        path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
        return stats

    def run_all(self, manifest_path):
        """Run every stage in order and write the run summary.

        Returns:
            :class:`RunSummary`
        """
        summary = RunSummary()
        counts, timings = summary.counts, summary.timings

        def timed(stage, function, *args):
            start = time.perf_counter()
            result = function(*args)
            timings[stage] = timings.get(stage, 0.0) + \
                time.perf_counter() - start
            return result

        report = timed('ingest', self.ingest, manifest_path)
        counts['articles.kept'] = len(report.kept)
        counts['articles.rejected'] = len(report.rejected)
        counts['articles.errors'] = len(report.errors)
        counts['articles.stored'] = self.store.count()

        parsed = timed('parse', self.parse)
        counts['documents.parsed'] = len(parsed)

        total = FilterReport()
        for pair in self.config.pairs:
            name = pair_name(*pair)
            result = timed('align', self.align, pair)
            counts['{}.aligned'.format(name)] = len(result.alignments)
            counts['{}.skipped'.format(name)] = len(result.skipped)
            pairs, filter_report = timed('filter', self.filter, pair)
            for key, value in filter_report.to_dict().items():
                counts['{}.filter.{}'.format(name, key)] = value
            total += filter_report

        for key, value in total.to_dict().items():
            counts['filter.{}'.format(key)] = value

        try:
            self.pivot_pairs()
        except ValidationError as ex:
            logger.info('No trilingual corpus: %s', ex)
        else:
            units = timed('trilingual', self.trilingual)
            counts['trilingual.units'] = len(units)

        metadata = self.metadata()
        for pair in self.config.pairs:
            timed('export_tmx', self.export_tmx, pair, None, metadata)
        if self.layout.trilingual.is_file():
            timed('export_tmx', self.export_tmx, None, None, metadata)

        for (name, _), corpus in zip(self.corpus_files(),
                                     timed('stats', self.stats)):
            counts['{}.docs'.format(name)] = corpus.docs
            counts['{}.sents'.format(name)] = corpus.sents

        summary.write(self.layout.summary)
        logger.info('Run finished; summary in %s', self.layout.summary)
        return summary
