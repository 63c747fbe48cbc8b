"""Evaluation utilities: token counts, corpus statistics, train/tune/test
splits, corpus BLEU, plain-text export and manual review sheets.
"""

import csv
import logging
import math
import random
from collections import Counter
from enum import Enum, unique
from fractions import Fraction
from types import MappingProxyType

import attr
import regex

from sciparallel.exceptions import (
    IncompleteReviewError,
    InputMismatchError,
    InvalidRatiosError,
    ParseError,
    ValidationError,
)
from sciparallel.models import LanguageTag, TrilingualUnit


logger = logging.getLogger(__name__)

DEFAULT_RATIOS = (0.85, 0.05, 0.10)
SPLIT_NAMES = ('train', 'tune', 'test')
REVIEW_COLUMNS = ('id', 'set', 'src_text', 'tgt_text', 'third_text',
                  'verdict')

_TOKEN = regex.compile(r'\p{N}+(?:\.\p{N}+)+|[^\s\p{P}\p{S}]+|[\p{P}\p{S}]')


def tokenize(text):
    """Split punctuation and symbols off as tokens of their own, then
    split on whitespace. A ``.`` between digits stays inside the number.

    >>> tokenize('p<0.05')
    ['p', '<', '0.05']
    """
    return _TOKEN.findall(text)


def _unit_languages(item):
    if isinstance(item, TrilingualUnit):
        return tuple(sorted(item.texts))
    return item.languages


def _unit_text(item, lang):
    if isinstance(item, TrilingualUnit):
        return item.texts[lang]
    return item.side(lang)[0]


def _compact_count(count):
    if count >= 1000000:
        return '{:.1f}M'.format(count / 1000000)
    return '{:,}'.format(count)


@attr.s(frozen=True)
class CorpusStats:
    """Size of a bilingual or trilingual corpus.

    Attributes:
        languages (tuple of :class:`~.LanguageTag`): Corpus languages
        docs (int): Distinct article ids
        sents (int): Aligned units
        tokens (mapping of :class:`~.LanguageTag` to int): Tokens per
            language
    """
    languages = attr.ib(converter=tuple)
    docs = attr.ib(default=0)
    sents = attr.ib(default=0)
    tokens = attr.ib(default=attr.Factory(dict),
                     converter=lambda value: MappingProxyType(dict(value)))

    @property
    def label(self):
        return '-'.join(lang.value.upper() for lang in self.languages)

    def render_row(self):
        """``EN-ES | 2,029 | 177,781 | 5.2M / 5.7M``"""
        return ' | '.join([
            self.label, '{:,}'.format(self.docs), '{:,}'.format(self.sents),
            ' / '.join(_compact_count(self.tokens.get(lang, 0))
                       for lang in self.languages)])

    def to_dict(self):
        return {'languages': self.label, 'docs': self.docs,
                'sents': self.sents,
                'tokens': {lang.value: self.tokens.get(lang, 0)
                           for lang in self.languages}}


def corpus_stats(items, languages=None):
    """Count documents, units and tokens of a list of
    :class:`~.AlignedPair` or :class:`~.TrilingualUnit` values.

    Args:
        items (list): Pairs or trilingual units
        languages (iterable of :class:`~.LanguageTag`, optional): Column
            order; defaults to the languages of the first item
    """
    items = list(items)
    if languages is None:
        languages = _unit_languages(items[0]) if items else ()
    languages = tuple(LanguageTag.parse(lang) for lang in languages)
    tokens = Counter({lang: 0 for lang in languages})
    for item in items:
        for lang in languages:
            tokens[lang] += len(tokenize(_unit_text(item, lang)))
    return CorpusStats(languages=languages,
                       docs=len({item.article_id for item in items}),
                       sents=len(items), tokens=tokens)


@attr.s(frozen=True)
class SplitResult:
    train = attr.ib(converter=tuple)
    tune = attr.ib(converter=tuple)
    test = attr.ib(converter=tuple)
    seed = attr.ib()

    @property
    def sizes(self):
        return (len(self.train), len(self.tune), len(self.test))

    def parts(self):
        return tuple(zip(SPLIT_NAMES, (self.train, self.tune, self.test)))


def _check_ratios(ratios):
    ratios = tuple(ratios)
    if len(ratios) != 3 or any(r <= 0 for r in ratios):
        raise InvalidRatiosError('Split ratios must be three positive '
                                 'numbers. Given {}'.format(ratios))
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise InvalidRatiosError('Split ratios must sum to 1. Given '
                                 '{}'.format(ratios))
    return [Fraction(r).limit_denominator(10 ** 6) for r in ratios]


def split_sizes(total, ratios=DEFAULT_RATIOS):
    """Largest-remainder allocation of :attr:`total` items; leftovers go
    by descending remainder, ties to train, then tune, then test.
    """
    quotas = [total * ratio for ratio in _check_ratios(ratios)]
    sizes = [math.floor(quota) for quota in quotas]
    order = sorted(range(3), key=lambda k: (-(quotas[k] - sizes[k]), k))
    for k in order[:total - sum(sizes)]:
        sizes[k] += 1
    return sizes


def split_corpus(pairs, ratios=DEFAULT_RATIOS, seed=42):
    """Shuffle :attr:`pairs` under :attr:`seed` and cut them into train,
    tune and test sets.

    Raises:
        :exc:`~.InvalidRatiosError`: unless the ratios are three
            positive numbers summing to one
    """
    pairs = list(pairs)
    n_train, n_tune, _ = split_sizes(len(pairs), ratios)
    shuffled = list(pairs)
    random.Random(seed).shuffle(shuffled)
    return SplitResult(train=shuffled[:n_train],
                       tune=shuffled[n_train:n_train + n_tune],
                       test=shuffled[n_train + n_tune:], seed=seed)


@attr.s(frozen=True)
class BleuReport:
    bleu = attr.ib()
    precisions = attr.ib(converter=tuple)
    brevity_penalty = attr.ib()
    candidate_length = attr.ib()
    reference_length = attr.ib()

    @property
    def ratio(self):
        return self.candidate_length / self.reference_length \
            if self.reference_length else 0.0

    def render(self):
        return ('BLEU = {bleu:.2f}, {precisions} (BP={bp:.3f}, '
                'ratio={ratio:.3f}, hyp_len={hyp}, ref_len={ref})').format(
            bleu=self.bleu,
            precisions='/'.join('{:.1f}'.format(100 * p)
                                for p in self.precisions),
            bp=self.brevity_penalty, ratio=self.ratio,
            hyp=self.candidate_length, ref=self.reference_length)


def _ngrams(tokens, n):
    return Counter(tuple(tokens[i:i + n])
                   for i in range(len(tokens) - n + 1))


def _as_tokens(value, lowercase):
    tokens = tokenize(value) if isinstance(value, str) else list(value)
    if lowercase:
        tokens = [token.lower() for token in tokens]
    return tokens


def bleu(candidates, references, max_n=4, lowercase=False):
    """Corpus-level BLEU with one reference per candidate, no smoothing.

    Args:
        candidates (list of list of str): Tokenised candidates (strings
            are tokenised with :func:`tokenize`)
        references (list of list of str): One reference per candidate
        max_n (int, optional): Highest n-gram order
        lowercase (bool, optional): Compare case-insensitively

    Returns:
        :class:`BleuReport`

    Raises:
        :exc:`~.InputMismatchError`: for unequal or empty inputs
    """
    candidates = list(candidates)
    references = list(references)
    if len(candidates) != len(references):
        raise InputMismatchError('{} candidates but {} references'.format(
            len(candidates), len(references)))
    if not candidates:
        raise InputMismatchError('BLEU needs at least one candidate')

    matches = [0] * max_n
    totals = [0] * max_n
    cand_len = ref_len = 0
    for candidate, reference in zip(candidates, references):
        candidate = _as_tokens(candidate, lowercase)
        reference = _as_tokens(reference, lowercase)
        cand_len += len(candidate)
        ref_len += len(reference)
        for n in range(1, max_n + 1):
            cand_counts = _ngrams(candidate, n)
            ref_counts = _ngrams(reference, n)
            matches[n - 1] += sum(min(count, ref_counts[gram])
                                  for gram, count in cand_counts.items())
            totals[n - 1] += max(0, len(candidate) - n + 1)
    if not cand_len:
        raise InputMismatchError('Candidates contain no tokens')

    precisions = [m / t if t else 0.0 for m, t in zip(matches, totals)]
    brevity_penalty = 1.0 if cand_len >= ref_len else \
        math.exp(1 - ref_len / cand_len)
    if all(p > 0 for p in precisions):
        score = 100 * brevity_penalty * math.exp(
            math.fsum(math.log(p) for p in precisions) / max_n)
    else:
        score = 0.0
    return BleuReport(bleu=score, precisions=precisions,
                      brevity_penalty=brevity_penalty,
                      candidate_length=cand_len, reference_length=ref_len)


def _check_line(text, position):
    if not text or not text.strip() or '\n' in text or '\r' in text:
        raise ValidationError('Pair #{} cannot be written as one non-empty '
                              'line: {!r}'.format(position, text))
    return text


def export_parallel_text(pairs, src_path, tgt_path):
    """Write the two sides of :attr:`pairs` to line-aligned files.

    Returns:
        (str, str): the two paths

    Raises:
        :exc:`~.ValidationError`: for an empty pair list or a side that
            is blank or spans lines
    """
    pairs = list(pairs)
    if not pairs:
        raise ValidationError('Nothing to export')
    src_lines = [_check_line(pair.src_text, k) for k, pair in enumerate(pairs)]
    tgt_lines = [_check_line(pair.tgt_text, k) for k, pair in enumerate(pairs)]
    for path, lines in ((src_path, src_lines), (tgt_path, tgt_lines)):
        with open(str(path), 'w', encoding='utf-8', newline='\n') as fp:
            fp.writelines(line + '\n' for line in lines)
    logger.info('Exported %d lines to %s and %s', len(pairs), src_path,
                tgt_path)
    return str(src_path), str(tgt_path)


def read_lines(path):
    with open(str(path), encoding='utf-8') as fp:
        return [line.rstrip('\n') for line in fp]


def read_parallel_text(src_path, tgt_path):
    """Inverse of :func:`export_parallel_text`: ``[(src, tgt), ...]``.

    Raises:
        :exc:`~.InputMismatchError`: if the files differ in length
    """
    src_lines = read_lines(src_path)
    tgt_lines = read_lines(tgt_path)
    if len(src_lines) != len(tgt_lines):
        raise InputMismatchError('{} has {} lines but {} has {}'.format(
            src_path, len(src_lines), tgt_path, len(tgt_lines)))
    return list(zip(src_lines, tgt_lines))


@unique
class Verdict(Enum):
    correct = 'correct'
    no_alignment = 'no_alignment'


def _verdict(value):
    if value is None or isinstance(value, Verdict):
        return value
    value = str(value).strip()
    return Verdict(value) if value else None


@attr.s(frozen=True)
class ReviewItem:
    """One sampled unit awaiting (or carrying) a manual verdict."""
    id = attr.ib()
    set_name = attr.ib()
    texts = attr.ib(converter=tuple)
    verdict = attr.ib(default=None, converter=_verdict)


def _unique_ids(instance, attribute, value):
    ids = Counter(item.id for item in value)
    duplicates = sorted(item_id for item_id, count in ids.items()
                        if count > 1)
    if duplicates:
        raise ValidationError('Duplicate review ids: {}'.format(
            ', '.join(duplicates)))


@attr.s(frozen=True)
class ReviewSheet:
    """Sampled items of every reviewed set.

    Attributes:
        items (tuple of :class:`ReviewItem`): In set order, then sample
            order
        shortfalls (mapping of str to int): Sets smaller than the
            requested sample size, with the number of missing items
    """
    items = attr.ib(converter=tuple, validator=_unique_ids)
    shortfalls = attr.ib(default=attr.Factory(dict),
                         converter=lambda value: MappingProxyType(dict(value)))

    @property
    def set_names(self):
        return tuple(dict.fromkeys(item.set_name for item in self.items))

    def with_verdicts(self, verdicts):
        """Return a copy with ``{id: verdict}`` applied.

        Raises:
            :exc:`~.ValidationError`: for ids not on the sheet
        """
        known = {item.id for item in self.items}
        unknown = sorted(set(verdicts) - known)
        if unknown:
            raise ValidationError('Verdicts for ids not on the sheet: '
                                  '{}'.format(', '.join(unknown)))
        return attr.evolve(self, items=[
            attr.evolve(item, verdict=verdicts[item.id])
            if item.id in verdicts else item for item in self.items])


def _review_texts(item):
    if isinstance(item, TrilingualUnit):
        return tuple(item.texts[lang] for lang in sorted(item.texts))
    return (item.src_text, item.tgt_text)


def sample_for_review(corpus_sets, n_per_set=100, seed=42):
    """Sample up to :attr:`n_per_set` items from every set without
    replacement.

    Args:
        corpus_sets (mapping of str to list): Set name to its pairs or
            trilingual units, in review order
        n_per_set (int, optional): Sample size per set
        seed (int, optional): Seed of the sampler

    Returns:
        :class:`ReviewSheet`
    """
    rng = random.Random(seed)
    items, shortfalls = [], {}
    for set_name, units in corpus_sets.items():
        units = list(units)
        if len(units) < n_per_set:
            shortfalls[set_name] = n_per_set - len(units)
            logger.warning("Set '%s' has %d items, fewer than %d", set_name,
                           len(units), n_per_set)
        for index in rng.sample(range(len(units)), min(n_per_set, len(units))):
            items.append(ReviewItem(id='{}:{}'.format(set_name, index),
                                    set_name=set_name,
                                    texts=_review_texts(units[index])))
    return ReviewSheet(items=items, shortfalls=shortfalls)


def review_accuracy(sheet):
    """Share of ``correct`` verdicts per set, as exact fractions.

    Raises:
        :exc:`~.IncompleteReviewError`: for an empty sheet or items
            without a verdict
    """
    missing = [item.id for item in sheet.items if item.verdict is None]
    if missing or not sheet.items:
        raise IncompleteReviewError(missing)
    accuracy = {}
    for set_name in sheet.set_names:
        verdicts = [item.verdict for item in sheet.items
                    if item.set_name == set_name]
        accuracy[set_name] = Fraction(verdicts.count(Verdict.correct),
                                      len(verdicts))
    return accuracy


def render_accuracy(value):
    return '{:.4f}'.format(float(value))


def write_review_sheet(sheet, path):
    with open(str(path), 'w', encoding='utf-8', newline='') as fp:
        writer = csv.writer(fp, dialect='excel-tab', lineterminator='\n')
        writer.writerow(REVIEW_COLUMNS)
        for item in sheet.items:
            texts = (tuple(item.texts) + ('', '', ''))[:3]
            writer.writerow([item.id, item.set_name, *texts,
                             item.verdict.value if item.verdict else ''])


def read_review_sheet(path):
    """Read a sheet written by :func:`write_review_sheet`, verdicts
    included.

    Raises:
        :exc:`~.ParseError`: for a wrong header, short rows or unknown
            verdicts
    """
    with open(str(path), encoding='utf-8', newline='') as fp:
        rows = list(csv.reader(fp, dialect='excel-tab'))
    if not rows or tuple(rows[0]) != REVIEW_COLUMNS:
        raise ParseError('Review sheet {} lacks the header {}'.format(
            path, '\t'.join(REVIEW_COLUMNS)))
    items = []
    for row_number, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(REVIEW_COLUMNS):
            raise ParseError('Review sheet row {} has {} columns'.format(
                row_number, len(row)))
        item_id, set_name, src, tgt, third, verdict = row
        try:
            verdict = _verdict(verdict)
        except ValueError:
            raise ParseError("Unknown verdict '{}' on row {}; use correct "
                             "or no_alignment".format(verdict, row_number))
        texts = (src, tgt, third) if third else (src, tgt)
        items.append(ReviewItem(id=item_id, set_name=set_name, texts=texts,
                                verdict=verdict))
    return ReviewSheet(items=items)
