"""Character n-gram language identification over en, pt and es.

Profiles rank the K most frequent 1- to 4-grams of lowercased words
padded with one space on each side; a text is assigned the profile with
the smallest out-of-place distance between the two rankings.
"""

import logging
from collections import Counter
from functools import lru_cache
from pathlib import Path
from types import MappingProxyType

import attr
import regex

from sciparallel.exceptions import (
    EmptyInputError,
    InsufficientDataError,
    ProfileFormatError,
    ValidationError,
)
from sciparallel.models import LanguageTag


logger = logging.getLogger(__name__)

DEFAULT_K = 400
MAX_N = 4
MIN_TRAINING_CHARS = 10000
SEED_DIR = Path(__file__).parent / 'data' / 'seed'

_WORD = regex.compile(r'\p{L}+')


def _dense_ranks(instance, attribute, value):
    if sorted(value.values()) != list(range(1, len(value) + 1)):
        raise ValidationError('Profile ranks must be dense, 1..{}'.format(
            len(value)))
    if len(value) > instance.k:
        raise ValidationError('Profile holds {} n-grams but K is {}'.format(
            len(value), instance.k))


@attr.s(frozen=True, repr=False)
class LanguageProfile:
    """Ranked n-gram profile of one language.

    Attributes:
        lang (:class:`~.LanguageTag`): Language of the profile
        k (int): Truncation length; also the out-of-profile penalty
        ngram_ranks (mapping of str to int): n-gram to rank, 1 being
            the most frequent
    """
    lang = attr.ib(converter=LanguageTag.parse)
    k = attr.ib(converter=int)
    ngram_ranks = attr.ib(converter=lambda value: MappingProxyType(
        dict(value)), validator=_dense_ranks)

    def __repr__(self):
        return 'LanguageProfile({}, K={}, {} n-grams)'.format(
            self.lang.value, self.k, len(self.ngram_ranks))

    def top(self, count, n=None):
        """The :attr:`count` best ranked n-grams, optionally only those
        of length :attr:`n`."""
        ranked = sorted(self.ngram_ranks, key=self.ngram_ranks.get)
        if n is not None:
            ranked = [gram for gram in ranked if len(gram) == n]
        return ranked[:count]


def ngram_counts(text, max_n=MAX_N):
    """Count the 1..:attr:`max_n` character n-grams of the lowercased
    letter runs of :attr:`text`, each padded as ``' word '``. N-grams
    made only of padding are skipped.
    """
    counts = Counter()
    for word in _WORD.findall(text.lower()):
        padded = ' {} '.format(word)
        for n in range(1, max_n + 1):
            for i in range(len(padded) - n + 1):
                gram = padded[i:i + n]
                if gram.strip():
                    counts[gram] += 1
    return counts


def rank_ngrams(counts, k):
    """Rank :attr:`counts` by decreasing frequency, ties broken
    lexicographically, keeping the first :attr:`k`.

    Returns:
        dict: n-gram to rank (1-based)
    """
    ordered = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return {gram: rank for rank, (gram, _) in enumerate(ordered[:k], 1)}


def train_profile(corpus_text, lang, k=DEFAULT_K):
    """Train the profile of :attr:`lang` from :attr:`corpus_text`.

    Raises:
        :exc:`~.InsufficientDataError`: If the text is shorter than
            10,000 characters
    """
    if len(corpus_text) < MIN_TRAINING_CHARS:
        raise InsufficientDataError(
            'Training a profile needs at least {} characters, got '
            '{}'.format(MIN_TRAINING_CHARS, len(corpus_text)))
    return LanguageProfile(lang=lang, k=k,
                           ngram_ranks=rank_ngrams(ngram_counts(corpus_text),
                                                   k))


def distance(text_ranks, profile):
    """Out-of-place distance of a ranked text from :attr:`profile`."""
    total = 0
    profile_ranks = profile.ngram_ranks
    for gram, rank in text_ranks.items():
        profile_rank = profile_ranks.get(gram)
        if profile_rank is None:
            total += profile.k
        else:
            total += abs(rank - profile_rank)
    return total


def detect_all(text, profiles):
    """Return ``[(distance, LanguageTag), ...]`` for every profile,
    best first; ties are ordered en, pt, es.

    Raises:
        :exc:`~.EmptyInputError`: If :attr:`text` is empty
    """
    if not text or not text.strip():
        raise EmptyInputError('Cannot detect the language of an empty text')
    if not profiles:
        raise ValidationError('Language detection needs at least one '
                              'profile')
    counts = ngram_counts(text)
    ranks_by_k = {}
    scored = []
    for profile in profiles:
        if profile.k not in ranks_by_k:
            ranks_by_k[profile.k] = rank_ngrams(counts, profile.k)
        scored.append((distance(ranks_by_k[profile.k], profile),
                       profile.lang))
    scored.sort(key=lambda item: (item[0], item[1].rank))
    return scored


def detect(text, profiles):
    """Identify the language of :attr:`text`.

    Returns:
        tuple: ``(LanguageTag, margin)`` where margin is the relative
        gap ``(second - best) / best`` between the two smallest
        distances (``0.0`` for a single profile or a tie, infinity when
        the best distance is zero and the second is not)
    """
    scored = detect_all(text, profiles)
    best, lang = scored[0]
    if len(scored) == 1:
        return lang, 0.0
    second = scored[1][0]
    if best == 0:
        return lang, 0.0 if second == 0 else float('inf')
    return lang, (second - best) / best


def save_profile(profile, path):
    with open(str(path), 'w', encoding='utf-8', newline='\n') as fp:
        fp.write('lang={} K={}\n'.format(profile.lang.value, profile.k))
        for gram in profile.top(len(profile.ngram_ranks)):
            fp.write('{}\t{}\n'.format(gram, profile.ngram_ranks[gram]))


def load_profile(path):
    """Read a profile written by :func:`save_profile`.

    Raises:
        :exc:`~.ProfileFormatError`: If the file is malformed
    """
    with open(str(path), encoding='utf-8') as fp:
        header = fp.readline().rstrip('\n')
        try:
            fields = dict(part.split('=', 1) for part in header.split())
            lang, k = fields['lang'], int(fields['K'])
        except (KeyError, ValueError):
            raise ProfileFormatError(
                "Bad profile header in {}: '{}'".format(path,
                                                        header)) from None
        ranks = {}
        for line_number, line in enumerate(fp, start=2):
            line = line.rstrip('\n')
            if not line:
                continue
            gram, _, rank = line.rpartition('\t')
            try:
                ranks[gram] = int(rank)
            except ValueError:
                raise ProfileFormatError('Bad profile line {} in {}'.format(
                    line_number, path)) from None
    try:
        return LanguageProfile(lang=lang, k=k, ngram_ranks=ranks)
    except ValidationError as ex:
        raise ProfileFormatError('Invalid profile {}: {}'.format(
            path, ex)) from ex


def load_profiles(directory):
    """Load ``<lang>.profile`` files for every language found in
    :attr:`directory`."""
    profiles = []
    for lang in LanguageTag:
        path = Path(directory) / '{}.profile'.format(lang.value)
        if path.is_file():
            profiles.append(load_profile(path))
    if not profiles:
        raise ProfileFormatError('No profiles found in {}'.format(directory))
    return tuple(profiles)


def read_seed_text(lang):
    return (SEED_DIR / '{}.txt'.format(LanguageTag.parse(lang).value)) \
        .read_text(encoding='utf-8')


@lru_cache(maxsize=8)
def default_profiles(k=DEFAULT_K):
    """Profiles trained on the shipped seed corpora, in language
    order."""
    logger.debug('Training default language profiles (K=%d)', k)
    return tuple(train_profile(read_seed_text(lang), lang, k)
                 for lang in LanguageTag)


def retrain_profiles(texts_by_lang, k=DEFAULT_K):
    """Rebuild profiles from ingested text.

    Args:
        texts_by_lang (mapping of :class:`~.LanguageTag` to iterable of
            str): Paragraphs per language

    Returns:
        tuple of :class:`LanguageProfile`, in language order
    """
    joined = {LanguageTag.parse(lang): '\n'.join(texts)
              for lang, texts in texts_by_lang.items()}
    return tuple(train_profile(joined[lang], lang, k)
                 for lang in sorted(joined))
