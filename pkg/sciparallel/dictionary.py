"""Bilingual token dictionaries induced from a first alignment pass.

Tokens are lowercased runs of at least two letters or digits. For every
1-1 bead, each (source token, target token) type pair is counted once;
pairs are kept when they co-occur often enough and their Dice
coefficient ``2·c(s,t) / (c(s) + c(t))`` is high enough.
"""

import logging
from collections import Counter
from types import MappingProxyType

import attr
import regex

from sciparallel.exceptions import ParseError, ValidationError
from sciparallel.models import BeadKind


logger = logging.getLogger(__name__)

_TOKEN = regex.compile(r'[\p{L}\p{N}]{2,}')

_NO_PARTNERS = frozenset()


def tokens(text):
    """Lowercased alphanumeric runs of length two or more, in order."""
    return _TOKEN.findall(text.lower())


def _text(sentence):
    return getattr(sentence, 'text', sentence)


def _dice_in_range(instance, attribute, value):
    if not 0.0 < value <= 1.0:
        raise ValidationError("Dice score must lie in (0, 1]. Given "
                              "'{}'".format(value))


@attr.s(frozen=True)
class DictionaryEntry:
    count = attr.ib(converter=int)
    dice = attr.ib(converter=float, validator=_dice_in_range)


def _partners(pairs, side):
    grouped = {}
    for pair in pairs:
        key, other = (pair[0], pair[1]) if side == 0 else (pair[1], pair[0])
        grouped.setdefault(key, set()).add(other)
    return MappingProxyType({key: frozenset(values)
                             for key, values in grouped.items()})


@attr.s(frozen=True, repr=False)
class Dictionary:
    """Token translation pairs with their association scores.

    Attributes:
        entries (mapping of (str, str) to :class:`DictionaryEntry`):
            Co-occurrence count and Dice score per token pair
        src_counts (mapping of str to int): Number of 1-1 beads holding
            each source token
        tgt_counts (mapping of str to int): Same for target tokens
    """
    entries = attr.ib(default=attr.Factory(dict),
                      converter=lambda value: MappingProxyType(dict(value)))
    src_counts = attr.ib(default=attr.Factory(dict),
                         converter=lambda value: MappingProxyType(dict(value)))
    tgt_counts = attr.ib(default=attr.Factory(dict),
                         converter=lambda value: MappingProxyType(dict(value)))
    src_partners = attr.ib(init=False, eq=False)
    tgt_partners = attr.ib(init=False, eq=False)

    def __attrs_post_init__(self):
        object.__setattr__(self, 'src_partners', _partners(self.entries, 0))
        object.__setattr__(self, 'tgt_partners', _partners(self.entries, 1))

    def __repr__(self):
        return 'Dictionary({} entries)'.format(len(self.entries))

    def __len__(self):
        return len(self.entries)

    def __contains__(self, pair):
        return pair in self.entries

    def partners_of_src(self, token):
        return self.src_partners.get(token, _NO_PARTNERS)

    def partners_of_tgt(self, token):
        return self.tgt_partners.get(token, _NO_PARTNERS)


EMPTY_DICTIONARY = Dictionary()


@attr.s
class CooccurrenceCounter:
    """Accumulates token co-occurrences over 1-1 beads; one dictionary
    may be built from several paragraph groups.
    """
    pairs = attr.ib(default=attr.Factory(Counter))
    src_counts = attr.ib(default=attr.Factory(Counter))
    tgt_counts = attr.ib(default=attr.Factory(Counter))

    def add_pair(self, src_text, tgt_text):
        src_types = set(tokens(src_text))
        tgt_types = set(tokens(tgt_text))
        self.src_counts.update(src_types)
        self.tgt_counts.update(tgt_types)
        self.pairs.update((s, t) for s in src_types for t in tgt_types)

    def add_beads(self, beads, src_sents, tgt_sents):
        for bead in beads:
            if bead.kind is BeadKind.one_one:
                self.add_pair(_text(src_sents[bead.src[0]]),
                              _text(tgt_sents[bead.tgt[0]]))

    def to_dictionary(self, min_count, min_dice):
        entries = {}
        for (s, t), count in self.pairs.items():
            if count < min_count:
                continue
            dice = 2.0 * count / (self.src_counts[s] + self.tgt_counts[t])
            if dice >= min_dice:
                entries[(s, t)] = DictionaryEntry(count=count, dice=dice)
        kept_src = {s for s, _ in entries}
        kept_tgt = {t for _, t in entries}
        return Dictionary(
            entries=entries,
            src_counts={s: self.src_counts[s] for s in kept_src},
            tgt_counts={t: self.tgt_counts[t] for t in kept_tgt})


def build_dictionary(beads, src_sents, tgt_sents, cfg):
    """Induce a :class:`Dictionary` from the 1-1 beads of an alignment.

    Args:
        beads (list of :class:`~.Bead`): A legal bead sequence
        src_sents (list of :class:`~.Sentence` or str): Source side
        tgt_sents (list of :class:`~.Sentence` or str): Target side
        cfg (:class:`~.AlignerConfig`): Supplies ``dict_min_count`` and
            ``dict_min_dice``

    Returns:
        :class:`Dictionary`: empty when there are no 1-1 beads
    """
    counter = CooccurrenceCounter()
    counter.add_beads(beads, src_sents, tgt_sents)
    dictionary = counter.to_dictionary(cfg.dict_min_count, cfg.dict_min_dice)
    logger.debug('Induced dictionary with %d entries', len(dictionary))
    return dictionary


def load_dictionary(path):
    """Read a ``src_token<TAB>tgt_token`` file.

    Every listed pair counts as one co-occurrence; marginals are the
    number of pairs each token takes part in.

    Raises:
        :exc:`~.ParseError`: for lines without exactly two fields
    """
    pairs = []
    with open(str(path), encoding='utf-8') as fp:
        for line_number, line in enumerate(fp, start=1):
            line = line.rstrip('\n').rstrip('\r')
            if not line.strip() or line.startswith('#'):
                continue
            fields = line.split('\t')
            if len(fields) != 2 or not all(f.strip() for f in fields):
                raise ParseError('Bad dictionary line {} in {}'.format(
                    line_number, path))
            pairs.append((fields[0].strip().lower(),
                          fields[1].strip().lower()))
    pairs = sorted(set(pairs))
    src_counts = Counter(s for s, _ in pairs)
    tgt_counts = Counter(t for _, t in pairs)
    return Dictionary(
        entries={(s, t): DictionaryEntry(
            count=1, dice=2.0 / (src_counts[s] + tgt_counts[t]))
            for s, t in pairs},
        src_counts=src_counts, tgt_counts=tgt_counts)


def save_dictionary(dictionary, path):
    with open(str(path), 'w', encoding='utf-8', newline='\n') as fp:
        for s, t in sorted(dictionary.entries):
            fp.write('{}\t{}\n'.format(s, t))
