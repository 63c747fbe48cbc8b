"""Two-pass sentence alignment.

The first pass is a Gale–Church length-based dynamic program. Its 1-1
beads seed a bilingual dictionary (:mod:`sciparallel.dictionary`), and
the second pass realigns the same sentences with a score that mixes
dictionary coverage with the length model. Long inputs are cut into
chunks at confident 1-1 anchors of a coarse length-only pass.

The dynamic program runs backwards over a band around the proportional
diagonal and is then walked forwards from the origin. Among sequences
of equal cost (within :data:`EPS`) it keeps the one with more 1-1
beads, then the one whose bead kinds come earliest in
:class:`~.BeadKind` order.
"""

import logging
import math
from types import MappingProxyType

import attr
import numpy as np
from scipy.special import log_ndtr

from sciparallel.dictionary import CooccurrenceCounter, tokens
from sciparallel.exceptions import (
    IncompatibleStructureError,
    ValidationError,
)
from sciparallel.models import (
    AlignedPair,
    Bead,
    BeadKind,
    CompatibilityMode,
    DocumentAlignment,
)
from sciparallel.segment import segment_document


logger = logging.getLogger(__name__)

EPS = 1e-9
LOG2 = math.log(2.0)
ESTIMATE_RATIO = 'estimate-from-input'

# Priors may sum slightly above one; the classical table does.
PRIOR_SUM_SLACK = 0.01

DEFAULT_PRIORS = MappingProxyType({
    BeadKind.one_one: 0.89,
    BeadKind.one_zero: 0.0099,
    BeadKind.zero_one: 0.0099,
    BeadKind.two_one: 0.0445,
    BeadKind.one_two: 0.0445,
    BeadKind.two_two: 0.011,
})

_KINDS = tuple(BeadKind)
_SHAPES = tuple((kind.src_count, kind.tgt_count) for kind in _KINDS)
_INF = float('inf')


def _priors(value):
    return MappingProxyType({BeadKind.parse(kind): float(prior)
                             for kind, prior in dict(value).items()})


def _char_ratio(value):
    if value is None or value == ESTIMATE_RATIO:
        return None
    return float(value)


def _optional_float(value):
    return None if value is None else float(value)


def _positive(instance, attribute, value):
    if value <= 0:
        raise ValidationError("'{}' must be positive. Given '{}'".format(
            attribute.name, value))


def _non_negative(instance, attribute, value):
    if value < 0:
        raise ValidationError("'{}' must not be negative. Given '{}'".format(
            attribute.name, value))


@attr.s(frozen=True)
class AlignerConfig:
    """Parameters of both alignment passes.

    Attributes:
        bead_priors (mapping of :class:`~.BeadKind` to float): Prior
            probability of every bead kind
        length_variance (float): Variance ``D`` of the length model
        char_ratio (float): Expected target/source character ratio
            ``c``; ``None`` estimates it from the input
        dict_weight (float): Weight of dictionary coverage in the
            second-pass score
        length_weight (float): Weight of the length component
        dict_min_count (int): Minimum co-occurrence count of an
            induced dictionary entry
        dict_min_dice (float): Minimum Dice score of an induced entry
        chunk_limit (int): Largest side aligned without chunking
        min_pair_score (float): Realigned 1-1 beads scoring below this
            are not released as pairs; ``None`` keeps them
        band_width (int): Minimum half width of the search band
        anchor_min_score (float): Lowest length probability a 1-1 bead
            may have to serve as a chunk anchor
        score_floor (float): Floor applied before taking the log of a
            second-pass score
    """
    bead_priors = attr.ib(default=DEFAULT_PRIORS, converter=_priors)
    length_variance = attr.ib(default=6.8, converter=float,
                              validator=_positive)
    char_ratio = attr.ib(default=None, converter=_char_ratio)
    dict_weight = attr.ib(default=0.7, converter=float,
                          validator=_non_negative)
    length_weight = attr.ib(default=0.3, converter=float,
                            validator=_non_negative)
    dict_min_count = attr.ib(default=2, converter=int,
                             validator=_positive)
    dict_min_dice = attr.ib(default=0.2, converter=float)
    chunk_limit = attr.ib(default=5000, converter=int)
    min_pair_score = attr.ib(default=0.3, converter=_optional_float)
    band_width = attr.ib(default=20, converter=int, validator=_positive)
    anchor_min_score = attr.ib(default=0.1, converter=float)
    score_floor = attr.ib(default=1e-6, converter=float, validator=_positive)

    @bead_priors.validator
    def _check_priors(self, attribute, value):
        missing = [kind.value for kind in _KINDS if kind not in value]
        if missing:
            raise ValidationError('Missing bead priors for: {}'.format(
                ', '.join(missing)))
        if any(prior <= 0 for prior in value.values()):
            raise ValidationError('Bead priors must be positive')
        if sum(value.values()) > 1.0 + PRIOR_SUM_SLACK:
            raise ValidationError('Bead priors sum to {:.4f}, more than '
                                  'one'.format(sum(value.values())))

    @char_ratio.validator
    def _check_ratio(self, attribute, value):
        if value is not None and value <= 0:
            raise ValidationError('char_ratio must be positive. Given '
                                  "'{}'".format(value))

    @dict_min_dice.validator
    def _check_dice(self, attribute, value):
        if not 0.0 < value <= 1.0:
            raise ValidationError('dict_min_dice must lie in (0, 1]. Given '
                                  "'{}'".format(value))

    @chunk_limit.validator
    def _check_chunk_limit(self, attribute, value):
        if value < 100:
            raise ValidationError('chunk_limit must be at least 100. '
                                  "Given '{}'".format(value))

    def __attrs_post_init__(self):
        if abs(self.dict_weight + self.length_weight - 1.0) > EPS:
            raise ValidationError(
                'dict_weight and length_weight must sum to 1. Given '
                '{} + {}'.format(self.dict_weight, self.length_weight))

    def prior_cost(self, kind):
        return -math.log(self.bead_priors[BeadKind.parse(kind)])


def _text(sentence):
    return getattr(sentence, 'text', sentence)


def estimate_char_ratio(src, tgt):
    """Total target characters over total source characters; 1.0 when
    either side is empty.
    """
    src_chars = sum(len(_text(s)) for s in src)
    tgt_chars = sum(len(_text(t)) for t in tgt)
    if not src_chars or not tgt_chars:
        return 1.0
    return tgt_chars / src_chars


def _with_ratio(cfg, src, tgt):
    if cfg.char_ratio is not None:
        return cfg
    return attr.evolve(cfg, char_ratio=estimate_char_ratio(src, tgt))


def length_deltas(src_len, tgt_len, char_ratio, variance):
    """Normalised length deviation δ, elementwise over numpy arrays."""
    src_len, tgt_len = np.broadcast_arrays(np.asarray(src_len, dtype=float),
                                           np.asarray(tgt_len, dtype=float))
    with np.errstate(divide='ignore', invalid='ignore'):
        from_src = (tgt_len - src_len * char_ratio) / np.sqrt(
            src_len * variance)
        from_tgt = tgt_len / np.sqrt(tgt_len / char_ratio * variance)
    return np.where(src_len > 0, from_src,
                    np.where(tgt_len > 0, from_tgt, 0.0))


def length_penalties(deltas):
    """``−log(2·(1 − Φ(|δ|)))``, computed in log space."""
    return np.maximum(0.0, -(LOG2 + log_ndtr(-np.abs(deltas))))


def _scalar_delta(src_len, tgt_len, char_ratio, variance):
    if src_len > 0:
        return (tgt_len - src_len * char_ratio) / math.sqrt(src_len * variance)
    if tgt_len > 0:
        return tgt_len / math.sqrt(tgt_len / char_ratio * variance)
    return 0.0


def length_cost(kind, src_len, tgt_len, cfg=None, char_ratio=None):
    """Gale–Church cost of a bead of :attr:`kind` over the given
    character lengths.

    ``char_ratio`` overrides ``cfg.char_ratio``; with neither set the
    ratio is 1.

    Raises:
        :exc:`~.InvalidBeadError`: for an unknown bead kind
        :exc:`~.ValidationError`: for negative lengths
    """
    cfg = cfg or AlignerConfig()
    kind = BeadKind.parse(kind)
    if src_len < 0 or tgt_len < 0:
        raise ValidationError('Sentence lengths cannot be negative')
    if char_ratio is None:
        char_ratio = cfg.char_ratio if cfg.char_ratio is not None else 1.0
    penalty = length_penalties(length_deltas(src_len, tgt_len, char_ratio,
                                             cfg.length_variance))
    return float(cfg.prior_cost(kind) + penalty)


class _LengthModel:
    lexical = False

    def __init__(self, src, tgt, cfg):
        self.n, self.m = len(src), len(tgt)
        self.src_cum = np.concatenate(
            ([0.0], np.cumsum([len(_text(s)) for s in src], dtype=float)))
        self.tgt_cum = np.concatenate(
            ([0.0], np.cumsum([len(_text(t)) for t in tgt], dtype=float)))
        self.ratio = cfg.char_ratio
        self.variance = cfg.length_variance
        self.prior_costs = [cfg.prior_cost(kind) for kind in _KINDS]

    def _penalties(self, i, a, starts, b):
        src_len = self.src_cum[i + a] - self.src_cum[i]
        tgt_len = self.tgt_cum[starts + b] - self.tgt_cum[starts]
        return length_penalties(length_deltas(src_len, tgt_len, self.ratio,
                                              self.variance))

    def row_costs(self, i, lo, hi):
        rows = []
        for (a, b), prior in zip(_SHAPES, self.prior_costs):
            if i + a > self.n:
                rows.append(None)
                continue
            starts = np.arange(lo, hi + 1)
            valid = starts + b <= self.m
            costs = np.full(starts.shape, _INF)
            costs[valid] = prior + self._penalties(i, a, starts[valid], b)
            rows.append(costs.tolist())
        return rows

    def score(self, k, i, j):
        a, b = _SHAPES[k]
        penalty = self._penalties(i, a, np.array([j]), b)
        return float(np.exp(-penalty[0]))


@attr.s(frozen=True)
class _Side:
    chars = attr.ib()
    n_tokens = attr.ib()
    types = attr.ib()
    partners = attr.ib()

    @classmethod
    def of(cls, texts, partners_of):
        found = [token for text in texts for token in tokens(text)]
        return cls(chars=sum(len(text) for text in texts),
                   n_tokens=len(found), types=frozenset(found),
                   partners=tuple(p for p in map(partners_of, found) if p))

    @classmethod
    def merge(cls, sides):
        if len(sides) == 1:
            return sides[0]
        return cls(chars=sum(side.chars for side in sides),
                   n_tokens=sum(side.n_tokens for side in sides),
                   types=frozenset().union(*(side.types for side in sides)),
                   partners=sum((side.partners for side in sides), ()))


_EMPTY_SIDE = _Side(chars=0, n_tokens=0, types=frozenset(), partners=())


def _side_score(src, tgt, cfg, char_ratio):
    n_tokens = src.n_tokens + tgt.n_tokens
    if not n_tokens:
        return 0.0
    covered = sum(1 for partners in src.partners
                  if not partners.isdisjoint(tgt.types))
    covered += sum(1 for partners in tgt.partners
                   if not partners.isdisjoint(src.types))
    delta = _scalar_delta(src.chars, tgt.chars, char_ratio,
                          cfg.length_variance)
    score = (cfg.dict_weight * covered / n_tokens
             + cfg.length_weight * math.exp(-delta * delta / 2.0))
    return min(1.0, max(0.0, score))


def _as_texts(value):
    if isinstance(value, str) or hasattr(value, 'text'):
        return [_text(value)]
    return [_text(item) for item in value]


def combined_score(src_sent, tgt_sent, dictionary, cfg=None, char_ratio=None):
    """Second-pass affinity of two sentences (or sentence groups).

    ``w_d`` times the share of tokens on either side that have a
    dictionary partner on the other side, plus ``w_l`` times
    ``exp(−δ²/2)``. Both token lists empty gives 0.

    Args:
        src_sent: A :class:`~.Sentence`, a string, or a sequence of
            either (merged side)
        tgt_sent: Same, for the target side
        dictionary (:class:`~.Dictionary`): Token translation pairs
        cfg (:class:`AlignerConfig`, optional): Weights and variance
        char_ratio (float, optional): Overrides ``cfg.char_ratio``;
            defaults to 1

    Returns:
        float: in [0, 1]
    """
    cfg = cfg or AlignerConfig()
    if char_ratio is None:
        char_ratio = cfg.char_ratio if cfg.char_ratio is not None else 1.0
    src = _Side.of(_as_texts(src_sent), dictionary.partners_of_src)
    tgt = _Side.of(_as_texts(tgt_sent), dictionary.partners_of_tgt)
    return _side_score(src, tgt, cfg, char_ratio)


class _LexicalModel:
    lexical = True

    def __init__(self, src, tgt, dictionary, cfg):
        self.n, self.m = len(src), len(tgt)
        self.src = [_Side.of([_text(s)], dictionary.partners_of_src)
                    for s in src]
        self.tgt = [_Side.of([_text(t)], dictionary.partners_of_tgt)
                    for t in tgt]
        self.cfg = cfg
        self.prior_costs = [cfg.prior_cost(kind) for kind in _KINDS]

    def _span(self, sides, start, count):
        if not count:
            return _EMPTY_SIDE
        return _Side.merge(sides[start:start + count])

    def score(self, k, i, j):
        a, b = _SHAPES[k]
        return _side_score(self._span(self.src, i, a),
                           self._span(self.tgt, j, b),
                           self.cfg, self.cfg.char_ratio)

    def row_costs(self, i, lo, hi):
        floor = self.cfg.score_floor
        rows = []
        for k, ((a, b), prior) in enumerate(zip(_SHAPES, self.prior_costs)):
            if i + a > self.n:
                rows.append(None)
                continue
            row = []
            for j in range(lo, hi + 1):
                if j + b > self.m:
                    row.append(_INF)
                else:
                    row.append(prior - math.log(max(self.score(k, i, j),
                                                    floor)))
            rows.append(row)
        return rows


def band_limits(n, m, band_width):
    """Per source position, the lowest and highest target position the
    search visits.
    """
    if n == 0:
        return [0], [m]
    half = max(band_width, math.ceil(0.75 * abs(n - m)),
               math.ceil(m / n) + 1)
    lows, highs = [], []
    for i in range(n + 1):
        centre = i * m / n
        lows.append(max(0, math.floor(centre) - half))
        highs.append(min(m, math.ceil(centre) + half))
    return lows, highs


def _search(model, band_width):
    n, m = model.n, model.m
    lows, highs = band_limits(n, m, band_width)
    costs = [None] * (n + 1)
    ones = [None] * (n + 1)
    moves = [None] * (n + 1)

    for i in range(n, -1, -1):
        lo, hi = lows[i], highs[i]
        width = hi - lo + 1
        row_cost = [_INF] * width
        row_ones = [0] * width
        row_move = [-1] * width
        bead_costs = model.row_costs(i, lo, hi)
        for j in range(hi, lo - 1, -1):
            off = j - lo
            if i == n and j == m:
                row_cost[off] = 0.0
                continue
            best, best_ones, best_move = _INF, -1, -1
            for k in range(len(_SHAPES)):
                kind_costs = bead_costs[k]
                if kind_costs is None or kind_costs[off] == _INF:
                    continue
                a, b = _SHAPES[k]
                nj = j + b
                if a == 0:
                    if nj > hi:
                        continue
                    tail = row_cost[nj - lo]
                    tail_ones = row_ones[nj - lo]
                else:
                    ni = i + a
                    nlo = lows[ni]
                    if nj < nlo or nj > highs[ni]:
                        continue
                    tail = costs[ni][nj - nlo]
                    tail_ones = ones[ni][nj - nlo]
                if tail == _INF:
                    continue
                total = kind_costs[off] + tail
                total_ones = tail_ones + 1 if k == 0 else tail_ones
                if total < best - EPS or (total <= best + EPS
                                          and total_ones > best_ones):
                    best, best_ones, best_move = total, total_ones, k
            row_cost[off] = best
            row_ones[off] = best_ones
            row_move[off] = best_move
        costs[i], ones[i], moves[i] = row_cost, row_ones, row_move

    if costs[0][0 - lows[0]] == _INF:
        raise RuntimeError('No bead path through the search band')

    beads = []
    i = j = 0
    while (i, j) != (n, m):
        k = moves[i][j - lows[i]]
        a, b = _SHAPES[k]
        beads.append(Bead(kind=_KINDS[k], src=range(i, i + a),
                          tgt=range(j, j + b), score=model.score(k, i, j),
                          lexical=model.lexical))
        i += a
        j += b
    return beads


def align_lengths(src, tgt, cfg=None):
    """First pass: the minimum-cost monotone bead sequence under the
    length model alone.

    Args:
        src (list of :class:`~.Sentence` or str): Source sentences
        tgt (list of :class:`~.Sentence` or str): Target sentences
        cfg (:class:`AlignerConfig`, optional): Model parameters

    Returns:
        list of :class:`~.Bead`: covering both lists exactly once; each
        bead's score is its length probability ``2·(1 − Φ(|δ|))``
    """
    cfg = _with_ratio(cfg or AlignerConfig(), src, tgt)
    return _search(_LengthModel(src, tgt, cfg), cfg.band_width)


def realign(src, tgt, dictionary, cfg=None):
    """Second pass: the same search scored by :func:`combined_score`.

    An empty dictionary carries no lexical evidence, so the result is
    :func:`align_lengths`.
    """
    cfg = cfg or AlignerConfig()
    if not len(dictionary):
        return align_lengths(src, tgt, cfg)
    cfg = _with_ratio(cfg, src, tgt)
    return _search(_LexicalModel(src, tgt, dictionary, cfg), cfg.band_width)


def _second_pass(src, tgt, dictionary, cfg):
    if max(len(src), len(tgt)) > cfg.chunk_limit:
        return chunk_align(src, tgt, cfg, dictionary=dictionary)
    return realign(src, tgt, dictionary, cfg)


def align_groups(groups, cfg=None, dictionary=None):
    """Align paragraph groups with a single shared dictionary.

    The dictionary is induced from the first pass over every group
    unless one is supplied, in which case the first pass is skipped.

    Args:
        groups (list of (list, list)): ``(src_sents, tgt_sents)`` per
            group, in document order
        cfg (:class:`AlignerConfig`, optional): Model parameters; an
            unset ``char_ratio`` is estimated over all groups
        dictionary (:class:`~.Dictionary`, optional): Pre-built
            dictionary

    Returns:
        (list of list of :class:`~.Bead`, :class:`~.Dictionary`): beads
        per group, with positions local to the group, and the
        dictionary used
    """
    cfg = cfg or AlignerConfig()
    cfg = _with_ratio(cfg, [s for src, _ in groups for s in src],
                      [t for _, tgt in groups for t in tgt])
    if dictionary is None:
        counter = CooccurrenceCounter()
        for src, tgt in groups:
            counter.add_beads(align_lengths(src, tgt, cfg), src, tgt)
        dictionary = counter.to_dictionary(cfg.dict_min_count,
                                           cfg.dict_min_dice)
        logger.debug('First pass over %d groups induced %d dictionary '
                     'entries', len(groups), len(dictionary))
    return ([_second_pass(src, tgt, dictionary, cfg) for src, tgt in groups],
            dictionary)


def two_pass_align(src, tgt, cfg=None):
    """Length pass, dictionary induction, realignment.

    Returns:
        (list of :class:`~.Bead`, :class:`~.Dictionary`)
    """
    aligned, dictionary = align_groups([(src, tgt)], cfg)
    return aligned[0], dictionary


def _chunk_cuts(coarse, cfg):
    limit = cfg.chunk_limit
    window = max(1, limit // 10)
    ends = []
    src_end = tgt_end = 0
    for bead in coarse:
        src_end += len(bead.src)
        tgt_end += len(bead.tgt)
        ends.append((src_end, tgt_end))

    cuts = []
    src_start = tgt_start = 0
    first = 0
    while max(src_end - src_start, tgt_end - tgt_start) > limit:
        anchor = last_fit = None
        for position in range(first, len(coarse)):
            size = max(ends[position][0] - src_start,
                       ends[position][1] - tgt_start)
            if size > limit:
                break
            last_fit = position
            bead = coarse[position]
            if (size >= limit - window
                    and bead.kind is BeadKind.one_one
                    and bead.score >= cfg.anchor_min_score
                    and (anchor is None
                         or bead.score >= coarse[anchor].score)):
                anchor = position
        if anchor is None:
            logger.warning('No 1-1 anchor near sentence %d/%d; hard split',
                           src_start + limit, tgt_start + limit)
            anchor = last_fit if last_fit is not None else first
        src_start, tgt_start = ends[anchor]
        cuts.append((src_start, tgt_start))
        first = anchor + 1
    return cuts


def chunk_align(src, tgt, cfg=None, dictionary=None):
    """Align inputs longer than ``cfg.chunk_limit`` chunk by chunk.

    A coarse length-only pass supplies anchors: in the last tenth of
    every chunk the most probable 1-1 bead closes the chunk. Each chunk
    is then aligned on its own (two passes, or realigned with
    :attr:`dictionary` when one is given) and the results concatenated.
    Inputs within the limit are aligned in one piece.

    Returns:
        list of :class:`~.Bead`: a legal sequence over the full inputs
    """
    cfg = cfg or AlignerConfig()
    if max(len(src), len(tgt)) <= cfg.chunk_limit:
        if dictionary is None:
            return two_pass_align(src, tgt, cfg)[0]
        return realign(src, tgt, dictionary, cfg)

    cfg = _with_ratio(cfg, src, tgt)
    cuts = _chunk_cuts(align_lengths(src, tgt, cfg), cfg)
    logger.info('Aligning %d x %d sentences in %d chunks', len(src),
                len(tgt), len(cuts) + 1)
    beads = []
    src_start = tgt_start = 0
    for src_end, tgt_end in cuts + [(len(src), len(tgt))]:
        chunk_src = src[src_start:src_end]
        chunk_tgt = tgt[tgt_start:tgt_end]
        if dictionary is None:
            chunk_beads = two_pass_align(chunk_src, chunk_tgt, cfg)[0]
        else:
            chunk_beads = realign(chunk_src, chunk_tgt, dictionary, cfg)
        beads.extend(bead.shifted(src_start, tgt_start)
                     for bead in chunk_beads)
        src_start, tgt_start = src_end, tgt_end
    return beads


def passes_score_gate(bead, min_pair_score):
    """Whether :attr:`bead` survives the ``min_pair_score`` gate, which
    only applies to realigned 1-1 beads.
    """
    return (min_pair_score is None
            or not bead.lexical
            or bead.kind is not BeadKind.one_one
            or bead.score >= min_pair_score)


def bead_to_pair(alignment, bead):
    src = [alignment.src_sents[i] for i in bead.src]
    tgt = [alignment.tgt_sents[j] for j in bead.tgt]
    return AlignedPair(
        src_lang=alignment.src_lang, tgt_lang=alignment.tgt_lang,
        src_text=' '.join(s.text for s in src),
        tgt_text=' '.join(t.text for t in tgt),
        article_id=alignment.article_id, score=bead.score,
        provenance=bead.kind,
        src_refs=[s.ref for s in src], tgt_refs=[t.ref for t in tgt])


def beads_to_pairs(alignment, min_pair_score=None):
    """Release the beads of a :class:`~.DocumentAlignment` as
    :class:`~.AlignedPair` values, dropping 1-0/0-1 beads and beads
    failing the score gate.
    """
    return [bead_to_pair(alignment, bead) for bead in alignment.beads
            if bead.src and bead.tgt
            and passes_score_gate(bead, min_pair_score)]


def paragraph_groups(src_groups, tgt_groups, verdict, document_level=False):
    """Pair up per-paragraph sentence lists.

    Compatible documents are aligned paragraph pair by paragraph pair;
    otherwise, when :attr:`document_level` allows it, all sentences
    form a single group.

    Returns:
        (list of (list, list), :class:`~.CompatibilityMode`)

    Raises:
        :exc:`~.IncompatibleStructureError`: for incompatible documents
            without the document-level override
    """
    if verdict.is_compatible and len(src_groups) == len(tgt_groups):
        return list(zip(src_groups, tgt_groups)), verdict.mode
    if not document_level:
        raise IncompatibleStructureError(
            'Documents have different structures ({} vs {})'.format(
                verdict.src_shape, verdict.tgt_shape))
    return ([([s for group in src_groups for s in group],
              [t for group in tgt_groups for t in group])],
            CompatibilityMode.incompatible)


def _abbreviations_for(abbreviations, lang):
    if abbreviations is None:
        return None
    return abbreviations.get(lang)


def align_article(doc_a, doc_b, verdict, cfg=None, *, article_id,
                  document_level=False, dictionary=None,
                  abbreviations=None):
    """Segment and align two language versions of an article.

    Args:
        doc_a (:class:`~.StructuredDocument`): Source-language version
        doc_b (:class:`~.StructuredDocument`): Target-language version
        verdict (:class:`~.CompatibilityVerdict`): Their compatibility
        cfg (:class:`AlignerConfig`, optional): Model parameters
        article_id (str, keyword): Id of the article
        document_level (bool, keyword, optional): Align incompatible
            documents as a whole instead of refusing them
        dictionary (:class:`~.Dictionary`, keyword, optional): Skips
            the first pass
        abbreviations (mapping of :class:`~.LanguageTag` to list,
            keyword, optional): Segmentation overrides

    Returns:
        :class:`~.DocumentAlignment`
    """
    src_groups = segment_document(doc_a, article_id,
                                  _abbreviations_for(abbreviations,
                                                     doc_a.lang))
    tgt_groups = segment_document(doc_b, article_id,
                                  _abbreviations_for(abbreviations,
                                                     doc_b.lang))
    groups, mode = paragraph_groups(src_groups, tgt_groups, verdict,
                                    document_level)
    aligned, _ = align_groups(groups, cfg, dictionary)

    src_sents, tgt_sents, beads = [], [], []
    for (src, tgt), group_beads in zip(groups, aligned):
        beads.extend(bead.shifted(len(src_sents), len(tgt_sents))
                     for bead in group_beads)
        src_sents.extend(src)
        tgt_sents.extend(tgt)
    logger.debug('Aligned %s %s-%s: %d beads over %d/%d sentences',
                 article_id, doc_a.lang.value, doc_b.lang.value, len(beads),
                 len(src_sents), len(tgt_sents))
    return DocumentAlignment(article_id=article_id, src_lang=doc_a.lang,
                             tgt_lang=doc_b.lang, src_sents=src_sents,
                             tgt_sents=tgt_sents, beads=beads, mode=mode)


def align_document(doc_a, doc_b, verdict, cfg=None, **kwargs):
    """Align two language versions of an article into
    :class:`~.AlignedPair` values; see :func:`align_article` for the
    arguments.
    """
    cfg = cfg or AlignerConfig()
    alignment = align_article(doc_a, doc_b, verdict, cfg, **kwargs)
    return beads_to_pairs(alignment, cfg.min_pair_score)
