"""Post-alignment cleanup.

Steps run in a fixed order: unaligned beads, the score gate on
realigned 1-1 beads, pairs with a side shorter than ``min_chars``
non-whitespace characters, and pairs whose two sides are confidently
written in the same language.
"""

import logging

import attr

from sciparallel.align import bead_to_pair, passes_score_gate
from sciparallel.exceptions import ValidationError
from sciparallel.langid import default_profiles, detect
from sciparallel.models import DocumentAlignment


logger = logging.getLogger(__name__)


def _optional_float(value):
    return None if value is None else float(value)


@attr.s(frozen=True)
class FilterConfig:
    """Thresholds of the cleanup steps.

    Attributes:
        min_chars (int): Minimum non-whitespace characters per side
        margin_threshold (float): Minimum detection margin on both
            sides before a same-language pair is dropped
        min_pair_score (float): Score gate for realigned 1-1 beads;
            ``None`` disables it
    """
    min_chars = attr.ib(default=3, converter=int)
    margin_threshold = attr.ib(default=0.05, converter=float)
    min_pair_score = attr.ib(default=None, converter=_optional_float)

    @min_chars.validator
    def _check_min_chars(self, attribute, value):
        if value < 0:
            raise ValidationError('min_chars must not be negative')

    @margin_threshold.validator
    def _check_margin(self, attribute, value):
        if value < 0:
            raise ValidationError('margin_threshold must not be negative')


@attr.s(frozen=True)
class FilterReport:
    """Counts of one cleanup run; ``input`` equals ``output`` plus every
    drop counter.
    """
    input = attr.ib(default=0)
    dropped_unaligned = attr.ib(default=0)
    dropped_low_score = attr.ib(default=0)
    dropped_short = attr.ib(default=0)
    dropped_same_language = attr.ib(default=0)
    output = attr.ib(default=0)

    def __attrs_post_init__(self):
        if self.input != self.output + self.dropped:
            raise ValidationError(
                'Filter counts do not reconcile: {} in, {} out, {} '
                'dropped'.format(self.input, self.output, self.dropped))

    @property
    def dropped(self):
        return (self.dropped_unaligned + self.dropped_low_score
                + self.dropped_short + self.dropped_same_language)

    def __add__(self, other):
        if not isinstance(other, FilterReport):
            return NotImplemented
        return FilterReport(**{name: getattr(self, name) + getattr(other, name)
                               for name in attr.fields_dict(FilterReport)})

    def to_dict(self):
        return attr.asdict(self)


def drop_unaligned(beads):
    """Remove 1-0 and 0-1 beads."""
    return [bead for bead in beads if bead.src and bead.tgt]


def _visible_chars(text):
    return sum(1 for char in text if not char.isspace())


def drop_short(pairs, min_chars=3):
    """Drop pairs with a side of fewer than :attr:`min_chars`
    non-whitespace characters.
    """
    return [pair for pair in pairs
            if _visible_chars(pair.src_text) >= min_chars
            and _visible_chars(pair.tgt_text) >= min_chars]


def is_same_language(pair, profiles, margin_threshold=0.05):
    src_lang, src_margin = detect(pair.src_text, profiles)
    tgt_lang, tgt_margin = detect(pair.tgt_text, profiles)
    return (src_lang == tgt_lang and src_margin >= margin_threshold
            and tgt_margin >= margin_threshold)


def drop_same_language(pairs, profiles=None, margin_threshold=0.05):
    """Split pairs into those kept and those whose sides are confidently
    detected as one language.

    Returns:
        (list, list): ``(kept, dropped)``, both in input order
    """
    if profiles is None:
        profiles = default_profiles()
    kept, dropped = [], []
    for pair in pairs:
        if is_same_language(pair, profiles, margin_threshold):
            dropped.append(pair)
        else:
            kept.append(pair)
    if dropped:
        logger.debug('Dropped %d same-language pairs', len(dropped))
    return kept, dropped


def filter_pairs(pairs, cfg=None, profiles=None):
    """Run the text-level steps (short, same-language) over released
    pairs.

    Returns:
        (list of :class:`~.AlignedPair`, :class:`FilterReport`)
    """
    cfg = cfg or FilterConfig()
    pairs = list(pairs)
    long_enough = drop_short(pairs, cfg.min_chars)
    kept, dropped = drop_same_language(long_enough, profiles,
                                       cfg.margin_threshold)
    return kept, FilterReport(
        input=len(pairs), dropped_short=len(pairs) - len(long_enough),
        dropped_same_language=len(dropped), output=len(kept))


def _filter_alignment(alignment, cfg, profiles):
    aligned = drop_unaligned(alignment.beads)
    gated = [bead for bead in aligned
             if passes_score_gate(bead, cfg.min_pair_score)]
    kept, report = filter_pairs(
        [bead_to_pair(alignment, bead) for bead in gated], cfg, profiles)
    return kept, FilterReport(
        input=len(alignment.beads),
        dropped_unaligned=len(alignment.beads) - len(aligned),
        dropped_low_score=len(aligned) - len(gated),
        dropped_short=report.dropped_short,
        dropped_same_language=report.dropped_same_language,
        output=report.output)


def run_filters(alignments, cfg=None, profiles=None):
    """Clean the beads of one or more aligned documents into released
    pairs.

    Args:
        alignments (:class:`~.DocumentAlignment` or iterable of them):
            Aligned documents; every bead counts as one input unit
        cfg (:class:`FilterConfig`, optional): Thresholds
        profiles (list of :class:`~.LanguageProfile`, optional):
            Defaults to the profiles trained on the shipped seed texts

    Returns:
        (list of :class:`~.AlignedPair`, :class:`FilterReport`)
    """
    cfg = cfg or FilterConfig()
    if isinstance(alignments, DocumentAlignment):
        alignments = [alignments]
    if profiles is None:
        profiles = default_profiles()
    pairs, report = [], FilterReport()
    for alignment in alignments:
        kept, alignment_report = _filter_alignment(alignment, cfg, profiles)
        pairs.extend(kept)
        report += alignment_report
    logger.info('Filtered %d beads into %d pairs', report.input,
                report.output)
    return pairs, report
