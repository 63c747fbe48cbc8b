"""Trilingual units from two bilingual pair sets sharing a pivot."""

import logging

from sciparallel.exceptions import PivotMismatchError
from sciparallel.models import LanguageTag, TrilingualUnit


logger = logging.getLogger(__name__)


def _other_language(pairs, pivot, name):
    others = set()
    for pair in pairs:
        if pivot not in pair.languages:
            raise PivotMismatchError(
                "Pivot '{}' is missing from a {} pair ({}-{}) of article "
                "'{}'".format(pivot.value, name, pair.src_lang.value,
                              pair.tgt_lang.value, pair.article_id))
        others.add(pair.tgt_lang if pair.src_lang == pivot else pair.src_lang)
    if len(others) > 1:
        raise PivotMismatchError('{} pairs mix several non-pivot '
                                 'languages'.format(name.capitalize()))
    return others.pop() if others else None


def pivot_key(pair, pivot):
    """``(article_id, pivot sentence positions)`` of a pair."""
    _, refs = pair.side(pivot)
    return pair.article_id, tuple(ref.position for ref in refs)


def _index(pairs, pivot):
    index = {}
    for pair in pairs:
        key = pivot_key(pair, pivot)
        if key[1]:
            index.setdefault(key, pair)
    return index


def join_trilingual(pairs_ab, pairs_ac, pivot=LanguageTag.en):
    """Join two pair lists on identical pivot sentence groups.

    A unit is emitted when the same set of pivot-side sentence positions
    of an article appears in both lists. Pairs without positional
    provenance cannot be joined and are ignored.

    Args:
        pairs_ab (list of :class:`~.AlignedPair`): Pairs between the
            pivot and a second language
        pairs_ac (list of :class:`~.AlignedPair`): Pairs between the
            pivot and the third language
        pivot (:class:`~.LanguageTag`, optional): Shared language

    Returns:
        list of :class:`~.TrilingualUnit`: ordered by article id, then
        pivot position

    Raises:
        :exc:`~.PivotMismatchError`: if a pair lacks the pivot, or the
            lists do not cover three distinct languages
    """
    pivot = LanguageTag.parse(pivot)
    lang_b = _other_language(pairs_ab, pivot, 'first')
    lang_c = _other_language(pairs_ac, pivot, 'second')
    if lang_b is None or lang_c is None:
        return []
    if lang_b == lang_c:
        raise PivotMismatchError(
            "Both pair lists pair '{}' with '{}'; a third language is "
            "needed".format(pivot.value, lang_b.value))

    index_ac = _index(pairs_ac, pivot)
    units = []
    for key, pair_ab in _index(pairs_ab, pivot).items():
        pair_ac = index_ac.get(key)
        if pair_ac is None:
            continue
        pivot_text, pivot_refs = pair_ab.side(pivot)
        if pair_ac.side(pivot)[0] != pivot_text:
            logger.warning('Pivot text differs between pair lists for %s '
                           'at %s; skipped', key[0], key[1])
            continue
        units.append(TrilingualUnit(
            texts={pivot: pivot_text,
                   lang_b: pair_ab.side(lang_b)[0],
                   lang_c: pair_ac.side(lang_c)[0]},
            article_id=pair_ab.article_id, pivot=pivot,
            pivot_refs=pivot_refs))
    units.sort(key=lambda unit: (unit.article_id, unit.pivot_positions))
    logger.info('Joined %d trilingual units from %d + %d pairs',
                len(units), len(pairs_ab), len(pairs_ac))
    return units
