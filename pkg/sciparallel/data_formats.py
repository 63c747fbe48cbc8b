"""Utilities for the data formats supported by sciparallel.

Every domain type has a plain-dict form used for the line-delimited
JSON artifacts (``*.jsonl``). Sentence references are written compactly
as ``section.paragraph.index`` strings; the article id and language are
taken from the enclosing record.
"""

import json
from enum import Enum, unique
from pathlib import Path

from sciparallel.exceptions import StoreParseError, ValidationError
from sciparallel.models import (
    AlignedPair,
    ArticleMetadata,
    ArticleRecord,
    Bead,
    CompatibilityVerdict,
    DocumentAlignment,
    LanguageTag,
    ParsedArticle,
    Section,
    Sentence,
    SentenceRef,
    StructuredDocument,
    TrilingualUnit,
    pair_name,
)


@unique
class DataFormat(Enum):
    """Enum of supported artifact formats."""
    jsonl = 'jsonl'
    tmx = 'tmx'
    txt = 'txt'
    tsv = 'tsv'


def _data_format_resolver(data_format, resolver_dict):
    """Resolve a value from :attr:`resolver_dict` based on the
    :attr:`data_format`.

    Args:
        data_format (:class:`~.DataFormat` or str): The data format;
            must be a member of :class:`~.DataFormat` or a string
            equivalent.
        resolver_dict (dict): the resolving dict. Can hold any value
            for any of the valid :attr:`data_format` strings

    Returns:
        The value of the key in :attr:`resolver_dict` that matches
        :attr:`data_format`
    """
    try:
        data_format = DataFormat(data_format)
    except ValueError:
        supported_formats = ', '.join(
            ["'{}'".format(f.value) for f in DataFormat])
        raise ValidationError(("'data_format' must be one of {formats}. "
                               "Given '{value}'.").format(
                                   formats=supported_formats,
                                   value=data_format)) from None
    return (resolver_dict.get(data_format) or
            resolver_dict.get(data_format.value))


def format_from_path(path):
    """Guess the :class:`~.DataFormat` of :attr:`path` from its suffix."""
    suffix = Path(path).suffix.lstrip('.').lower()
    if suffix == 'json':
        suffix = 'jsonl'
    return _data_format_resolver(suffix, {fmt: fmt for fmt in DataFormat})


def _lang_dict(mapping):
    return {lang.value: text for lang, text in sorted(mapping.items())}


def article_to_dict(record):
    metadata = record.metadata
    return {
        'scielo_id': metadata.scielo_id,
        'doi': metadata.doi,
        'journal': metadata.journal,
        'subject_area': metadata.subject_area,
        'authors': list(metadata.authors),
        'license': metadata.license,
        'titles': _lang_dict(metadata.titles),
        'bodies': _lang_dict(record.bodies),
    }


def article_from_dict(data):
    metadata = ArticleMetadata(scielo_id=data['scielo_id'],
                               journal=data['journal'],
                               subject_area=data['subject_area'],
                               license=data['license'],
                               doi=data.get('doi'),
                               authors=data.get('authors') or (),
                               titles=data.get('titles') or {})
    return ArticleRecord(metadata=metadata, bodies=data['bodies'])


def document_to_dict(document):
    return {
        'lang': document.lang.value,
        'title': document.title,
        'kind': document.kind.value,
        'sections': [{'heading': section.heading,
                      'paragraphs': list(section.paragraphs)}
                     for section in document.sections],
    }


def document_from_dict(data):
    sections = [Section(heading=section.get('heading'),
                        paragraphs=section['paragraphs'])
                for section in data['sections']]
    return StructuredDocument(lang=data['lang'], kind=data['kind'],
                              sections=sections, title=data.get('title'))


def verdict_to_dict(verdict):
    return {'mode': verdict.mode.value,
            'src_shape': list(verdict.src_shape),
            'tgt_shape': list(verdict.tgt_shape)}


def verdict_from_dict(data):
    return CompatibilityVerdict(mode=data['mode'],
                                src_shape=data['src_shape'],
                                tgt_shape=data['tgt_shape'])


def parsed_to_dict(parsed):
    return {
        'scielo_id': parsed.article_id,
        'documents': {lang.value: document_to_dict(document)
                      for lang, document in sorted(parsed.documents.items())},
        'verdicts': {pair_name(*pair): verdict_to_dict(verdict)
                     for pair, verdict in sorted(parsed.verdicts.items())},
    }


def parsed_from_dict(data):
    return ParsedArticle(
        article_id=data['scielo_id'],
        documents={lang: document_from_dict(document)
                   for lang, document in data['documents'].items()},
        verdicts={pair: verdict_from_dict(verdict)
                  for pair, verdict in data.get('verdicts', {}).items()})


def ref_to_str(ref):
    return '{}.{}.{}'.format(ref.section, ref.paragraph, ref.index)


def ref_from_str(value, article_id, lang):
    try:
        section, paragraph, index = (int(part) for part in value.split('.'))
    except ValueError:
        raise ValidationError("Sentence reference must look like "
                              "'section.paragraph.index'. Given "
                              "'{}'".format(value)) from None
    return SentenceRef(article_id=article_id, lang=lang, section=section,
                       paragraph=paragraph, index=index)


def refs_from_strs(values, article_id, lang):
    return tuple(ref_from_str(value, article_id, lang) for value in values)


def sentence_to_dict(sentence):
    return {'text': sentence.text, 'ref': ref_to_str(sentence.ref)}


def sentence_from_dict(data, article_id, lang):
    return Sentence(text=data['text'],
                    ref=ref_from_str(data['ref'], article_id, lang))


def bead_to_dict(bead):
    return {'kind': bead.kind.value, 'src': list(bead.src),
            'tgt': list(bead.tgt), 'score': bead.score,
            'lexical': bead.lexical}


def bead_from_dict(data):
    return Bead(kind=data['kind'], src=data['src'], tgt=data['tgt'],
                score=data['score'], lexical=data.get('lexical', False))


def alignment_to_dict(alignment):
    return {
        'article_id': alignment.article_id,
        'src_lang': alignment.src_lang.value,
        'tgt_lang': alignment.tgt_lang.value,
        'mode': alignment.mode.value,
        'src_sents': [sentence_to_dict(s) for s in alignment.src_sents],
        'tgt_sents': [sentence_to_dict(s) for s in alignment.tgt_sents],
        'beads': [bead_to_dict(bead) for bead in alignment.beads],
    }


def alignment_from_dict(data):
    article_id = data['article_id']
    src_lang = LanguageTag.parse(data['src_lang'])
    tgt_lang = LanguageTag.parse(data['tgt_lang'])
    return DocumentAlignment(
        article_id=article_id, src_lang=src_lang, tgt_lang=tgt_lang,
        mode=data.get('mode', 'flat'),
        src_sents=[sentence_from_dict(s, article_id, src_lang)
                   for s in data['src_sents']],
        tgt_sents=[sentence_from_dict(s, article_id, tgt_lang)
                   for s in data['tgt_sents']],
        beads=[bead_from_dict(bead) for bead in data['beads']])


def pair_to_dict(pair):
    return {
        'article_id': pair.article_id,
        'src_lang': pair.src_lang.value,
        'tgt_lang': pair.tgt_lang.value,
        'src_text': pair.src_text,
        'tgt_text': pair.tgt_text,
        'score': pair.score,
        'provenance': pair.provenance.value,
        'src_refs': [ref_to_str(ref) for ref in pair.src_refs],
        'tgt_refs': [ref_to_str(ref) for ref in pair.tgt_refs],
    }


def pair_from_dict(data):
    article_id = data['article_id']
    src_lang = LanguageTag.parse(data['src_lang'])
    tgt_lang = LanguageTag.parse(data['tgt_lang'])
    return AlignedPair(
        src_lang=src_lang, tgt_lang=tgt_lang,
        src_text=data['src_text'], tgt_text=data['tgt_text'],
        article_id=article_id, score=data.get('score', 0.0),
        provenance=data.get('provenance', '1-1'),
        src_refs=refs_from_strs(data.get('src_refs', ()), article_id,
                                src_lang),
        tgt_refs=refs_from_strs(data.get('tgt_refs', ()), article_id,
                                tgt_lang))


def unit_to_dict(unit):
    return {
        'article_id': unit.article_id,
        'pivot': unit.pivot.value,
        'texts': _lang_dict(unit.texts),
        'pivot_refs': [ref_to_str(ref) for ref in unit.pivot_refs],
    }


def unit_from_dict(data):
    article_id = data['article_id']
    pivot = LanguageTag.parse(data.get('pivot', 'en'))
    return TrilingualUnit(
        texts=data['texts'], article_id=article_id, pivot=pivot,
        pivot_refs=refs_from_strs(data.get('pivot_refs', ()), article_id,
                                  pivot))


def dumps_line(data):
    """Serialise :attr:`data` as a single JSON line (no trailing
    newline)."""
    return json.dumps(data, ensure_ascii=False, separators=(', ', ': '))


def write_jsonl(path, records, to_dict):
    """Write :attr:`records` to :attr:`path`, one JSON object per line.

    Returns:
        int: number of records written
    """
    count = 0
    with open(str(path), 'w', encoding='utf-8', newline='\n') as fp:
        for record in records:
            fp.write(dumps_line(to_dict(record)))
            fp.write('\n')
            count += 1
    return count


def iter_jsonl(path):
    """Yield ``(line_number, dict)`` for every non-blank line of
    :attr:`path`.

    Raises:
        :exc:`~.StoreParseError`: If a line is not a JSON object
    """
    with open(str(path), encoding='utf-8') as fp:
        for line_number, line in enumerate(fp, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
            except ValueError as ex:
                raise StoreParseError(
                    line_number, 'Corrupt line {} in {}: {}'.format(
                        line_number, path, ex)) from ex
            if not isinstance(data, dict):
                raise StoreParseError(line_number)
            yield line_number, data


def read_jsonl(path, from_dict):
    """Read every record of :attr:`path` with :attr:`from_dict`.

    Records that decode but fail validation are reported with their
    line number too.
    """
    records = []
    for line_number, data in iter_jsonl(path):
        try:
            records.append(from_dict(data))
        except (KeyError, TypeError, ValueError) as ex:
            raise StoreParseError(
                line_number, 'Invalid record on line {} of {}: {}'.format(
                    line_number, path, ex)) from ex
    return records
