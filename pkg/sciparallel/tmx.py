"""TMX 1.4b reading and writing.

Files are written from a fixed template so the same corpus always
yields the same bytes. Each translation unit carries the article's
citation metadata as ``prop`` elements (title, authors, license, doi,
journal, scielo_id, subject_area, in that order; doi only when known)
and its alignment provenance in a ``note``. Titles in the other
variant languages sit in a ``title`` prop inside the matching ``tuv``.
Characters XML 1.0 forbids, such as C0 controls other than tab and line
breaks, are dropped on write.
"""

import logging
from types import MappingProxyType
from xml.sax.saxutils import escape

import attr
import regex
from lxml import etree

from sciparallel import __version__
from sciparallel.data_formats import ref_to_str, refs_from_strs
from sciparallel.exceptions import (
    MissingMetadataError,
    TmxParseError,
    UnsupportedVersionError,
    ValidationError,
)
from sciparallel.models import (
    AlignedPair,
    ArticleMetadata,
    LanguageTag,
    TrilingualUnit,
)


logger = logging.getLogger(__name__)

TMX_VERSION = '1.4'
READABLE_VERSIONS = frozenset(['1.4', '1.4b'])
CREATION_TOOL = 'sciparallel'
ALL_LANGUAGES = '*all*'
PROPERTY_KEYS = ('title', 'authors', 'license', 'doi', 'journal',
                 'scielo_id', 'subject_area')
AUTHOR_SEPARATOR = '; '

_XML_LANG = '{http://www.w3.org/XML/1998/namespace}lang'
_ENTITIES = {'"': '&quot;', "'": '&apos;'}
# characters XML 1.0 forbids even as references
_ILLEGAL_XML_CHARS = regex.compile(r'[\x00-\x08\x0b\x0c\x0e-\x1f\ufffe\uffff]')


def _escape(text):
    return escape(_ILLEGAL_XML_CHARS.sub('', text), _ENTITIES)


@attr.s(frozen=True)
class TmxProp:
    type = attr.ib()
    value = attr.ib(converter=str)
    lang = attr.ib(default=None)

    @type.validator
    def _check_type(self, attribute, value):
        if value not in PROPERTY_KEYS:
            raise ValidationError("Unknown TMX property '{}'".format(value))


@attr.s(frozen=True)
class TmxVariant:
    lang = attr.ib(converter=LanguageTag.parse)
    text = attr.ib()
    props = attr.ib(default=(), converter=tuple)


def _distinct_variants(instance, attribute, value):
    langs = [variant.lang for variant in value]
    if len(langs) < 2 or len(set(langs)) != len(langs):
        raise ValidationError('A translation unit needs at least two '
                              'variants in distinct languages; got '
                              '{}'.format([lang.value for lang in langs]))


@attr.s(frozen=True)
class TmxUnit:
    variants = attr.ib(converter=tuple, validator=_distinct_variants)
    props = attr.ib(default=(), converter=tuple)
    note = attr.ib(default=None)

    def prop(self, key):
        for prop in self.props:
            if prop.type == key:
                return prop
        return None


@attr.s(frozen=True)
class TmxHeader:
    srclang = attr.ib()
    creationtool = attr.ib(default=CREATION_TOOL)
    creationtoolversion = attr.ib(default=__version__)
    segtype = attr.ib(default='sentence')
    datatype = attr.ib(default='plaintext')
    adminlang = attr.ib(default='en')
    o_tmf = attr.ib(default=CREATION_TOOL)


@attr.s(frozen=True)
class TmxDocument:
    header = attr.ib()
    units = attr.ib(converter=tuple)
    version = attr.ib(default=TMX_VERSION)


def _notes(item):
    if isinstance(item, TrilingualUnit):
        return 'pivot={};refs={}'.format(
            item.pivot.value,
            ','.join(ref_to_str(ref) for ref in item.pivot_refs))
    return 'kind={};score={!r};src={};tgt={}'.format(
        item.provenance.value, item.score,
        ','.join(ref_to_str(ref) for ref in item.src_refs),
        ','.join(ref_to_str(ref) for ref in item.tgt_refs))


def _item_variants(item):
    if isinstance(item, TrilingualUnit):
        langs = [item.pivot] + [lang for lang in sorted(item.texts)
                                if lang != item.pivot]
        return [(lang, item.texts[lang]) for lang in langs]
    return [(item.src_lang, item.src_text), (item.tgt_lang, item.tgt_text)]


def build_unit(item, metadata):
    """Translation unit of an :class:`~.AlignedPair` or
    :class:`~.TrilingualUnit` with the article's metadata.
    """
    variants = _item_variants(item)
    source_lang = variants[0][0]
    values = {
        'title': metadata.titles.get(source_lang, ''),
        'authors': AUTHOR_SEPARATOR.join(metadata.authors),
        'license': metadata.license,
        'doi': metadata.doi,
        'journal': metadata.journal,
        'scielo_id': metadata.scielo_id,
        'subject_area': metadata.subject_area,
    }
    props = [TmxProp(type=key, value=values[key],
                     lang=source_lang.value if key == 'title' else None)
             for key in PROPERTY_KEYS if values[key] is not None]
    tuvs = []
    for lang, text in variants:
        title = metadata.titles.get(lang)
        tuv_props = ()
        if lang != source_lang and title:
            tuv_props = (TmxProp(type='title', value=title),)
        tuvs.append(TmxVariant(lang=lang, text=text, props=tuv_props))
    return TmxUnit(variants=tuvs, props=props, note=_notes(item))


def build_document(items, metadata):
    """Assemble a :class:`TmxDocument` from pairs or trilingual units.

    Args:
        items (list): :class:`~.AlignedPair` or
            :class:`~.TrilingualUnit` values
        metadata (mapping of str to :class:`~.ArticleMetadata`): Keyed
            by article id

    Raises:
        :exc:`~.MissingMetadataError`: for an article id without
            metadata
    """
    items = list(items)
    units = []
    for item in items:
        if item.article_id not in metadata:
            raise MissingMetadataError(item.article_id)
        units.append(build_unit(item, metadata[item.article_id]))
    if items and isinstance(items[0], AlignedPair):
        srclang = items[0].src_lang.value
    else:
        srclang = ALL_LANGUAGES
    return TmxDocument(header=TmxHeader(srclang=srclang), units=units)


def _prop_line(prop, indent):
    lang = ' xml:lang="{}"'.format(prop.lang) if prop.lang else ''
    return '{}<prop type="{}"{}>{}</prop>\n'.format(
        indent, prop.type, lang, _escape(prop.value))


def render_tmx(document):
    """Serialise :attr:`document` as TMX text."""
    header = document.header
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>\n',
        '<tmx version="{}">\n'.format(document.version),
        ('  <header creationtool="{}" creationtoolversion="{}" '
         'datatype="{}" segtype="{}" adminlang="{}" o-tmf="{}" '
         'srclang="{}"/>\n').format(
            _escape(header.creationtool),
            _escape(header.creationtoolversion), header.datatype,
            header.segtype, header.adminlang, _escape(header.o_tmf),
            header.srclang),
        '  <body>\n',
    ]
    for unit in document.units:
        lines.append('    <tu>\n')
        lines.extend(_prop_line(prop, '      ') for prop in unit.props)
        if unit.note is not None:
            lines.append('      <note>{}</note>\n'.format(
                _escape(unit.note)))
        for variant in unit.variants:
            lines.append('      <tuv xml:lang="{}">\n'.format(
                variant.lang.value))
            lines.extend(_prop_line(prop, '        ')
                         for prop in variant.props)
            lines.append('        <seg>{}</seg>\n'.format(
                _escape(variant.text)))
            lines.append('      </tuv>\n')
        lines.append('    </tu>\n')
    lines.append('  </body>\n')
    lines.append('</tmx>\n')
    return ''.join(lines)


def write_document(document, path):
    with open(str(path), 'w', encoding='utf-8', newline='\n') as fp:
        fp.write(render_tmx(document))
    return str(path)


def write_tmx(items, metadata, path):
    """Write pairs or trilingual units with their article metadata to a
    TMX file at :attr:`path`.

    Returns:
        str: the path written
    """
    document = build_document(items, metadata)
    write_document(document, path)
    logger.info('Wrote %d translation units to %s', len(document.units),
                path)
    return str(path)


def _lang_of(element, unit_index):
    lang = element.get(_XML_LANG) or element.get('lang')
    if not lang:
        raise TmxParseError('Variant without a language attribute in unit '
                            '{}'.format(unit_index), unit_index=unit_index)
    try:
        return LanguageTag.parse(lang)
    except ValidationError as ex:
        raise TmxParseError('{} (unit {})'.format(ex, unit_index),
                            unit_index=unit_index) from ex


def _parse_props(element, unit_index):
    props = []
    for prop in element.findall('prop'):
        try:
            props.append(TmxProp(type=prop.get('type'),
                                 value=prop.text or '',
                                 lang=prop.get(_XML_LANG)))
        except ValidationError as ex:
            raise TmxParseError('{} (unit {})'.format(ex, unit_index),
                                unit_index=unit_index) from ex
    return props


def _parse_unit(tu, unit_index):
    variants = []
    for tuv in tu.findall('tuv'):
        seg = tuv.find('seg')
        if seg is None:
            raise TmxParseError('Variant without a segment in unit '
                                '{}'.format(unit_index),
                                unit_index=unit_index)
        variants.append(TmxVariant(lang=_lang_of(tuv, unit_index),
                                   text=''.join(seg.itertext()),
                                   props=_parse_props(tuv, unit_index)))
    note = tu.find('note')
    try:
        return TmxUnit(variants=variants, props=_parse_props(tu, unit_index),
                       note=note.text if note is not None else None)
    except ValidationError as ex:
        raise TmxParseError('{} (unit {})'.format(ex, unit_index),
                            unit_index=unit_index) from ex


def parse_tmx(source):
    """Parse a TMX file (path or file object) into a
    :class:`TmxDocument`.

    Raises:
        :exc:`~.TmxParseError`: for malformed XML or structure
        :exc:`~.UnsupportedVersionError`: for versions other than 1.4
    """
    parser = etree.XMLParser(resolve_entities=False, no_network=True)
    try:
        root = etree.parse(source if hasattr(source, 'read') else str(source),
                           parser).getroot()
    except etree.XMLSyntaxError as ex:
        raise TmxParseError('Malformed TMX: {}'.format(ex)) from ex
    if root.tag != 'tmx':
        raise TmxParseError("Root element is '{}', not 'tmx'".format(root.tag))
    version = root.get('version')
    if version not in READABLE_VERSIONS:
        raise UnsupportedVersionError(version)
    header, body = root.find('header'), root.find('body')
    if header is None or body is None:
        raise TmxParseError('TMX file lacks a header or a body')
    return TmxDocument(
        header=TmxHeader(
            srclang=header.get('srclang'),
            creationtool=header.get('creationtool'),
            creationtoolversion=header.get('creationtoolversion'),
            segtype=header.get('segtype'),
            datatype=header.get('datatype'),
            adminlang=header.get('adminlang'),
            o_tmf=header.get('o-tmf')),
        units=[_parse_unit(tu, index)
               for index, tu in enumerate(body.findall('tu'))],
        version=version)


def _parse_note(note):
    fields = {}
    for part in (note or '').split(';'):
        key, _, value = part.partition('=')
        if key:
            fields[key.strip()] = value.strip()
    return fields


def _split_refs(value):
    return [ref for ref in (value or '').split(',') if ref]


def _metadata_of(unit, unit_index):
    values = {prop.type: prop.value for prop in unit.props}
    try:
        scielo_id = values['scielo_id']
    except KeyError:
        raise TmxParseError('Unit {} has no scielo_id property'.format(
            unit_index), unit_index=unit_index) from None
    titles = {}
    title = unit.prop('title')
    if title is not None and title.value:
        titles[LanguageTag.parse(title.lang or unit.variants[0].lang)] = \
            title.value
    for variant in unit.variants:
        for prop in variant.props:
            if prop.type == 'title' and prop.value:
                titles[variant.lang] = prop.value
    authors = values.get('authors', '')
    return ArticleMetadata(
        scielo_id=scielo_id, journal=values.get('journal', ''),
        subject_area=values.get('subject_area', ''),
        license=values.get('license', ''), doi=values.get('doi'),
        authors=authors.split(AUTHOR_SEPARATOR) if authors else (),
        titles=titles)


def _item_of(unit, article_id):
    note = _parse_note(unit.note)
    texts = {variant.lang: variant.text for variant in unit.variants}
    if 'pivot' in note or len(unit.variants) == 3:
        pivot = LanguageTag.parse(note.get('pivot', unit.variants[0].lang))
        return TrilingualUnit(
            texts=texts, article_id=article_id, pivot=pivot,
            pivot_refs=refs_from_strs(_split_refs(note.get('refs')),
                                      article_id, pivot))
    src, tgt = unit.variants[:2]
    return AlignedPair(
        src_lang=src.lang, tgt_lang=tgt.lang, src_text=src.text,
        tgt_text=tgt.text, article_id=article_id,
        score=float(note.get('score', 0.0)),
        provenance=note.get('kind', '1-1'),
        src_refs=refs_from_strs(_split_refs(note.get('src')), article_id,
                                src.lang),
        tgt_refs=refs_from_strs(_split_refs(note.get('tgt')), article_id,
                                tgt.lang))


def document_items(document):
    """Rebuild pairs or trilingual units, and the metadata of every
    article, from a :class:`TmxDocument`.

    Returns:
        (list, mapping of str to :class:`~.ArticleMetadata`)
    """
    items, metadata = [], {}
    for index, unit in enumerate(document.units):
        try:
            article = _metadata_of(unit, index)
            if article.scielo_id in metadata:
                known = metadata[article.scielo_id]
                titles = dict(known.titles)
                titles.update(article.titles)
                article = attr.evolve(known, titles=titles)
            metadata[article.scielo_id] = article
            items.append(_item_of(unit, article.scielo_id))
        except ValidationError as ex:
            raise TmxParseError('{} (unit {})'.format(ex, index),
                                unit_index=index) from ex
    return items, MappingProxyType(metadata)


def read_tmx(path):
    """Inverse of :func:`write_tmx`.

    Returns:
        (list, mapping of str to :class:`~.ArticleMetadata`): pairs or
        trilingual units in file order, and metadata by article id
    """
    return document_items(parse_tmx(path))
