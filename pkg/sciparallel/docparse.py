"""Article markup parsing and cross-language structural compatibility.

Recognised structure is deliberately small:

    - headings: ``h1``-``h6``, or leaf elements whose class names
      contain ``sec`` or ``title``; every heading opens a section
    - paragraphs: ``p`` elements
    - any other block-level element holding text becomes a paragraph

Images, tables, figures, scripts, reference lists and footnotes are
removed before text is collected; citation markers (superscripts and
in-page anchors, bracketed numbers such as ``[3]``) are removed while
the surrounding sentence is kept. Collection stops at a references
heading.
"""

import logging
import re

from bs4 import BeautifulSoup, NavigableString, Tag
from bs4.element import PreformattedString

from sciparallel.exceptions import EmptyDocumentError
from sciparallel.models import (
    CompatibilityMode,
    CompatibilityVerdict,
    DocumentKind,
    LanguageTag,
    Section,
    StructuredDocument,
)
from sciparallel.segment import normalize_whitespace


logger = logging.getLogger(__name__)

PARSE_MODES = ('auto', 'flat')

HEADING_TAGS = frozenset(['h1', 'h2', 'h3', 'h4', 'h5', 'h6'])

REMOVED_TAGS = ['img', 'picture', 'svg', 'table', 'figure', 'figcaption',
                'script', 'style', 'noscript', 'iframe', 'object', 'video',
                'audio', 'math', 'canvas', 'map', 'head', 'nav', 'form']

# https://developer.mozilla.org/en-US/docs/Web/HTML/Block-level_elements
BLOCK_TAGS = frozenset(['address', 'article', 'aside', 'blockquote', 'body',
                        'dd', 'details', 'dialog', 'div', 'dl', 'dt',
                        'fieldset', 'footer', 'header', 'hgroup', 'hr', 'li',
                        'main', 'ol', 'output', 'p', 'pre', 'section',
                        'summary', 'tfoot', 'ul']) | HEADING_TAGS

_BLOCK_NAMES = sorted(BLOCK_TAGS)

NOTE_TOKENS = frozenset(['ref-list', 'reflist', 'ref-lista', 'refs',
                         'references', 'reference-list', 'referencias',
                         'bibliography', 'biblio', 'bibliografia', 'fn',
                         'fn-group', 'fngroup', 'footnote', 'footnotes',
                         'endnotes', 'notes'])

REFERENCE_HEADINGS = frozenset(['references', 'referências', 'referencias',
                                'referências bibliográficas',
                                'referencias bibliográficas',
                                'bibliography', 'bibliografía',
                                'bibliografia'])

_CITATION_TEXT = re.compile(r'^[\s\[\]()\d,;\-–—*†‡]+$')
_BRACKET_CITATION = re.compile(r'\s*\[\d+(?:\s*[,;\-–]\s*\d+)*\]')
_TAG_LIKE = re.compile(r'</?[A-Za-z][^<>]*>')
_STRUCTURE_CLASS = re.compile(r'sec|title', re.IGNORECASE)


def _tokens(tag):
    classes = tag.get('class') or []
    if isinstance(classes, str):
        classes = classes.split()
    return [token.lower() for token in classes] + [
        token.lower() for token in (tag.get('id') or '').split()]


def _decompose_all(tags):
    for tag in tags:
        if not tag.decomposed:
            tag.decompose()


def _strip_non_text(root):
    _decompose_all(root.find_all(REMOVED_TAGS))
    _decompose_all([tag for tag in root.find_all(True)
                    if NOTE_TOKENS.intersection(_tokens(tag))])
    for br in root.find_all('br'):
        br.replace_with(' ')


def _is_citation_text(text):
    return bool(text.strip()) and bool(_CITATION_TEXT.match(text))


def _strip_citations(root):
    _decompose_all([sup for sup in root.find_all('sup')
                    if _is_citation_text(sup.get_text(''))])
    for anchor in root.find_all('a'):
        if anchor.decomposed:
            continue
        href = anchor.get('href') or ''
        if href.startswith('#') and (_is_citation_text(anchor.get_text(''))
                                     or anchor.find_parent('sup')):
            anchor.decompose()
        else:
            anchor.unwrap()


def clean_text(text):
    """Normalise one block of extracted text: bracketed numeric
    citations and leftover tag fragments removed, ``<``/``>`` dropped,
    whitespace collapsed.
    """
    text = _BRACKET_CITATION.sub('', text)
    text = _TAG_LIKE.sub(' ', text)
    text = text.replace('<', ' ').replace('>', ' ')
    return normalize_whitespace(text)


def _is_heading(tag):
    if tag.name in HEADING_TAGS:
        return True
    if tag.name == 'p' or tag.find(_BLOCK_NAMES) is not None:
        return False
    return any(_STRUCTURE_CLASS.search(token) for token in _tokens(tag))


def _iter_blocks(node):
    """Yield ``(kind, text)`` for the text blocks below :attr:`node` in
    document order; ``kind`` is ``heading``, ``p`` or ``block``.
    """
    inline = []

    def flush():
        text = clean_text(''.join(inline))
        inline.clear()
        if text:
            return ('block', text)
        return None

    for child in node.children:
        if isinstance(child, PreformattedString):
            continue
        if isinstance(child, NavigableString):
            inline.append(str(child))
            continue
        if not isinstance(child, Tag):
            continue
        is_block = child.name in BLOCK_TAGS
        if not is_block and child.find(_BLOCK_NAMES) is None:
            if _is_heading(child):
                pending = flush()
                if pending:
                    yield pending
                text = clean_text(child.get_text(''))
                if text:
                    yield ('heading', text)
            else:
                inline.append(child.get_text(''))
            continue

        pending = flush()
        if pending:
            yield pending
        if _is_heading(child):
            text = clean_text(child.get_text(''))
            if text:
                yield ('heading', text)
        elif child.name == 'p' and child.find(_BLOCK_NAMES) is None:
            text = clean_text(child.get_text(''))
            if text:
                yield ('p', text)
        else:
            yield from _iter_blocks(child)

    pending = flush()
    if pending:
        yield pending


def _is_reference_heading(text):
    return text.strip().rstrip(':').lower() in REFERENCE_HEADINGS


def _collect(blocks):
    """Cut :attr:`blocks` at the first references heading."""
    collected = []
    for kind, text in blocks:
        if kind == 'heading' and _is_reference_heading(text):
            break
        collected.append((kind, text))
    return collected


def _structured_sections(blocks):
    sections = []
    heading, paragraphs = None, []
    for kind, text in blocks:
        if kind == 'heading':
            if paragraphs:
                sections.append(Section(heading=heading,
                                        paragraphs=paragraphs))
            heading, paragraphs = text, []
        else:
            paragraphs.append(text)
    if paragraphs:
        sections.append(Section(heading=heading, paragraphs=paragraphs))
    return sections


def parse_html(markup, lang, *, mode='auto'):
    """Parse raw article markup into a :class:`~.StructuredDocument`.

    Args:
        markup (str): The article markup; ill-formed markup is repaired
            by the ``lxml`` parser
        lang (:class:`~.LanguageTag` or str): Language of the document
        mode (str, keyword, optional): ``auto`` detects structure,
            ``flat`` always returns the flat paragraph list

    Returns:
        :class:`~.StructuredDocument`

    Raises:
        :exc:`~.EmptyDocumentError`: If no text is left after
            stripping non-textual elements
    """
    if mode not in PARSE_MODES:
        raise ValueError("'mode' must be one of {}. Given '{}'".format(
            ', '.join(PARSE_MODES), mode))
    lang = LanguageTag.parse(lang)
    soup = BeautifulSoup(markup, 'lxml')
    title = None
    if soup.title is not None:
        title = normalize_whitespace(soup.title.get_text('')) or None

    root = soup.body or soup
    _strip_non_text(root)
    _strip_citations(root)
    blocks = _collect(_iter_blocks(root))

    paragraphs = [text for kind, text in blocks if kind != 'heading']
    if not paragraphs:
        raise EmptyDocumentError(
            "No text left in the '{}' document after stripping "
            'markup'.format(lang.value))

    has_headings = any(kind == 'heading' for kind, _ in blocks)
    has_paragraphs = any(kind == 'p' for kind, _ in blocks)
    if mode == 'auto' and has_headings and has_paragraphs:
        document = StructuredDocument(lang=lang,
                                      kind=DocumentKind.structured,
                                      sections=_structured_sections(blocks),
                                      title=title)
    else:
        document = StructuredDocument(
            lang=lang, kind=DocumentKind.flat,
            sections=[Section(paragraphs=paragraphs)], title=title)
    logger.debug('Parsed %s document: %s, shape %s', lang.value,
                 document.kind.value, document.shape)
    return document


def check_compatibility(a, b):
    """Decide how the two documents :attr:`a` and :attr:`b` can be
    aligned.

    Returns:
        :class:`~.CompatibilityVerdict`: ``structured`` when both are
        structured with identical shapes, ``flat`` when the paragraph
        totals agree, ``incompatible`` otherwise
    """
    if (a.kind is DocumentKind.structured and
            b.kind is DocumentKind.structured and a.shape == b.shape):
        mode = CompatibilityMode.structured
    elif a.paragraph_count == b.paragraph_count:
        mode = CompatibilityMode.flat
    else:
        mode = CompatibilityMode.incompatible
    return CompatibilityVerdict(mode=mode, src_shape=a.shape,
                                tgt_shape=b.shape)
