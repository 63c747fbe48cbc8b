"""Pre-alignment text normalisation and rule-based sentence splitting."""

import re
from functools import lru_cache
from pathlib import Path

import regex

from sciparallel.models import LanguageTag, Sentence, SentenceRef


DATA_DIR = Path(__file__).parent / 'data'

_PARENTHETICAL = re.compile(r'\s*\([^()]*\)')
_SPACES = re.compile(r' {2,}')
_BOUNDARY = regex.compile(r'[.!?]+(?=\s+[\p{Lu}\p{Nd}])')
_INITIAL = regex.compile(r'^\p{Lu}\.$')
_LEADING_PUNCT = '([{"\'“‘«¿¡'


def normalize_whitespace(text):
    """Replace newlines and carriage returns by spaces, collapse runs of
    whitespace and trim both ends.
    """
    return ' '.join(text.split())


def strip_parentheticals(text):
    """Delete every balanced ``(...)`` span with its contents,
    innermost first, until none is left; then drop unmatched
    parentheses and collapse doubled spaces. Square brackets are left
    alone.
    """
    while True:
        stripped = _PARENTHETICAL.sub('', text)
        if stripped == text:
            break
        text = stripped
    text = text.replace('(', '').replace(')', '')
    return _SPACES.sub(' ', text).strip()


def preprocess(text):
    return strip_parentheticals(normalize_whitespace(text))


def _read_abbreviations(path):
    with open(str(path), encoding='utf-8') as fp:
        return frozenset(line.strip().lower() for line in fp
                         if line.strip() and not line.startswith('#'))


@lru_cache(maxsize=None)
def _shipped_abbreviations(lang):
    return _read_abbreviations(
        DATA_DIR / 'abbreviations' / '{}.txt'.format(lang.value))


def load_abbreviations(lang, path=None):
    """Load the abbreviation list of :attr:`lang`.

    Args:
        lang (:class:`~.LanguageTag` or str): The language
        path (str or :class:`~pathlib.Path`, optional): An override; a
            file with one abbreviation per line, or a directory holding
            ``<lang>.txt`` files. Defaults to the shipped lists.

    Returns:
        frozenset of str: lowercased abbreviations, e.g. ``'et al.'``
    """
    lang = LanguageTag.parse(lang)
    if path is None:
        return _shipped_abbreviations(lang)
    path = Path(path)
    if path.is_dir():
        path = path / '{}.txt'.format(lang.value)
    return _read_abbreviations(path)


def _ends_with_abbreviation(head, abbreviations):
    words = head.split()
    if not words:
        return False
    token = words[-1].lstrip(_LEADING_PUNCT)
    if _INITIAL.match(token) or token.lower() in abbreviations:
        return True
    lowered = head.lower()
    for abbreviation in abbreviations:
        if ' ' not in abbreviation or not lowered.endswith(abbreviation):
            continue
        start = len(lowered) - len(abbreviation)
        if start == 0 or not lowered[start - 1].isalnum():
            return True
    return False


def split_sentences(paragraph, lang, abbreviations=None):
    """Split a normalised paragraph into sentence texts.

    A sentence ends at ``.``, ``!`` or ``?`` followed by whitespace and
    an uppercase letter or a digit, unless the preceding token is a
    known abbreviation of :attr:`lang` or a single uppercase initial.
    Terminal punctuation stays with its sentence.

    Returns:
        list of str
    """
    if abbreviations is None:
        abbreviations = load_abbreviations(lang)
    else:
        abbreviations = frozenset(a.lower() for a in abbreviations)
    sentences = []
    start = 0
    for match in _BOUNDARY.finditer(paragraph):
        end = match.end()
        if _ends_with_abbreviation(paragraph[start:end], abbreviations):
            continue
        sentence = paragraph[start:end].strip()
        if sentence:
            sentences.append(sentence)
        start = end
    rest = paragraph[start:].strip()
    if rest:
        sentences.append(rest)
    return sentences


def segment_document(document, article_id, abbreviations=None, *,
                     clean=True):
    """Split every paragraph of :attr:`document` into
    :class:`~.Sentence` values.

    Args:
        document (:class:`~.StructuredDocument`): Parsed document
        article_id (str): Id of the owning article
        abbreviations (iterable of str, optional): Overrides the shipped
            abbreviation list
        clean (bool, keyword, optional): Apply :func:`preprocess` to
            every paragraph first

    Returns:
        list of list of :class:`~.Sentence`: one list per paragraph in
        document order; a paragraph emptied by cleaning yields an empty
        list so positions stay aligned with the document
    """
    if abbreviations is None:
        abbreviations = load_abbreviations(document.lang)
    groups = []
    for section_index, section in enumerate(document.sections):
        for paragraph_index, paragraph in enumerate(section.paragraphs):
            text = preprocess(paragraph) if clean else \
                normalize_whitespace(paragraph)
            groups.append([
                Sentence(text=sentence,
                         ref=SentenceRef(article_id=article_id,
                                         lang=document.lang,
                                         section=section_index,
                                         paragraph=paragraph_index,
                                         index=index))
                for index, sentence in enumerate(
                    split_sentences(text, document.lang, abbreviations))])
    return groups
