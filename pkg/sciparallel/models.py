"""Domain types shared by every stage of the corpus pipeline.

Articles, parsed documents, sentences, alignment beads and the aligned
units the corpus is released as. Every type is a frozen :mod:`attr`
class; mappings are held as :class:`~types.MappingProxyType` and
sequences as tuples.

.. warning:: The immutability guarantees given in this module are
             best-effort. There is no general way to achieve
             immutability in Python, but we try our hardest to make it
             so.
"""

from enum import Enum, unique
from functools import total_ordering
from types import MappingProxyType

import attr

import sciparallel.model_validators as validators
from sciparallel.exceptions import InvalidBeadError, ValidationError


@total_ordering
@unique
class LanguageTag(Enum):
    """The three corpus languages, ordered en < pt < es."""
    en = 'en'
    pt = 'pt'
    es = 'es'

    def __lt__(self, other):
        if not isinstance(other, LanguageTag):
            return NotImplemented
        return self.rank < other.rank

    @property
    def rank(self):
        return _LANGUAGE_ORDER.index(self.value)

    @classmethod
    def parse(cls, value):
        """Coerce a tag or a case-insensitive code into a
        :class:`LanguageTag`.

        Raises:
            :exc:`~.ValidationError`: for codes outside en/pt/es
        """
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValidationError(
                "Unknown language code '{}'; expected one of {}".format(
                    value, ', '.join(_LANGUAGE_ORDER))) from None


_LANGUAGE_ORDER = ('en', 'pt', 'es')


def parse_language_pair(value):
    """Parse ``'en-pt'`` (or a 2-tuple) into a pair of distinct tags."""

    if isinstance(value, str):
        parts = value.split('-')
    else:
        parts = list(value)
    if len(parts) != 2:
        raise ValidationError("Language pair must look like 'en-pt'. "
                              "Given '{}'".format(value))
    src, tgt = (LanguageTag.parse(part) for part in parts)
    if src == tgt:
        raise ValidationError("Language pair needs two different "
                              "languages. Given '{}'".format(value))
    return src, tgt


def pair_name(src_lang, tgt_lang):
    return '{}-{}'.format(src_lang.value, tgt_lang.value)


@unique
class DocumentKind(Enum):
    structured = 'structured'
    flat = 'flat'


@unique
class BeadKind(Enum):
    """Shapes of an alignment bead, in tie-break order."""
    one_one = '1-1'
    one_zero = '1-0'
    zero_one = '0-1'
    two_one = '2-1'
    one_two = '1-2'
    two_two = '2-2'

    @property
    def src_count(self):
        return int(self.value[0])

    @property
    def tgt_count(self):
        return int(self.value[2])

    @property
    def rank(self):
        return _BEAD_ORDER.index(self)

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise InvalidBeadError(
                "Unknown bead kind '{}'".format(value)) from None

    @classmethod
    def from_counts(cls, src_count, tgt_count):
        return cls.parse('{}-{}'.format(src_count, tgt_count))


_BEAD_ORDER = tuple(BeadKind)


def _language_mapping(value):
    return MappingProxyType({LanguageTag.parse(key): text
                             for key, text in dict(value).items()})


def _optional_str(value):
    if value is None:
        return None
    value = str(value).strip()
    return value or None


@attr.s(frozen=True, repr=False)
class ArticleMetadata:
    """Citation and licensing metadata of one article.

    Attributes:
        scielo_id (str): Opaque unique identifier of the article
        journal (str): Journal name
        subject_area (str): Subject area of the journal
        license (str): SPDX-like license string, e.g. ``CC-BY-4.0``
        doi (str, keyword): DOI, if available
        authors (tuple of str, keyword): Author names, in order
        titles (mapping of :class:`LanguageTag` to str, keyword):
            Title per language; languages may be missing
    """
    scielo_id = attr.ib(validator=validators.is_nonempty_str)
    journal = attr.ib(converter=str)
    subject_area = attr.ib(converter=str)
    license = attr.ib(validator=validators.is_nonempty_str)
    doi = attr.ib(default=None, converter=_optional_str)
    authors = attr.ib(default=(), converter=tuple,
                      validator=validators.is_str_sequence)
    titles = attr.ib(default=attr.Factory(dict), converter=_language_mapping)

    def __repr__(self):
        return ('ArticleMetadata({id}, journal={journal}, '
                'license={license})').format(id=self.scielo_id,
                                             journal=self.journal,
                                             license=self.license)


@attr.s(frozen=True, repr=False)
class ArticleRecord:
    """One source article: metadata plus the raw markup of every
    available language version.
    """
    metadata = attr.ib(validator=attr.validators.instance_of(ArticleMetadata))
    bodies = attr.ib(converter=_language_mapping,
                     validator=[validators.has_min_length(1),
                                validators.values_nonempty(
                                    validators.keys_instance_of(LanguageTag))])

    def __repr__(self):
        return 'ArticleRecord({id}, languages={langs})'.format(
            id=self.scielo_id,
            langs='/'.join(lang.value for lang in self.languages))

    @property
    def scielo_id(self):
        return self.metadata.scielo_id

    @property
    def languages(self):
        """tuple of :class:`LanguageTag`: body languages, ordered."""
        return tuple(sorted(self.bodies))

    @property
    def missing_titles(self):
        """tuple of :class:`LanguageTag`: body languages lacking a title."""
        return tuple(lang for lang in self.languages
                     if not self.metadata.titles.get(lang))


def _paragraphs_nonempty(instance, attribute, value):
    if any(not paragraph.strip() for paragraph in value):
        raise ValidationError('Paragraphs must not be empty')


@attr.s(frozen=True)
class Section:
    heading = attr.ib(default=None, converter=_optional_str)
    paragraphs = attr.ib(default=(), converter=tuple,
                         validator=[validators.is_str_sequence,
                                    _paragraphs_nonempty])


@attr.s(frozen=True)
class StructuredDocument:
    """A parsed language version of an article.

    ``kind`` is ``structured`` when headings and paragraphs were
    recognised; ``flat`` documents hold exactly one heading-less section
    listing every paragraph in source order.
    """
    lang = attr.ib(converter=LanguageTag.parse)
    kind = attr.ib(converter=DocumentKind)
    sections = attr.ib(converter=tuple)
    title = attr.ib(default=None, converter=_optional_str)

    @sections.validator
    def _check_sections(self, attribute, value):
        if not all(isinstance(section, Section) for section in value):
            raise ValidationError('Sections must be Section instances')
        if self.kind is DocumentKind.flat:
            if len(value) != 1 or value[0].heading is not None:
                raise ValidationError('A flat document holds exactly one '
                                      'heading-less section')

    @property
    def shape(self):
        """tuple of int: paragraph count of every section."""
        return tuple(len(section.paragraphs) for section in self.sections)

    @property
    def paragraphs(self):
        """tuple of str: every paragraph in document order."""
        return tuple(paragraph for section in self.sections
                     for paragraph in section.paragraphs)

    @property
    def paragraph_count(self):
        return sum(self.shape)


@attr.s(frozen=True)
class SentenceRef:
    """Positional identity of a sentence inside its article."""
    article_id = attr.ib(validator=validators.is_nonempty_str)
    lang = attr.ib(converter=LanguageTag.parse)
    section = attr.ib(validator=validators.is_non_negative)
    paragraph = attr.ib(validator=validators.is_non_negative)
    index = attr.ib(validator=validators.is_non_negative)

    @property
    def position(self):
        return (self.section, self.paragraph, self.index)


@attr.s(frozen=True)
class Sentence:
    text = attr.ib(validator=validators.is_single_line)
    ref = attr.ib(validator=attr.validators.instance_of(SentenceRef))


def _is_contiguous(indices):
    return all(b == a + 1 for a, b in zip(indices, indices[1:]))


@attr.s(frozen=True)
class Bead:
    """One alignment unit pairing 0-2 source with 0-2 target sentences.

    ``src`` and ``tgt`` hold positions in the aligned sentence lists.
    ``lexical`` is set when ``score`` came from the dictionary-aware
    second pass rather than from the length model alone.
    """
    kind = attr.ib(converter=BeadKind.parse)
    src = attr.ib(converter=tuple)
    tgt = attr.ib(converter=tuple)
    score = attr.ib(default=0.0, converter=float)
    lexical = attr.ib(default=False, converter=bool)

    def __attrs_post_init__(self):
        if (len(self.src), len(self.tgt)) != (self.kind.src_count,
                                              self.kind.tgt_count):
            raise InvalidBeadError(
                "Bead {kind} cannot hold {src} source and {tgt} target "
                "sentences".format(kind=self.kind.value, src=len(self.src),
                                   tgt=len(self.tgt)))
        if not (_is_contiguous(self.src) and _is_contiguous(self.tgt)):
            raise InvalidBeadError('Bead sentence positions must be '
                                   'contiguous and increasing')

    def shifted(self, src_offset, tgt_offset):
        """Return this bead with positions moved by the given offsets."""
        return attr.evolve(self,
                           src=tuple(i + src_offset for i in self.src),
                           tgt=tuple(j + tgt_offset for j in self.tgt))


def check_bead_sequence(beads, n_src, n_tgt):
    """Check that :attr:`beads` partition ``range(n_src)`` and
    ``range(n_tgt)`` monotonically, every position exactly once.

    Raises:
        :exc:`~.InvalidBeadError`: naming the first offending bead
    """
    next_src = next_tgt = 0
    for position, bead in enumerate(beads):
        expected_src = tuple(range(next_src, next_src + len(bead.src)))
        expected_tgt = tuple(range(next_tgt, next_tgt + len(bead.tgt)))
        if bead.src != expected_src or bead.tgt != expected_tgt:
            raise InvalidBeadError(
                'Bead #{pos} ({kind}) covers {src}/{tgt}, expected '
                '{exp_src}/{exp_tgt}'.format(pos=position,
                                             kind=bead.kind.value,
                                             src=bead.src, tgt=bead.tgt,
                                             exp_src=expected_src,
                                             exp_tgt=expected_tgt))
        next_src += len(bead.src)
        next_tgt += len(bead.tgt)
    if (next_src, next_tgt) != (n_src, n_tgt):
        raise InvalidBeadError(
            'Beads cover {} source and {} target sentences, expected {} '
            'and {}'.format(next_src, next_tgt, n_src, n_tgt))


def is_legal_bead_sequence(beads, n_src, n_tgt):
    try:
        check_bead_sequence(beads, n_src, n_tgt)
    except InvalidBeadError:
        return False
    return True


@attr.s(frozen=True)
class AlignedPair:
    """A released bilingual unit: the merged texts of one bead's sides.

    Attributes:
        src_lang (:class:`LanguageTag`): Source language label
        tgt_lang (:class:`LanguageTag`): Target language label
        src_text (str): Space-joined source sentences
        tgt_text (str): Space-joined target sentences
        article_id (str): Id of the article the bead came from
        score (float): Bead score
        provenance (:class:`BeadKind`): Shape of the originating bead
        src_refs (tuple of :class:`SentenceRef`, keyword): Source
            sentence identities
        tgt_refs (tuple of :class:`SentenceRef`, keyword): Target
            sentence identities
    """
    src_lang = attr.ib(converter=LanguageTag.parse)
    tgt_lang = attr.ib(converter=LanguageTag.parse)
    src_text = attr.ib(validator=validators.is_single_line)
    tgt_text = attr.ib(validator=validators.is_single_line)
    article_id = attr.ib(validator=validators.is_nonempty_str)
    score = attr.ib(default=0.0, converter=float)
    provenance = attr.ib(default=BeadKind.one_one, converter=BeadKind.parse)
    src_refs = attr.ib(default=(), converter=tuple)
    tgt_refs = attr.ib(default=(), converter=tuple)

    def __attrs_post_init__(self):
        if self.src_lang == self.tgt_lang:
            raise ValidationError(
                'An aligned pair needs two different languages; both '
                "sides are labelled '{}'".format(self.src_lang.value))

    @property
    def languages(self):
        return (self.src_lang, self.tgt_lang)

    def side(self, lang):
        """Return ``(text, refs)`` of the side written in :attr:`lang`."""
        if lang == self.src_lang:
            return self.src_text, self.src_refs
        if lang == self.tgt_lang:
            return self.tgt_text, self.tgt_refs
        raise KeyError(lang)


def _three_languages(instance, attribute, value):
    if set(value) != set(LanguageTag):
        raise ValidationError('A trilingual unit needs exactly one text '
                              'per language (en, pt, es)')


@attr.s(frozen=True)
class TrilingualUnit:
    """One sentence group aligned across all three languages."""
    texts = attr.ib(converter=_language_mapping,
                    validator=validators.values_nonempty(_three_languages))
    article_id = attr.ib(validator=validators.is_nonempty_str)
    pivot = attr.ib(default=LanguageTag.en, converter=LanguageTag.parse)
    pivot_refs = attr.ib(default=(), converter=tuple)

    @property
    def pivot_positions(self):
        return tuple(ref.position for ref in self.pivot_refs)


@unique
class CompatibilityMode(Enum):
    structured = 'structured'
    flat = 'flat'
    incompatible = 'incompatible'


@attr.s(frozen=True)
class CompatibilityVerdict:
    """How two language versions of an article may be aligned.

    Attributes:
        mode (:class:`CompatibilityMode`): ``structured`` for identical
            section/paragraph shapes, ``flat`` for equal paragraph
            totals, ``incompatible`` otherwise
        src_shape (tuple of int): Paragraphs per section, first document
        tgt_shape (tuple of int): Paragraphs per section, second document
    """
    mode = attr.ib(converter=CompatibilityMode)
    src_shape = attr.ib(converter=tuple)
    tgt_shape = attr.ib(converter=tuple)

    @property
    def detail(self):
        return (self.src_shape, self.tgt_shape)

    @property
    def is_compatible(self):
        return self.mode is not CompatibilityMode.incompatible


def _sentence_tuple(value):
    value = tuple(value)
    if not all(isinstance(sentence, Sentence) for sentence in value):
        raise ValidationError('Alignments hold Sentence instances only')
    return value


@attr.s(frozen=True)
class DocumentAlignment:
    """The bead sequence aligning one article's two language versions.

    ``src_sents`` and ``tgt_sents`` are the document's sentences in
    order; bead positions index into them.
    """
    article_id = attr.ib(validator=validators.is_nonempty_str)
    src_lang = attr.ib(converter=LanguageTag.parse)
    tgt_lang = attr.ib(converter=LanguageTag.parse)
    src_sents = attr.ib(converter=_sentence_tuple)
    tgt_sents = attr.ib(converter=_sentence_tuple)
    beads = attr.ib(converter=tuple)
    mode = attr.ib(default=CompatibilityMode.flat,
                   converter=CompatibilityMode)

    def __attrs_post_init__(self):
        check_bead_sequence(self.beads, len(self.src_sents),
                            len(self.tgt_sents))


@attr.s(frozen=True)
class ParsedArticle:
    """Parsed language versions of one article plus the compatibility
    verdict of every requested language pair (keyed by ``(src, tgt)``).
    """
    article_id = attr.ib(validator=validators.is_nonempty_str)
    documents = attr.ib(converter=_language_mapping)
    verdicts = attr.ib(default=attr.Factory(dict),
                       converter=lambda value: MappingProxyType({
                           parse_language_pair(key): verdict
                           for key, verdict in dict(value).items()}))

    def verdict(self, src_lang, tgt_lang):
        return self.verdicts.get((src_lang, tgt_lang))
