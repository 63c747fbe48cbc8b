import random
import string

from pytest import mark


@mark.parametrize('text,expected', [
    ('First sentence. Second one.', ['First sentence.', 'Second one.']),
    ('Dr. Silva arrived. He left.', ['Dr. Silva arrived.', 'He left.']),
    ('One sentence without terminal', ['One sentence without terminal']),
    ('J. Smith wrote it. Then he left!', ['J. Smith wrote it.',
                                         'Then he left!']),
    ('Silva et al. Reported it first.', ['Silva et al. Reported it first.']),
    ('See Fig. 2 for details. Done?', ['See Fig. 2 for details.', 'Done?']),
    ('Cases grew. 2015 was worse.', ['Cases grew.', '2015 was worse.']),
    ('It rose to 3.5 percent. it fell.', ['It rose to 3.5 percent. it fell.']),
    ('Really?! Yes.', ['Really?!', 'Yes.']),
    ('', []),
])
def test_split_sentences_en(text, expected):
    from sciparallel.segment import split_sentences
    assert split_sentences(text, 'en') == expected


@mark.parametrize('lang,text,expected', [
    ('pt', 'A Sra. Souza chegou. Ela saiu.', ['A Sra. Souza chegou.',
                                              'Ela saiu.']),
    ('es', 'Ver Fig. 3 abajo. El Dr. Pérez lo dijo.', [
        'Ver Fig. 3 abajo.', 'El Dr. Pérez lo dijo.']),
])
def test_split_sentences_other_languages(lang, text, expected):
    from sciparallel.segment import split_sentences
    assert split_sentences(text, lang) == expected


def test_split_sentences_custom_abbreviations():
    from sciparallel.segment import split_sentences
    text = 'Ask Prof. Lima. She knows.'
    assert split_sentences(text, 'en', abbreviations=['PROF.']) == [
        'Ask Prof. Lima.', 'She knows.']
    assert split_sentences(text, 'en', abbreviations=[]) == [
        'Ask Prof.', 'Lima.', 'She knows.']


def test_load_abbreviations(tmp_path):
    from sciparallel.segment import load_abbreviations
    shipped = load_abbreviations('en')
    assert {'dr.', 'fig.', 'et al.', 'e.g.', 'i.e.'} <= shipped
    assert 'pág.' in load_abbreviations('pt')

    (tmp_path / 'pt.txt').write_text('# comment\nXYZ.\n\n', encoding='utf-8')
    assert load_abbreviations('pt', tmp_path) == {'xyz.'}
    assert load_abbreviations('pt', tmp_path / 'pt.txt') == {'xyz.'}


@mark.parametrize('text,expected', [
    ('A (see (nested) text) b', 'A b'),
    ('Dengue (DENV) is endemic.', 'Dengue is endemic.'),
    ('unmatched ) and ( here', 'unmatched and here'),
    ('kept [1] brackets', 'kept [1] brackets'),
    ('(only)', ''),
])
def test_strip_parentheticals(text, expected):
    from sciparallel.segment import strip_parentheticals
    assert strip_parentheticals(text) == expected


def test_normalize_whitespace():
    from sciparallel.segment import normalize_whitespace
    assert normalize_whitespace('  a\nb\r\n  c\t d ') == 'a b c d'


def test_preprocess():
    from sciparallel.segment import preprocess
    assert preprocess('Dengue\n(DENV,\nserotype 2)  spreads.') == \
        'Dengue spreads.'


ALPHABET = string.ascii_letters + 'çãéí0123456789'


def _random_paragraph(rng):
    pieces = []
    for _ in range(rng.randint(0, 30)):
        roll = rng.random()
        if roll < 0.1:
            pieces.append(rng.choice(['Dr.', 'Fig.', 'et al.', 'e.g.', 'J.']))
        elif roll < 0.2:
            pieces.append(rng.choice(['(', ')', '(x)', '((a) b)', '[2]']))
        elif roll < 0.3:
            pieces.append(rng.choice(['.', '!', '?', '...', '\n', '\r\n']))
        else:
            word = ''.join(rng.choice(ALPHABET)
                           for _ in range(rng.randint(1, 8)))
            pieces.append(word + rng.choice(['', '', '.', ',', '?']))
    separators = [' ', '  ', '\n', '\t ']
    return ''.join(piece + rng.choice(separators) for piece in pieces)


def test_segmentation_properties():
    from sciparallel.segment import (
        normalize_whitespace,
        split_sentences,
        strip_parentheticals,
    )
    rng = random.Random(7)
    for _ in range(1000):
        paragraph = _random_paragraph(rng)
        normalized = normalize_whitespace(paragraph)
        assert normalize_whitespace(normalized) == normalized
        assert '  ' not in normalized
        assert '\n' not in normalized and '\r' not in normalized

        stripped = strip_parentheticals(normalized)
        assert strip_parentheticals(stripped) == stripped

        sentences = split_sentences(normalized, 'en')
        assert ''.join(''.join(sentences).split()) == \
            ''.join(normalized.split())
        assert ' '.join(sentences) == normalized
        assert all(sentence == sentence.strip() and sentence
                   for sentence in sentences)


def test_segment_document(documents, article_id):
    from sciparallel.models import LanguageTag
    from sciparallel.segment import segment_document
    groups = segment_document(documents[LanguageTag.en], article_id)
    assert [len(group) for group in groups] == [2, 2, 2, 2]
    refs = [sentence.ref for group in groups for sentence in group]
    assert [ref.position for ref in refs[::2]] == [
        (0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0)]
    assert refs[3].position == (0, 1, 1)
    assert all(ref.article_id == article_id for ref in refs)
    assert groups[0][1].text == ('The number of reported cases has grown '
                                 'in the last decade.')


def test_segment_document_keeps_emptied_paragraphs(article_id):
    from sciparallel.models import DocumentKind, Section, StructuredDocument
    from sciparallel.segment import segment_document
    document = StructuredDocument(
        lang='pt', kind=DocumentKind.flat,
        sections=[Section(paragraphs=['(Tabela 1)', 'Texto final.'])])
    groups = segment_document(document, article_id)
    assert [len(group) for group in groups] == [0, 1]
    assert groups[1][0].ref.paragraph == 1
    raw = segment_document(document, article_id, clean=False)
    assert raw[0][0].text == '(Tabela 1)'
