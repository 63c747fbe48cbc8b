from pytest import fixture, mark, raises

from tests.utils import make_sentences


@fixture
def defect_alignment(article_id):
    """One clean bead plus one bead per defect."""
    from sciparallel.models import Bead, DocumentAlignment
    src = make_sentences([
        'Cases were grouped by month and by municipality.',
        'Ab',
        'The results were significant.',
        'Data were obtained from the national notification system.',
    ], article_id=article_id)
    tgt = make_sentences([
        'Os casos foram agrupados por mês e por município.',
        'Sim.',
        'The results were significant.',
        'Uma frase sem correspondente.',
        'Os dados foram obtidos do sistema nacional de notificação.',
    ], lang='pt', article_id=article_id)
    beads = [Bead(kind='1-1', src=[0], tgt=[0], score=0.9, lexical=True),
             Bead(kind='1-1', src=[1], tgt=[1], score=0.5, lexical=True),
             Bead(kind='1-1', src=[2], tgt=[2], score=0.8, lexical=True),
             Bead(kind='0-1', src=[], tgt=[3]),
             Bead(kind='1-1', src=[3], tgt=[4], score=0.1, lexical=True)]
    return DocumentAlignment(article_id=article_id, src_lang='en',
                             tgt_lang='pt', src_sents=src, tgt_sents=tgt,
                             beads=beads)


def _pair(src_text, tgt_text, src_lang='en', tgt_lang='pt'):
    from sciparallel.models import AlignedPair
    return AlignedPair(src_lang=src_lang, tgt_lang=tgt_lang,
                       src_text=src_text, tgt_text=tgt_text,
                       article_id='A1')


def test_drop_unaligned():
    from sciparallel.filters import drop_unaligned
    from sciparallel.models import Bead
    one_one = Bead(kind='1-1', src=[0], tgt=[0])
    inserted = Bead(kind='0-1', src=[], tgt=[1])
    last = Bead(kind='1-1', src=[1], tgt=[2])
    assert drop_unaligned([one_one, inserted, last]) == [one_one, last]
    assert drop_unaligned([one_one, last]) == [one_one, last]
    assert drop_unaligned([Bead(kind='1-0', src=[0], tgt=[]),
                           Bead(kind='1-0', src=[1], tgt=[])]) == []


@mark.parametrize('src_text,tgt_text,kept', [
    ('ab', 'abc', False),
    ('abc', 'abc', True),
    ('a b', 'abc', False),
    ('abc', 'x  y', False),
])
def test_drop_short(src_text, tgt_text, kept):
    from sciparallel.filters import drop_short
    pair = _pair(src_text, tgt_text)
    assert drop_short([pair]) == ([pair] if kept else [])


def test_drop_short_custom_minimum():
    from sciparallel.filters import drop_short
    pairs = [_pair('abcd', 'abcde'), _pair('abcde', 'abcdef')]
    assert drop_short(pairs, min_chars=5) == pairs[1:]
    assert drop_short(pairs, min_chars=0) == pairs


def test_drop_same_language(profiles):
    from sciparallel.filters import drop_same_language
    english = _pair('The results were significant.',
                    'The results were significant.')
    trilingual = _pair(
        'Among its objectives, it aims to defend the interests of society '
        'and Nursing in the context of Public Policies.',
        'Entre sus objetivos está defender los intereses de la sociedad y '
        'de la Enfermería en el contexto de las Políticas Públicas.',
        tgt_lang='es')
    digits = _pair('2015 2016', '2015 2016')
    kept, dropped = drop_same_language([english, trilingual, digits],
                                       profiles)
    assert kept == [trilingual, digits]
    assert dropped == [english]


def test_same_language_needs_confidence(profiles):
    from sciparallel.filters import is_same_language
    english = _pair('The results were significant.',
                    'The results were significant.')
    assert is_same_language(english, profiles)
    assert not is_same_language(english, profiles,
                                margin_threshold=float('inf'))
    assert not is_same_language(english, profiles[:1])


def test_run_filters_counts_every_defect(defect_alignment, profiles):
    from sciparallel.filters import FilterConfig, run_filters
    pairs, report = run_filters(defect_alignment,
                                FilterConfig(min_pair_score=0.3), profiles)
    assert [pair.src_text for pair in pairs] == [
        'Cases were grouped by month and by municipality.']
    assert report.to_dict() == {
        'input': 5, 'dropped_unaligned': 1, 'dropped_low_score': 1,
        'dropped_short': 1, 'dropped_same_language': 1, 'output': 1}


def test_run_filters_without_score_gate(defect_alignment, profiles):
    from sciparallel.filters import run_filters
    pairs, report = run_filters([defect_alignment], profiles=profiles)
    assert report.dropped_low_score == 0
    assert report.output == len(pairs) == 2
    assert pairs[1].score == 0.1


def test_filters_keep_text_and_are_idempotent(defect_alignment, profiles):
    from sciparallel.align import bead_to_pair
    from sciparallel.filters import FilterReport, filter_pairs, run_filters
    pairs, _ = run_filters(defect_alignment, profiles=profiles)
    released = [bead_to_pair(defect_alignment, bead)
                for bead in defect_alignment.beads if bead.src and bead.tgt]
    assert all(pair in released for pair in pairs)
    again, report = filter_pairs(pairs, profiles=profiles)
    assert again == pairs
    assert report == FilterReport(input=len(pairs), output=len(pairs))


def test_run_filters_empty(profiles):
    from sciparallel.filters import FilterReport, run_filters
    assert run_filters([], profiles=profiles) == ([], FilterReport())


def test_run_filters_clean_input(en_pt_alignment, profiles):
    from sciparallel.filters import FilterConfig, run_filters
    pairs, report = run_filters(en_pt_alignment, FilterConfig(), profiles)
    assert report.dropped == 0
    assert report.input == len(en_pt_alignment.beads) == len(pairs)


def test_filter_report():
    from sciparallel.exceptions import ValidationError
    from sciparallel.filters import FilterReport
    first = FilterReport(input=3, dropped_short=1, output=2)
    second = FilterReport(input=2, dropped_unaligned=2)
    total = first + second
    assert (total.input, total.dropped, total.output) == (5, 3, 2)
    with raises(ValidationError):
        FilterReport(input=3, output=1)


@mark.parametrize('overrides', [{'min_chars': -1},
                                {'margin_threshold': -0.1}])
def test_filter_config_rejects(overrides):
    from sciparallel.exceptions import ValidationError
    from sciparallel.filters import FilterConfig
    with raises(ValidationError):
        FilterConfig(**overrides)
