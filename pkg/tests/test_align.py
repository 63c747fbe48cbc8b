import math
import random
from functools import lru_cache

import attr

from pytest import fixture, mark, raises

from tests.utils import (
    brute_force_alignment,
    make_parallel_document,
    make_sentences,
    one_one_links,
)


def _shape(beads):
    return [(bead.kind, bead.src, bead.tgt) for bead in beads]


def _kinds(beads):
    return [bead.kind.value for bead in beads]


@fixture
def lexical_dictionary():
    from sciparallel.dictionary import Dictionary, DictionaryEntry
    return Dictionary(entries={
        ('gato', 'cat'): DictionaryEntry(count=5, dice=1.0),
        ('casa', 'house'): DictionaryEntry(count=5, dice=1.0),
        ('azul', 'blue'): DictionaryEntry(count=5, dice=1.0),
    })


def test_aligner_config_defaults():
    from sciparallel.align import AlignerConfig
    from sciparallel.models import BeadKind
    cfg = AlignerConfig()
    assert cfg.bead_priors[BeadKind.one_one] == 0.89
    assert cfg.length_variance == 6.8
    assert cfg.char_ratio is None
    assert (cfg.dict_weight, cfg.length_weight) == (0.7, 0.3)
    assert (cfg.dict_min_count, cfg.dict_min_dice) == (2, 0.2)
    assert (cfg.chunk_limit, cfg.min_pair_score) == (5000, 0.3)
    assert AlignerConfig(char_ratio='estimate-from-input').char_ratio is None
    assert AlignerConfig(char_ratio='1.1').char_ratio == 1.1


@mark.parametrize('overrides', [
    {'bead_priors': {'1-1': 0.89}},
    {'bead_priors': {'1-1': 0.9, '1-0': 0.1, '0-1': 0.1, '2-1': 0.1,
                     '1-2': 0.1, '2-2': 0.1}},
    {'bead_priors': {'1-1': 0.5, '1-0': 0.0, '0-1': 0.1, '2-1': 0.1,
                     '1-2': 0.1, '2-2': 0.1}},
    {'dict_weight': 0.5},
    {'chunk_limit': 99},
    {'dict_min_dice': 0},
    {'char_ratio': -1},
    {'length_variance': 0},
])
def test_aligner_config_rejects(overrides):
    from sciparallel.align import AlignerConfig
    from sciparallel.exceptions import ValidationError
    with raises(ValidationError):
        AlignerConfig(**overrides)


def test_length_cost_examples():
    from sciparallel.align import length_cost
    equal = length_cost('1-1', 100, 100)
    assert abs(equal - (-math.log(0.89))) < 1e-9
    assert abs(equal - 0.1165) < 1e-4
    assert length_cost('1-1', 100, 300) > equal
    for src_len, tgt_len in [(0, 0), (10, 0), (40, 200)]:
        assert length_cost('1-0', src_len, tgt_len) >= -math.log(0.0099)


def test_length_cost_uses_ratio():
    from sciparallel.align import AlignerConfig, length_cost
    cfg = AlignerConfig(char_ratio=1.2)
    assert length_cost('1-1', 100, 120, cfg) < length_cost('1-1', 100, 100,
                                                           cfg)
    assert length_cost('1-1', 100, 100, cfg, char_ratio=1.0) == \
        length_cost('1-1', 100, 100)


def test_length_cost_errors():
    from sciparallel.align import length_cost
    from sciparallel.exceptions import InvalidBeadError, ValidationError
    with raises(InvalidBeadError):
        length_cost('3-1', 10, 10)
    with raises(ValidationError):
        length_cost('1-1', -1, 10)


def test_estimate_char_ratio():
    from sciparallel.align import estimate_char_ratio
    assert estimate_char_ratio(['aaaa', 'aaaa'], ['aaaaaaaaaa']) == 1.25
    assert estimate_char_ratio([], ['abc']) == 1.0


def test_band_limits():
    from sciparallel.align import band_limits
    assert band_limits(0, 7, 20) == ([0], [7])
    lows, highs = band_limits(10, 10, 2)
    assert (lows[5], highs[5]) == (3, 7)
    assert (lows[0], highs[10]) == (0, 10)
    lows, highs = band_limits(4, 40, 2)
    assert (lows[0], highs[0]) == (0, 27)


def test_align_lengths_empty():
    from sciparallel.align import align_lengths
    assert align_lengths([], []) == []
    assert _kinds(align_lengths(['abc'], [])) == ['1-0']
    assert _kinds(align_lengths([], ['abc', 'de'])) == ['0-1', '0-1']


def test_align_lengths_identical_lengths():
    from sciparallel.align import align_lengths
    src = ['x' * length for length in (40, 90, 25, 60)]
    beads = align_lengths(src, ['y' * len(text) for text in src])
    assert _kinds(beads) == ['1-1'] * 4
    assert all(not bead.lexical and 0 < bead.score <= 1 for bead in beads)


def test_align_lengths_finds_split_sentence():
    from sciparallel.align import align_lengths
    src = ['x' * 100, 'x' * 200, 'x' * 100]
    tgt = ['y' * 100] * 4
    beads = align_lengths(src, tgt)
    assert _kinds(beads) == ['1-1', '1-2', '1-1']
    assert beads[1].src == (1,) and beads[1].tgt == (1, 2)


def _oracle_instances(seed, count, max_len):
    rng = random.Random(seed)
    for _ in range(count):
        n, m = rng.randint(0, max_len), rng.randint(0, max_len)
        yield ([rng.randint(1, 120) for _ in range(n)],
               [rng.randint(1, 120) for _ in range(m)])


def _check_oracle(src_lens, tgt_lens):
    from sciparallel.align import (
        AlignerConfig,
        align_lengths,
        estimate_char_ratio,
        length_cost,
        realign,
    )
    from sciparallel.dictionary import EMPTY_DICTIONARY
    src = ['x' * length for length in src_lens]
    tgt = ['x' * length for length in tgt_lens]
    cfg = AlignerConfig()
    ratio = estimate_char_ratio(src, tgt)

    @lru_cache(maxsize=None)
    def cost(kind, src_chars, tgt_chars):
        return length_cost(kind, src_chars, tgt_chars, cfg, char_ratio=ratio)

    _, expected = brute_force_alignment(src_lens, tgt_lens, cost)
    assert _shape(align_lengths(src, tgt, cfg)) == expected
    assert _shape(realign(src, tgt, EMPTY_DICTIONARY, cfg)) == expected


@mark.parametrize('seed', range(5))
def test_oracle_small(seed):
    for src_lens, tgt_lens in _oracle_instances(seed, 40, 4):
        _check_oracle(src_lens, tgt_lens)


@mark.slow
@mark.parametrize('seed', range(10))
def test_oracle_equivalence(seed):
    for src_lens, tgt_lens in _oracle_instances(100 + seed, 100, 6):
        _check_oracle(src_lens, tgt_lens)


def test_oracle_tie_break_prefers_one_one():
    from sciparallel.align import align_lengths
    beads = align_lengths(['x' * 30] * 2, ['x' * 30] * 2)
    assert _kinds(beads) == ['1-1', '1-1']
    # zero costs: every sequence ties
    _, expected = brute_force_alignment(
        [30, 30], [30, 30], lambda kind, s, t: 0.0)
    assert [kind.value for kind, _, _ in expected] == ['1-1', '1-1']


def test_combined_score_examples(lexical_dictionary):
    from sciparallel.align import combined_score
    from sciparallel.dictionary import EMPTY_DICTIONARY
    full = combined_score('gato azul', 'blue cat.', lexical_dictionary)
    assert abs(full - 1.0) < 1e-12
    assert abs(combined_score('gato azul', 'blue cat.', EMPTY_DICTIONARY) -
               0.3) < 1e-12
    half = combined_score('gato azul', 'cat dogs.', lexical_dictionary)
    assert abs(half - 0.65) < 1e-12
    assert combined_score('...', '!', lexical_dictionary) == 0.0


def test_combined_score_accepts_groups(lexical_dictionary):
    from sciparallel.align import combined_score
    merged = combined_score(['gato', 'azul'], 'blue cat', lexical_dictionary)
    joined = combined_score('gato azul', 'blue cat', lexical_dictionary)
    assert abs(merged - joined) < 0.05
    sentences = make_sentences(['gato azul'])
    assert combined_score(sentences[0], 'blue cat.', lexical_dictionary) == \
        combined_score('gato azul', 'blue cat.', lexical_dictionary)


def test_combined_score_bounds(lexical_dictionary):
    from sciparallel.align import combined_score
    from tests.utils import random_text
    rng = random.Random(5)
    words = ['gato', 'casa', 'azul', 'cat', 'house', 'blue', 'xx']
    for _ in range(300):
        src = ' '.join(rng.choice(words) for _ in range(rng.randint(0, 6)))
        tgt = ' '.join(rng.choice(words) for _ in range(rng.randint(0, 6)))
        if rng.random() < 0.3:
            tgt = random_text(rng, rng.randint(1, 80))
        assert 0.0 <= combined_score(src, tgt, lexical_dictionary) <= 1.0


def test_realign_prefers_dictionary_evidence(lexical_dictionary):
    from sciparallel.align import align_lengths, realign
    src = [('gato ' * 10).strip(), ('casa ' * 10).strip()]
    tgt = [('cat ' * 4).strip(), ('house ' * 14).strip()]
    assert _kinds(align_lengths(src, tgt)) == ['2-2']
    beads = realign(src, tgt, lexical_dictionary)
    assert _kinds(beads) == ['1-1', '1-1']
    assert all(bead.lexical for bead in beads)


def test_realign_empty_inputs(lexical_dictionary):
    from sciparallel.align import realign
    assert realign([], [], lexical_dictionary) == []


def test_realign_empty_dictionary_is_length_pass():
    from sciparallel.align import align_lengths, realign
    from sciparallel.dictionary import EMPTY_DICTIONARY
    rng = random.Random(2)
    document = make_parallel_document(rng, n_sents=30, deletion_rate=0.05,
                                      merge_rate=0.05)
    src, tgt = document['src'], document['tgt']
    assert realign(src, tgt, EMPTY_DICTIONARY) == align_lengths(src, tgt)


@mark.parametrize('seed', range(4))
def test_skip_first_pass(seed, mocker):
    import sciparallel.align
    from sciparallel.align import align_groups, realign, two_pass_align
    rng = random.Random(seed)
    document = make_parallel_document(rng, n_sents=40, deletion_rate=0.05,
                                      merge_rate=0.05)
    src, tgt = document['src'], document['tgt']
    beads, dictionary = two_pass_align(src, tgt)
    assert len(dictionary) > 0
    assert realign(src, tgt, dictionary) == beads

    spy = mocker.spy(sciparallel.align, 'align_lengths')
    aligned, used = align_groups([(src, tgt)], dictionary=dictionary)
    assert used is dictionary
    assert aligned[0] == beads
    spy.assert_not_called()


def test_two_pass_align_is_legal():
    from sciparallel.align import two_pass_align
    from sciparallel.models import is_legal_bead_sequence
    rng = random.Random(9)
    for _ in range(10):
        document = make_parallel_document(rng, n_sents=rng.randint(5, 60),
                                          deletion_rate=0.1, merge_rate=0.1)
        beads, _ = two_pass_align(document['src'], document['tgt'])
        assert is_legal_bead_sequence(beads, len(document['src']),
                                      len(document['tgt']))


def test_build_dictionary_order_independent():
    from sciparallel.align import AlignerConfig, two_pass_align
    from sciparallel.dictionary import build_dictionary
    rng = random.Random(4)
    document = make_parallel_document(rng, n_sents=40)
    src, tgt = document['src'], document['tgt']
    beads, _ = two_pass_align(src, tgt)
    cfg = AlignerConfig()
    shuffled = list(beads)
    rng.shuffle(shuffled)
    assert build_dictionary(shuffled, src, tgt, cfg) == \
        build_dictionary(beads, src, tgt, cfg)


def test_chunk_align_below_limit(lexical_dictionary):
    from sciparallel.align import chunk_align, realign, two_pass_align
    rng = random.Random(6)
    document = make_parallel_document(rng, n_sents=30)
    src, tgt = document['src'], document['tgt']
    assert chunk_align(src, tgt) == two_pass_align(src, tgt)[0]
    assert chunk_align(src, tgt, dictionary=lexical_dictionary) == \
        realign(src, tgt, lexical_dictionary)


def test_chunk_align_hard_split(caplog):
    import logging
    from sciparallel.align import AlignerConfig, chunk_align
    from sciparallel.models import is_legal_bead_sequence
    src = ['x' * 10] * 300
    tgt = ['y' * 400] * 300
    cfg = AlignerConfig(char_ratio=1.0, chunk_limit=100)
    with caplog.at_level(logging.WARNING, logger='sciparallel.align'):
        beads = chunk_align(src, tgt, cfg)
    assert 'hard split' in caplog.text
    assert is_legal_bead_sequence(beads, 300, 300)


def test_chunk_align_splits_at_anchors():
    from sciparallel.align import AlignerConfig, chunk_align
    from sciparallel.models import is_legal_bead_sequence
    rng = random.Random(12)
    document = make_parallel_document(rng, n_sents=450, jitter=0.1)
    src, tgt = document['src'], document['tgt']
    beads = chunk_align(src, tgt, AlignerConfig(chunk_limit=100))
    assert is_legal_bead_sequence(beads, len(src), len(tgt))
    links = document['links']
    assert len(links & one_one_links(beads)) >= 0.99 * len(links)


@mark.slow
def test_chunk_align_matches_unchunked():
    from sciparallel.align import AlignerConfig, chunk_align, two_pass_align
    from sciparallel.models import is_legal_bead_sequence
    rng = random.Random(2024)
    document = make_parallel_document(rng, n_sents=12000)
    src, tgt = document['src'], document['tgt']
    cfg = AlignerConfig()
    chunked = chunk_align(src, tgt, cfg)
    assert is_legal_bead_sequence(chunked, len(src), len(tgt))
    whole, _ = two_pass_align(src, tgt, attr.evolve(cfg, chunk_limit=20000))
    expected = one_one_links(whole)
    agreed = len(expected & one_one_links(chunked))
    assert agreed >= 0.99 * len(expected)


def _recovery(seed, documents, **rates):
    from sciparallel.align import two_pass_align
    rng = random.Random(seed)
    found = total = 0
    for _ in range(documents):
        document = make_parallel_document(rng, **rates)
        beads, _ = two_pass_align(document['src'], document['tgt'])
        truth = document['links'] - document['near_deletion']
        found += len(truth & one_one_links(beads))
        total += len(truth)
    return found, total


@mark.slow
def test_recovery_with_edits():
    found, total = _recovery(31, 200, deletion_rate=0.05, merge_rate=0.05)
    assert found >= 0.98 * total


@mark.slow
def test_recovery_low_noise():
    found, total = _recovery(32, 200)
    assert found == total


def test_recovery_sample():
    found, total = _recovery(33, 10, deletion_rate=0.05, merge_rate=0.05)
    assert found >= 0.95 * total


def _document(lang, paragraphs):
    from sciparallel.models import DocumentKind, Section, StructuredDocument
    return StructuredDocument(lang=lang, kind=DocumentKind.flat,
                              sections=[Section(paragraphs=paragraphs)])


PARALLEL_PARAGRAPHS = [
    'Alpha waves were measured twice. Results remained stable over time.',
    'Beta blockers reduce pressure. Patients reported fewer symptoms.',
]


def test_align_document_per_paragraph():
    from sciparallel.align import align_document
    from sciparallel.docparse import check_compatibility
    en = _document('en', PARALLEL_PARAGRAPHS)
    pt = _document('pt', PARALLEL_PARAGRAPHS)
    pairs = align_document(en, pt, check_compatibility(en, pt),
                           article_id='A1')
    assert [pair.src_text for pair in pairs] == [
        'Alpha waves were measured twice.',
        'Results remained stable over time.',
        'Beta blockers reduce pressure.', 'Patients reported fewer symptoms.']
    assert [pair.src_text for pair in pairs] == \
        [pair.tgt_text for pair in pairs]
    assert [pair.src_refs[0].paragraph for pair in pairs] == [0, 0, 1, 1]
    assert all(pair.provenance.value == '1-1' for pair in pairs)


def test_align_document_single_paragraph_matches_raw():
    from sciparallel.align import align_article, two_pass_align
    from sciparallel.docparse import check_compatibility
    text = ' '.join(PARALLEL_PARAGRAPHS)
    en, pt = _document('en', [text]), _document('pt', [text])
    alignment = align_article(en, pt, check_compatibility(en, pt),
                              article_id='A1')
    raw, _ = two_pass_align([s.text for s in alignment.src_sents],
                            [s.text for s in alignment.tgt_sents])
    assert list(alignment.beads) == raw


def test_align_document_incompatible():
    from sciparallel.align import align_article, align_document
    from sciparallel.docparse import check_compatibility
    from sciparallel.exceptions import IncompatibleStructureError
    from sciparallel.models import CompatibilityMode
    en = _document('en', PARALLEL_PARAGRAPHS)
    pt = _document('pt', [PARALLEL_PARAGRAPHS[0]])
    verdict = check_compatibility(en, pt)
    with raises(IncompatibleStructureError):
        align_document(en, pt, verdict, article_id='A1')
    alignment = align_article(en, pt, verdict, article_id='A1',
                              document_level=True)
    assert alignment.mode is CompatibilityMode.incompatible
    assert len(alignment.src_sents) == 4
    assert len(alignment.tgt_sents) == 2


def test_align_article_fixture(en_pt_alignment):
    from sciparallel.models import CompatibilityMode, is_legal_bead_sequence
    assert en_pt_alignment.mode is CompatibilityMode.structured
    assert len(en_pt_alignment.src_sents) == 8
    assert is_legal_bead_sequence(en_pt_alignment.beads,
                                  len(en_pt_alignment.src_sents),
                                  len(en_pt_alignment.tgt_sents))


def test_beads_to_pairs_gate():
    from sciparallel.align import beads_to_pairs, passes_score_gate
    from sciparallel.models import Bead, DocumentAlignment
    src = make_sentences(['One.', 'Two.', 'Three.', 'Four.', 'Five.'])
    tgt = make_sentences(['Um.', 'Dois e três.', 'Quatro.'], lang='pt')
    beads = [Bead(kind='1-1', src=[0], tgt=[0], score=0.1, lexical=True),
             Bead(kind='2-1', src=[1, 2], tgt=[1], score=0.1, lexical=True),
             Bead(kind='1-1', src=[3], tgt=[2], score=0.1),
             Bead(kind='1-0', src=[4], tgt=[], score=0.9)]
    alignment = DocumentAlignment(article_id='A1', src_lang='en',
                                  tgt_lang='pt', src_sents=src,
                                  tgt_sents=tgt, beads=beads)
    assert not passes_score_gate(beads[0], 0.3)
    assert passes_score_gate(beads[0], None)
    pairs = beads_to_pairs(alignment, 0.3)
    assert [(pair.src_text, pair.tgt_text) for pair in pairs] == [
        ('Two. Three.', 'Dois e três.'), ('Four.', 'Quatro.')]
    assert pairs[0].src_refs == (src[1].ref, src[2].ref)
    assert len(beads_to_pairs(alignment)) == 3


def test_paragraph_groups():
    from sciparallel.align import paragraph_groups
    from sciparallel.exceptions import IncompatibleStructureError
    from sciparallel.models import CompatibilityMode, CompatibilityVerdict
    src = [make_sentences(['A.']), make_sentences(['B.', 'C.'])]
    tgt = [make_sentences(['a.']), make_sentences(['b.'])]
    flat = CompatibilityVerdict(mode='flat', src_shape=(2,), tgt_shape=(2,))
    groups, mode = paragraph_groups(src, tgt, flat)
    assert mode is CompatibilityMode.flat
    assert [(len(s), len(t)) for s, t in groups] == [(1, 1), (2, 1)]

    incompatible = attr.evolve(flat, mode='incompatible', tgt_shape=(3,))
    with raises(IncompatibleStructureError):
        paragraph_groups(src, tgt, incompatible)
    groups, mode = paragraph_groups(src, tgt, incompatible,
                                    document_level=True)
    assert mode is CompatibilityMode.incompatible
    assert [(len(s), len(t)) for s, t in groups] == [(3, 2)]
