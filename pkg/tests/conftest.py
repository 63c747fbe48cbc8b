from pytest import fixture

from tests.utils import PARAGRAPHS, TITLES, make_html, write_manifest


@fixture
def article_id():
    return 'S0102-311X2016000100001'


@fixture
def titles():
    from sciparallel.models import LanguageTag
    return {LanguageTag(lang): title for lang, title in TITLES.items()}


@fixture
def metadata(article_id, titles):
    from sciparallel.models import ArticleMetadata
    return ArticleMetadata(scielo_id=article_id,
                           journal='Revista de Saúde Pública',
                           subject_area='Health Sciences',
                           license='CC-BY-4.0',
                           doi='10.1590/S0102-311X2016000100001',
                           authors=['Silva, A.', 'Souza, B.'],
                           titles=titles)


@fixture
def metadata_no_doi(metadata):
    import attr
    return attr.evolve(metadata, doi=None)


@fixture
def bodies():
    from sciparallel.models import LanguageTag
    return {LanguageTag(lang): make_html(lang) for lang in PARAGRAPHS}


@fixture
def article_record(metadata, bodies):
    from sciparallel.models import ArticleRecord
    return ArticleRecord(metadata=metadata, bodies=bodies)


@fixture
def documents(bodies):
    from sciparallel.docparse import parse_html
    return {lang: parse_html(markup, lang) for lang, markup in bodies.items()}


@fixture
def en_pt_alignment(documents, article_id):
    from sciparallel.align import align_article
    from sciparallel.docparse import check_compatibility
    from sciparallel.models import LanguageTag
    en, pt = documents[LanguageTag.en], documents[LanguageTag.pt]
    return align_article(en, pt, check_compatibility(en, pt),
                         article_id=article_id)


@fixture
def pair(article_id):
    from sciparallel.models import AlignedPair, SentenceRef
    return AlignedPair(
        src_lang='en', tgt_lang='pt',
        src_text='Cases were grouped by month and by municipality.',
        tgt_text='Os casos foram agrupados por mês e por município.',
        article_id=article_id, score=0.8125, provenance='1-1',
        src_refs=[SentenceRef(article_id, 'en', 1, 0, 1)],
        tgt_refs=[SentenceRef(article_id, 'pt', 1, 0, 1)])


@fixture
def trilingual_unit(article_id):
    from sciparallel.models import SentenceRef, TrilingualUnit
    return TrilingualUnit(
        texts={'en': 'Cases were grouped by month and by municipality.',
               'pt': 'Os casos foram agrupados por mês e por município.',
               'es': 'Los casos fueron agrupados por mes y por municipio.'},
        article_id=article_id, pivot='en',
        pivot_refs=[SentenceRef(article_id, 'en', 1, 0, 1)])


@fixture
def profiles():
    from sciparallel.langid import default_profiles
    return default_profiles()


@fixture
def manifest(tmp_path):
    """Three articles: trilingual, bilingual en/pt and a No-Derivatives
    one that ingest must reject."""
    return write_manifest(tmp_path, [
        ('S0001', 'CC-BY-4.0', '10.1590/s0001',
         {lang: make_html(lang) for lang in ('en', 'pt', 'es')}),
        ('S0002', 'CC-BY-NC-4.0', None,
         {lang: make_html(lang) for lang in ('en', 'pt')}),
        ('S0003', 'CC-BY-NC-ND-4.0', '10.1590/s0003',
         {lang: make_html(lang) for lang in ('en', 'es')}),
    ])


@fixture
def pipeline_config(tmp_path):
    from sciparallel.config import PipelineConfig
    return PipelineConfig(out=tmp_path / 'out')
