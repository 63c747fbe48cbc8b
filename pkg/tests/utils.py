import string


PARAGRAPHS = {
    'en': [
        'Dengue is a viral disease transmitted by mosquitoes of the genus '
        'Aedes. The number of reported cases has grown in the last decade.',
        'This study describes the incidence of dengue in three Brazilian '
        'cities. We also discuss the role of climate in the spread of the '
        'disease.',
        'Data were obtained from the national notification system between '
        '2010 and 2015. Cases were grouped by month and by municipality.',
        'Statistical analysis was carried out with generalized linear '
        'models. The significance level adopted was five percent.',
    ],
    'pt': [
        'A dengue é uma doença viral transmitida por mosquitos do gênero '
        'Aedes. O número de casos notificados cresceu na última década.',
        'Este estudo descreve a incidência da dengue em três cidades '
        'brasileiras. Também discutimos o papel do clima na disseminação '
        'da doença.',
        'Os dados foram obtidos do sistema nacional de notificação entre '
        '2010 e 2015. Os casos foram agrupados por mês e por município.',
        'A análise estatística foi realizada com modelos lineares '
        'generalizados. O nível de significância adotado foi de cinco por '
        'cento.',
    ],
    'es': [
        'El dengue es una enfermedad viral transmitida por mosquitos del '
        'género Aedes. El número de casos notificados creció en la última '
        'década.',
        'Este estudio describe la incidencia del dengue en tres ciudades '
        'brasileñas. También discutimos el papel del clima en la '
        'propagación de la enfermedad.',
        'Los datos fueron obtenidos del sistema nacional de notificación '
        'entre 2010 y 2015. Los casos fueron agrupados por mes y por '
        'municipio.',
        'El análisis estadístico fue realizado con modelos lineales '
        'generalizados. El nivel de significancia adoptado fue de cinco '
        'por ciento.',
    ],
}

HEADINGS = {
    'en': ['Introduction', 'Methods'],
    'pt': ['Introdução', 'Métodos'],
    'es': ['Introducción', 'Métodos'],
}

TITLES = {
    'en': 'Dengue incidence in Brazilian cities',
    'pt': 'Incidência de dengue em cidades brasileiras',
    'es': 'Incidencia del dengue en ciudades brasileñas',
}


def make_html(lang, title=None, extra=''):
    """Two-section article markup in :attr:`lang` with a figure, a
    citation and a reference list that parsing must drop.
    """
    paragraphs = PARAGRAPHS[lang]
    headings = HEADINGS[lang]
    return (
        '<html><head><title>{title}</title>'
        '<style>p {{ color: red; }}</style></head><body>'
        '<h2>{h0}</h2><p>{p0}<sup>1</sup></p><p>{p1}</p>'
        '<figure><img src="f1.png"/><figcaption>Figure 1</figcaption>'
        '</figure>'
        '<h2>{h1}</h2><p>{p2}</p><p>{p3}</p>{extra}'
        '<div class="ref-list"><p>Silva A. Dengue. 2010.</p></div>'
        '</body></html>').format(title=title or TITLES[lang],
                                 h0=headings[0], h1=headings[1],
                                 p0=paragraphs[0], p1=paragraphs[1],
                                 p2=paragraphs[2], p3=paragraphs[3],
                                 extra=extra)


def make_flat_html(lang):
    return '<html><body>{}</body></html>'.format(
        ''.join('<p>{}</p>'.format(p) for p in PARAGRAPHS[lang]))


def make_sentences(texts, lang='en', article_id='A1', section=0,
                   paragraph=0):
    from sciparallel.models import Sentence, SentenceRef
    return [Sentence(text=text,
                     ref=SentenceRef(article_id=article_id, lang=lang,
                                     section=section, paragraph=paragraph,
                                     index=index))
            for index, text in enumerate(texts)]


def write_manifest(directory, rows):
    """Write html files and a manifest for :attr:`rows` of
    ``(scielo_id, license, doi, {lang: markup})``.
    """
    lines = ['\t'.join(['scielo_id', 'license', 'journal', 'subject_area',
                        'doi', 'authors', 'languages'])]
    for scielo_id, license, doi, bodies in rows:
        cells = [scielo_id, license, 'Revista de Saúde Pública',
                 'Health Sciences', doi or '', 'Silva, A.; Souza, B.']
        for lang, markup in sorted(bodies.items()):
            name = '{}_{}.html'.format(scielo_id, lang)
            (directory / name).write_text(markup, encoding='utf-8')
            cells.append('{}:{}:{}'.format(lang, name, TITLES[lang]))
        lines.append('\t'.join(cells))
    path = directory / 'manifest.tsv'
    path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
    return path


###################
# Alignment oracle #
###################
def _bead_sequences(n, m):
    from sciparallel.models import BeadKind
    if n == 0 and m == 0:
        yield ()
        return
    for kind in BeadKind:
        a, b = kind.src_count, kind.tgt_count
        if a <= n and b <= m:
            for rest in _bead_sequences(n - a, m - b):
                yield (kind,) + rest


def brute_force_alignment(src_lens, tgt_lens, cost, eps=1e-9):
    """Enumerate every bead sequence over the given sentence lengths.

    Args:
        cost (callable): ``cost(kind, src_chars, tgt_chars)``

    Returns:
        (float, list of (kind, src positions, tgt positions)): the
        minimum cost and the sequence chosen by the tie-break (more 1-1
        beads, then earlier bead kinds)
    """
    from sciparallel.models import BeadKind
    best = None
    for kinds in _bead_sequences(len(src_lens), len(tgt_lens)):
        total, i, j = 0.0, 0, 0
        for kind in kinds:
            a, b = kind.src_count, kind.tgt_count
            total += cost(kind, sum(src_lens[i:i + a]),
                          sum(tgt_lens[j:j + b]))
            i, j = i + a, j + b
        ones = sum(1 for kind in kinds if kind is BeadKind.one_one)
        ranks = tuple(kind.rank for kind in kinds)
        if best is None or total < best[0] - eps or (
                total <= best[0] + eps and
                (ones, [-r for r in ranks]) > (best[1],
                                               [-r for r in best[2]])):
            best = (total, ones, ranks, kinds)
    total, _, _, kinds = best
    sequence, i, j = [], 0, 0
    for kind in kinds:
        a, b = kind.src_count, kind.tgt_count
        sequence.append((kind, tuple(range(i, i + a)),
                         tuple(range(j, j + b))))
        i, j = i + a, j + b
    return total, sequence


def random_text(rng, length):
    letters = string.ascii_lowercase + '     '
    text = ''.join(rng.choice(letters) for _ in range(length)).strip()
    return text or 'x'


#######################
# Synthetic documents #
#######################
def _word(rng, low=3, high=9):
    consonants, vowels = 'bcdfghjklmnprstvz', 'aeiou'
    return ''.join(rng.choice(consonants) + rng.choice(vowels)
                   for _ in range(rng.randint(low, high) // 2 + 1))


def make_vocabulary(rng, size):
    """``size`` distinct (source word, target word) pairs."""
    src_words, tgt_words = set(), set()
    pairs = []
    while len(pairs) < size:
        src, tgt = _word(rng), _word(rng)
        if src in src_words or tgt in tgt_words:
            continue
        src_words.add(src)
        tgt_words.add(tgt)
        pairs.append((src, tgt))
    return pairs


def _sentence(words):
    text = ' '.join(words)
    return text[0].upper() + text[1:] + '.'


def make_parallel_pair(rng, vocabulary, jitter=0.2, low=8, high=20):
    """One translated sentence pair; the target length is scaled by a
    random factor within ``1 ± jitter`` using untranslated fillers or by
    dropping trailing words.
    """
    chosen = [rng.choice(vocabulary) for _ in range(rng.randint(low, high))]
    src_words = [src for src, _ in chosen]
    tgt_words = [tgt for _, tgt in chosen]
    goal = len(' '.join(tgt_words)) * rng.uniform(1 - jitter, 1 + jitter)
    while len(' '.join(tgt_words)) < goal - 4:
        tgt_words.append(_word(rng, 2, 4) + 'q')
    while len(tgt_words) > 3 and len(' '.join(tgt_words)) > goal + 4:
        tgt_words.pop()
    return _sentence(src_words), _sentence(tgt_words)


def make_parallel_document(rng, n_sents=50, vocabulary_size=120,
                           jitter=0.2, deletion_rate=0.0, merge_rate=0.0):
    """A synthetic parallel document with known 1-1 links.

    Edits never touch neighbouring positions: a deleted sentence loses
    its counterpart on one side, a merge joins two consecutive target
    sentences into one.

    Returns:
        dict: ``src`` and ``tgt`` sentence texts, ``links`` (set of
        surviving true 1-1 links) and ``near_deletion`` (links next to a
        deleted sentence)
    """
    vocabulary = make_vocabulary(rng, vocabulary_size)
    pairs = [make_parallel_pair(rng, vocabulary, jitter)
             for _ in range(n_sents)]
    src, tgt = [], []
    links, near_deletion = set(), set()
    last_edit = -3
    position = 0
    deleted_before = False
    while position < len(pairs):
        src_text, tgt_text = pairs[position]
        roll = rng.random()
        editable = position - last_edit > 2 and 0 < position < n_sents - 2
        if editable and roll < deletion_rate:
            if rng.random() < 0.5:
                src.append(src_text)
            else:
                tgt.append(tgt_text)
            if links:
                near_deletion.add(max(links))
            deleted_before = True
            last_edit = position
            position += 1
            continue
        if editable and roll < deletion_rate + merge_rate:
            next_src, next_tgt = pairs[position + 1]
            src.extend([src_text, next_src])
            tgt.append(tgt_text[:-1] + ', ' + next_tgt[0].lower() +
                       next_tgt[1:])
            last_edit = position + 1
            position += 2
            continue
        link = (len(src), len(tgt))
        links.add(link)
        if deleted_before:
            near_deletion.add(link)
            deleted_before = False
        src.append(src_text)
        tgt.append(tgt_text)
        position += 1
    return {'src': src, 'tgt': tgt, 'links': links,
            'near_deletion': near_deletion}


def one_one_links(beads):
    from sciparallel.models import BeadKind
    return {(bead.src[0], bead.tgt[0]) for bead in beads
            if bead.kind is BeadKind.one_one}
