"""Command-line entry point: ``sciparallel <command> [options]``.

Exit status is 0 on success, 1 for invalid input or a domain error and
2 for I/O errors (missing or unreadable files).
"""

import argparse
import logging
import sys
from pathlib import Path

from sciparallel import __version__
from sciparallel.config import parse_pairs, resolve_config
from sciparallel.data_formats import pair_to_dict, unit_to_dict, write_jsonl
from sciparallel.evalkit import (
    DEFAULT_RATIOS,
    Verdict,
    bleu,
    export_parallel_text,
    read_lines,
    read_review_sheet,
    render_accuracy,
    review_accuracy,
    sample_for_review,
    split_corpus,
    write_review_sheet,
)
from sciparallel.exceptions import SciParallelError, ValidationError
from sciparallel.langid import detect, save_profile
from sciparallel.models import TrilingualUnit, pair_name
from sciparallel.pipeline import Pipeline, load_items


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def _common_options():
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group('global options')
    group.add_argument('--config', help='key=value configuration file')
    group.add_argument('-v', '--verbose', action='store_true',
                       help='log debug messages')
    group.add_argument('-q', '--quiet', action='store_true',
                       help='log warnings only, no progress bars')
    group.add_argument('--jobs', type=int, help='worker threads')
    group.add_argument('--out', help='output directory')
    group.add_argument('--store', help='corpus store (articles.jsonl)')
    group.add_argument('--seed', type=int, help='random seed')
    return parser


def _add_pair_option(parser, required=False, help_text=None):
    parser.add_argument('--pair', action='append', required=required,
                        help=help_text or 'language pair such as en-pt '
                        '(repeatable; defaults to the configured pairs)')


def build_parser():
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='sciparallel',
        description='Build sentence-aligned parallel corpora from '
                    'multilingual scientific articles.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s {}'.format(__version__))
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    def command(name, help_text):
        sub = commands.add_parser(name, parents=[common], help=help_text,
                                  description=help_text)
        sub.set_defaults(handler=HANDLERS[name])
        return sub

    sub = command('ingest', 'store the eligible articles of a manifest')
    sub.add_argument('--manifest', required=True)

    sub = command('parse', 'parse stored articles and check structure')
    _add_pair_option(sub)

    sub = command('align', 'align the parsed articles of language pairs')
    _add_pair_option(sub)
    sub.add_argument('--document-level', action='store_true', default=None,
                     help='align incompatible articles as a whole')
    sub.add_argument('--dictionary',
                     help='external dictionary; skips the first pass')

    sub = command('filter', 'clean alignments into released pairs')
    _add_pair_option(sub)

    sub = command('trilingual', 'join two pivot pair sets')
    _add_pair_option(sub)
    sub.add_argument('--pivot', help='shared language (default en)')

    sub = command('export-tmx', 'write pairs or trilingual units as TMX')
    target = sub.add_mutually_exclusive_group(required=True)
    target.add_argument('--pair')
    target.add_argument('--trilingual', action='store_true')
    sub.add_argument('--output', help='TMX file (default <out>/<name>.tmx)')

    sub = command('export-text', 'write pairs as two line-aligned files')
    source = sub.add_mutually_exclusive_group(required=True)
    source.add_argument('--pair')
    source.add_argument('--in', dest='input', help='.jsonl or .tmx pairs')
    sub.add_argument('--src-out')
    sub.add_argument('--tgt-out')

    sub = command('stats', 'count documents, sentences and tokens')
    sub.add_argument('--in', dest='inputs', action='append',
                     help='corpus file (repeatable; defaults to every '
                     'pair and trilingual file under --out)')
    sub.add_argument('--output', help='table file (default <out>/stats.tsv)')

    sub = command('split', 'shuffle a corpus into train/tune/test')
    sub.add_argument('--in', dest='input', required=True)
    sub.add_argument('--ratios', default=','.join(
        str(ratio) for ratio in DEFAULT_RATIOS))
    sub.add_argument('--split-dir',
                     help='output directory (default <out>/split)')

    sub = command('bleu', 'corpus BLEU of candidate against reference')
    sub.add_argument('--cand', required=True)
    sub.add_argument('--ref', required=True)
    sub.add_argument('--max-n', type=int, default=4)
    sub.add_argument('--lowercase', action='store_true')

    sub = command('detect-lang', 'identify the language of texts')
    sub.add_argument('texts', nargs='*')
    sub.add_argument('--file', help='one text per line')
    sub.add_argument('--save-profiles', metavar='DIR',
                     help='write the profiles in use to DIR')

    sub = command('review-sample', 'sample units for manual review')
    sub.add_argument('--set', dest='sets', action='append',
                     metavar='NAME=PATH',
                     help='corpus set (repeatable; defaults to every '
                     'pair and trilingual file under --out)')
    sub.add_argument('-n', '--per-set', type=int, default=100)
    sub.add_argument('--sheet', help='review TSV (default <out>/review.tsv)')
    sub.add_argument('--interactive', action='store_true',
                     help="prompt for a 'c'/'n' verdict per item")

    sub = command('review-score', 'accuracy per set of a reviewed sheet')
    sub.add_argument('--sheet', required=True)

    sub = command('run-all', 'run every stage from ingest to stats')
    sub.add_argument('--manifest', required=True)
    _add_pair_option(sub)
    sub.add_argument('--document-level', action='store_true', default=None)
    return parser


def configure_logging(args):
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def _flags(args):
    flags = {
        'out': args.out,
        'store': args.store,
        'jobs': args.jobs,
        'seed': args.seed,
        'document_level': getattr(args, 'document_level', None),
        'pivot': getattr(args, 'pivot', None),
    }
    pairs = getattr(args, 'pair', None)
    if isinstance(pairs, list):
        flags['pairs'] = ','.join(pairs)
    return flags


def make_pipeline(args):
    config = resolve_config(_flags(args), args.config)
    return Pipeline(config=config, progress=not args.quiet)


def _out(text=''):
    print(text, file=sys.stdout)


def cmd_ingest(args, pipeline):
    report = pipeline.ingest(args.manifest)
    _out('kept={}\trejected={}\terrors={}'.format(*report.counts))


def cmd_parse(args, pipeline):
    parsed = pipeline.parse()
    _out('parsed={}'.format(len(parsed)))


def cmd_align(args, pipeline):
    for pair in pipeline.config.pairs:
        result = pipeline.align(pair, args.dictionary)
        _out('{}\taligned={}\tskipped={}'.format(
            result.pair, len(result.alignments), len(result.skipped)))


def cmd_filter(args, pipeline):
    for pair in pipeline.config.pairs:
        _, report = pipeline.filter(pair)
        _out('{}\t{}'.format(pair_name(*pair), '\t'.join(
            '{}={}'.format(key, value)
            for key, value in report.to_dict().items())))


def cmd_trilingual(args, pipeline):
    units = pipeline.trilingual()
    _out('units={}'.format(len(units)))


def cmd_export_tmx(args, pipeline):
    pair = None if args.trilingual else parse_pairs(args.pair)[0]
    _out(pipeline.export_tmx(pair, args.output))


def cmd_export_text(args, pipeline):
    if args.input:
        pairs = load_items(args.input)
        stem = Path(args.input).with_suffix('')
    else:
        name = pair_name(*parse_pairs(args.pair)[0])
        pairs = load_items(pipeline.layout.pairs(name))
        stem = pipeline.config.out / name
    if pairs and isinstance(pairs[0], TrilingualUnit):
        raise ValidationError('export-text writes bilingual pairs only')
    if not pairs:
        raise ValidationError('Nothing to export')
    src_lang, tgt_lang = pairs[0].languages
    src_out = args.src_out or '{}.{}'.format(stem, src_lang.value)
    tgt_out = args.tgt_out or '{}.{}'.format(stem, tgt_lang.value)
    for path in export_parallel_text(pairs, src_out, tgt_out):
        _out(path)


def cmd_stats(args, pipeline):
    files = None
    if args.inputs:
        files = [(Path(path).stem, Path(path)) for path in args.inputs]
    for corpus in pipeline.stats(files, args.output):
        _out(corpus.render_row())


def _item_text(item, lang):
    if isinstance(item, TrilingualUnit):
        return item.texts[lang]
    return item.side(lang)[0]


def _item_languages(item):
    if isinstance(item, TrilingualUnit):
        return tuple(sorted(item.texts))
    return item.languages


def _parse_ratios(value):
    try:
        return tuple(float(part) for part in value.split(','))
    except ValueError:
        raise ValidationError("Ratios look like '0.85,0.05,0.1'. Given "
                              "'{}'".format(value)) from None


def cmd_split(args, pipeline):
    items = load_items(args.input)
    if not items:
        raise ValidationError("No units in '{}'".format(args.input))
    result = split_corpus(items, _parse_ratios(args.ratios),
                          pipeline.config.seed)
    directory = Path(args.split_dir or pipeline.config.out / 'split')
    directory.mkdir(parents=True, exist_ok=True)
    languages = _item_languages(items[0])
    to_dict = unit_to_dict if isinstance(items[0], TrilingualUnit) \
        else pair_to_dict
    for part, units in result.parts():
        write_jsonl(directory / '{}.jsonl'.format(part), units, to_dict)
        for lang in languages:
            path = directory / '{}.{}'.format(part, lang.value)
            with open(str(path), 'w', encoding='utf-8', newline='\n') as fp:
                fp.writelines(_item_text(unit, lang) + '\n'
                              for unit in units)
        _out('{}\t{}'.format(part, len(units)))


def cmd_bleu(args, pipeline):
    report = bleu(read_lines(args.cand), read_lines(args.ref),
                  max_n=args.max_n, lowercase=args.lowercase)
    _out(report.render())


def cmd_detect_lang(args, pipeline):
    profiles = pipeline.profiles()
    if args.save_profiles:
        directory = Path(args.save_profiles)
        directory.mkdir(parents=True, exist_ok=True)
        for profile in profiles:
            save_profile(profile, directory / '{}.profile'.format(
                profile.lang.value))
    texts = list(args.texts)
    if args.file:
        texts.extend(line for line in read_lines(args.file) if line.strip())
    for text in texts:
        lang, margin = detect(text, profiles)
        _out('{}\t{:.4f}'.format(lang.value, margin))


def _review_sets(args, pipeline):
    if not args.sets:
        return {name: load_items(path)
                for name, path in pipeline.corpus_files()}
    sets = {}
    for value in args.sets:
        name, sep, path = value.partition('=')
        if not sep or not name:
            raise ValidationError("Review sets look like NAME=PATH. Given "
                                  "'{}'".format(value))
        sets[name] = load_items(path)
    return sets


def _ask_verdicts(sheet, prompt=None):
    prompt = prompt or input
    verdicts = {}
    answers = {'c': Verdict.correct, 'n': Verdict.no_alignment}
    for position, item in enumerate(sheet.items, start=1):
        _out('[{}/{}] {}'.format(position, len(sheet.items), item.id))
        for text in item.texts:
            _out('  ' + text)
        answer = None
        while answer not in answers:
            try:
                answer = prompt('verdict (c = correct, n = no alignment): ')
            except EOFError:
                return verdicts
            answer = answer.strip().lower()
        verdicts[item.id] = answers[answer]
    return verdicts


def cmd_review_sample(args, pipeline):
    sheet = sample_for_review(_review_sets(args, pipeline), args.per_set,
                              pipeline.config.seed)
    if args.interactive:
        sheet = sheet.with_verdicts(_ask_verdicts(sheet))
    path = Path(args.sheet or pipeline.config.out / 'review.tsv')
    path.parent.mkdir(parents=True, exist_ok=True)
    write_review_sheet(sheet, path)
    _out(str(path))


def cmd_review_score(args, pipeline):
    accuracy = review_accuracy(read_review_sheet(args.sheet))
    for set_name, value in accuracy.items():
        _out('{}\t{}'.format(set_name, render_accuracy(value)))


def cmd_run_all(args, pipeline):
    summary = pipeline.run_all(args.manifest)
    _out(str(pipeline.layout.summary))
    return summary


HANDLERS = {
    'ingest': cmd_ingest,
    'parse': cmd_parse,
    'align': cmd_align,
    'filter': cmd_filter,
    'trilingual': cmd_trilingual,
    'export-tmx': cmd_export_tmx,
    'export-text': cmd_export_text,
    'stats': cmd_stats,
    'split': cmd_split,
    'bleu': cmd_bleu,
    'detect-lang': cmd_detect_lang,
    'review-sample': cmd_review_sample,
    'review-score': cmd_review_score,
    'run-all': cmd_run_all,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args)
    try:
        args.handler(args, make_pipeline(args))
    except OSError as ex:
        logger.error('%s', ex)
        return EXIT_IO
    except (SciParallelError, ValueError) as ex:
        logger.error('%s', ex)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
