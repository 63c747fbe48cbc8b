"""Pipeline configuration.

A configuration file is flat ``key=value`` text; ``#`` starts a comment
line and blank lines are skipped::

    out = corpus/
    pairs = en-pt, en-es
    chunk_limit = 4000
    prior.1-1 = 0.9

Values are resolved with the precedence command-line flags, then the
configuration file, then the environment (``SCIPARALLEL_STORE``), then
the defaults.
"""

import logging
import os
from pathlib import Path

import attr

from sciparallel.align import AlignerConfig
from sciparallel.exceptions import ConfigError, ValidationError
from sciparallel.filters import FilterConfig
from sciparallel.models import LanguageTag, pair_name, parse_language_pair


logger = logging.getLogger(__name__)

ENV_STORE = 'SCIPARALLEL_STORE'
DEFAULT_SEED = 42
DEFAULT_PAIRS = ('en-pt', 'en-es', 'pt-es')
PRIOR_PREFIX = 'prior.'

PIPELINE_KEYS = ('store', 'pairs', 'out', 'seed', 'jobs', 'pivot',
                 'document_level', 'abbreviations_dir', 'profiles_dir')
FILTER_KEYS = ('min_chars', 'margin_threshold')
ALIGNER_KEYS = tuple(name for name in attr.fields_dict(AlignerConfig)
                     if name != 'bead_priors')
OPTIONAL_KEYS = frozenset(['store', 'abbreviations_dir', 'profiles_dir',
                           'char_ratio', 'min_pair_score'])
_TRUE = frozenset(['1', 'true', 'yes', 'on'])
_FALSE = frozenset(['0', 'false', 'no', 'off'])


def parse_bool(value):
    if isinstance(value, bool):
        return value
    lowered = str(value).strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValidationError("Expected a boolean, got '{}'".format(value))


def parse_pairs(value):
    """Parse ``'en-pt, en-es'`` (or a list of pairs) into a tuple of
    ``(src, tgt)`` tag pairs, keeping the first occurrence of each.
    """
    if isinstance(value, str):
        value = [part for part in value.split(',') if part.strip()]
    pairs = []
    for item in value:
        pair = parse_language_pair(item.strip() if isinstance(item, str)
                                   else item)
        if pair not in pairs:
            pairs.append(pair)
    if not pairs:
        raise ValidationError('At least one language pair is required')
    return tuple(pairs)


def _optional_path(value):
    return None if value is None else Path(value)


def _positive_int(instance, attribute, value):
    if value < 1:
        raise ValidationError("'{}' must be at least 1. Given '{}'".format(
            attribute.name, value))


@attr.s(frozen=True)
class PipelineConfig:
    """Everything a pipeline run needs.

    Attributes:
        out (:class:`~pathlib.Path`): Output directory of every
            artifact
        store (:class:`~pathlib.Path`): Corpus store; defaults to
            ``<out>/articles.jsonl``
        pairs (tuple of (:class:`~.LanguageTag`, :class:`~.LanguageTag`)):
            Language pairs to align, in processing order
        seed (int): Seed of every random step
        jobs (int): Worker threads for per-article stages
        pivot (:class:`~.LanguageTag`): Shared language of the
            trilingual join
        document_level (bool): Align structurally incompatible
            articles as a whole instead of skipping them
        aligner (:class:`~.AlignerConfig`)
        filters (:class:`~.FilterConfig`)
        abbreviations_dir (:class:`~pathlib.Path`): Optional
            ``<lang>.txt`` abbreviation overrides
        profiles_dir (:class:`~pathlib.Path`): Optional
            ``<lang>.profile`` language profiles
    """
    out = attr.ib(default=Path('out'), converter=Path)
    store = attr.ib(default=None, converter=_optional_path)
    pairs = attr.ib(default=DEFAULT_PAIRS, converter=parse_pairs)
    seed = attr.ib(default=DEFAULT_SEED, converter=int)
    jobs = attr.ib(default=1, converter=int, validator=_positive_int)
    pivot = attr.ib(default=LanguageTag.en, converter=LanguageTag.parse)
    document_level = attr.ib(default=False, converter=parse_bool)
    aligner = attr.ib(default=attr.Factory(AlignerConfig),
                      validator=attr.validators.instance_of(AlignerConfig))
    filters = attr.ib(default=attr.Factory(FilterConfig),
                      validator=attr.validators.instance_of(FilterConfig))
    abbreviations_dir = attr.ib(default=None, converter=_optional_path)
    profiles_dir = attr.ib(default=None, converter=_optional_path)

    @property
    def store_path(self):
        return self.store if self.store is not None else \
            self.out / 'articles.jsonl'

    @property
    def pair_names(self):
        return tuple(pair_name(src, tgt) for src, tgt in self.pairs)

    @property
    def filter_config(self):
        """The filter thresholds with the aligner's score gate."""
        return attr.evolve(self.filters,
                           min_pair_score=self.aligner.min_pair_score)


def parse_config_text(text, source='<config>'):
    """Parse configuration text into a ``{key: raw value}`` dict.

    Raises:
        :exc:`~.ConfigError`: for malformed lines and unknown keys
    """
    values = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        key, sep, value = line.partition('=')
        key = key.strip()
        if not sep or not key:
            raise ConfigError("{}:{}: expected 'key=value', got '{}'".format(
                source, line_number, line))
        check_key(key, '{}:{}'.format(source, line_number))
        values[key] = value.strip()
    return values


def load_config_file(path):
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except FileNotFoundError:
        raise ConfigError("Config file '{}' does not exist".format(path)) \
            from None
    return parse_config_text(text, str(path))


def check_key(key, where='config'):
    if key.startswith(PRIOR_PREFIX):
        return
    if key not in PIPELINE_KEYS + FILTER_KEYS + ALIGNER_KEYS:
        raise ConfigError("{}: unknown key '{}'".format(where, key))


def _value(key, value):
    if key in OPTIONAL_KEYS and isinstance(value, str) and \
            value.strip().lower() in ('', 'none'):
        return None
    return value


def _priors(values):
    priors = dict(AlignerConfig().bead_priors)
    overridden = False
    for key, value in values.items():
        if key.startswith(PRIOR_PREFIX):
            priors[key[len(PRIOR_PREFIX):]] = float(value)
            overridden = True
    return {'bead_priors': priors} if overridden else {}


def config_from_values(values):
    """Build a :class:`PipelineConfig` from a flat ``{key: value}``
    dict, as read from a configuration file.

    Raises:
        :exc:`~.ConfigError`: for unknown keys or invalid values
    """
    for key in values:
        check_key(key)
    values = {key: _value(key, value) for key, value in values.items()}
    try:
        aligner = AlignerConfig(
            **{key: values[key] for key in ALIGNER_KEYS if key in values},
            **_priors(values))
        filters = FilterConfig(
            **{key: values[key] for key in FILTER_KEYS if key in values})
        return PipelineConfig(
            aligner=aligner, filters=filters,
            **{key: values[key] for key in PIPELINE_KEYS if key in values})
    except (TypeError, ValueError) as ex:
        raise ConfigError('Invalid configuration: {}'.format(ex)) from ex


def resolve_config(flags=None, config_path=None, environ=None):
    """Merge flags, a configuration file, the environment and the
    defaults into a :class:`PipelineConfig`.

    Args:
        flags (dict, optional): Command-line values; ``None`` values
            count as unset
        config_path (path, optional): Configuration file
        environ (mapping, optional): Defaults to :data:`os.environ`
    """
    environ = os.environ if environ is None else environ
    values = {}
    if environ.get(ENV_STORE):
        values['store'] = environ[ENV_STORE]
    if config_path is not None:
        values.update(load_config_file(config_path))
    values.update({key: value for key, value in (flags or {}).items()
                   if value is not None})
    config = config_from_values(values)
    logger.debug('Resolved configuration: %s', config)
    return config
