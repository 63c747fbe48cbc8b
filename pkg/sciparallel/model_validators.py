"""Validators for sciparallel models (:mod:`sciparallel.models`).

All validators follow the :mod:`attr` validator API: they are called
with ``(instance, attribute, value)`` and raise on bad values.
"""

from collections.abc import Mapping

from sciparallel.exceptions import ValidationError


def _fail(instance, attribute, message, value):
    instance_name = instance.__class__.__name__
    raise ValidationError(("'{attr}' of a '{cls}' {message}. Given "
                           "'{value}'").format(attr=attribute.name,
                                               cls=instance_name,
                                               message=message,
                                               value=value))


def is_nonempty_str(instance, attribute, value):
    """Must be a string with at least one non-whitespace character."""

    if not isinstance(value, str) or not value.strip():
        _fail(instance, attribute, 'must be a non-empty string', value)


def is_single_line(instance, attribute, value):
    """Must be a non-empty string without newline or carriage return."""

    is_nonempty_str(instance, attribute, value)
    if '\n' in value or '\r' in value:
        _fail(instance, attribute,
              'must not contain newline characters', value)


def is_str_sequence(instance, attribute, value):
    """Every member must be a string."""

    if not all(isinstance(item, str) for item in value):
        _fail(instance, attribute, 'must only hold strings', value)


def is_non_negative(instance, attribute, value):
    if value < 0:
        _fail(instance, attribute, 'must not be negative', value)


def keys_instance_of(key_type):
    """Every key of the mapping must be an instance of :attr:`key_type`.
    """

    def keys_are(instance, attribute, value):
        if not isinstance(value, Mapping):
            _fail(instance, attribute, 'must be a mapping', value)
        bad = [key for key in value if not isinstance(key, key_type)]
        if bad:
            _fail(instance, attribute,
                  'must be keyed by {}'.format(key_type.__name__), bad)
    return keys_are


def values_nonempty(func):
    """Decorator: every value of the mapping must be a non-empty
    string, then :attr:`func` runs.
    """

    def nonempty_values(instance, attribute, value):
        empty = [key for key, text in value.items()
                 if not isinstance(text, str) or not text.strip()]
        if empty:
            _fail(instance, attribute, 'must not hold empty texts', empty)
        return func(instance, attribute, value)
    return nonempty_values


def has_min_length(minimum):
    """The value must hold at least :attr:`minimum` members."""

    def min_length(instance, attribute, value):
        if len(value) < minimum:
            _fail(instance, attribute,
                  'must hold at least {} entries'.format(minimum), value)
    return min_length
