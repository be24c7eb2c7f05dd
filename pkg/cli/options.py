"""Shared plumbing of the management commands: config files, option merging, exit codes."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Type

from django import forms
from django.core.management.base import BaseCommand, CommandError

from bgp.state import StateMismatchError
from bgp.updates import BgpParseError
from series.symbols import SeriesError
from traceroute.parsing import TracerouteParseError
from validation.noise import NoiseError
from validation.truth import TruthError


logger = logging.getLogger(__name__)

USAGE_ERROR = 2
RUNTIME_ERROR = 1

# failures of a well-formed invocation
RUNTIME_ERRORS = (
    OSError,
    ValueError,
    SeriesError,
    TruthError,
    NoiseError,
    TracerouteParseError,
    BgpParseError,
    StateMismatchError,
)


def usage_error(message: str) -> CommandError:
    return CommandError(message, returncode=USAGE_ERROR)


def runtime_error(message: str) -> CommandError:
    return CommandError(message, returncode=RUNTIME_ERROR)


def read_config_file(path: Optional[str]) -> Dict[str, Any]:
    """Options from a JSON object file; keys may use dashes or underscores."""
    if not path:
        return {}
    try:
        with open(path, 'r', encoding='utf-8') as fp:
            data = json.load(fp)
    except OSError as exc:
        raise usage_error(f'Cannot read config file {path}: {exc}') from exc
    except json.JSONDecodeError as exc:
        raise usage_error(f'Config file {path} is not valid JSON: {exc}') from exc
    if not isinstance(data, dict):
        raise usage_error(f'Config file {path} must hold a JSON object')
    return {str(key).replace('-', '_'): value for key, value in data.items()}


def merge_options(config: Dict[str, Any], flags: Dict[str, Any]) -> Dict[str, Any]:
    """Config file values overridden by every flag actually given."""
    merged = dict(config)
    merged.update({key: value for key, value in flags.items() if value is not None})
    return merged


def form_errors(form: forms.Form) -> str:
    messages = []
    for field, errors in form.errors.items():
        label = '' if field == '__all__' else f'--{field.replace("_", "-")}: '
        messages.extend(f'{label}{error}' for error in errors)
    return '; '.join(messages)


class PeriodicityCommand(BaseCommand):
    """Base of all commands: validates options through ``form_class`` then calls run()."""

    form_class: Type[forms.Form]

    def add_arguments(self, parser):
        parser.add_argument('--config', help='JSON file with default values for any option')
        self.add_options(parser)

    def add_options(self, parser):
        raise NotImplementedError

    def clean_options(self, options: Dict[str, Any]) -> Dict[str, Any]:
        names = set(self.form_class.base_fields)
        config = read_config_file(options.get('config'))
        unknown = sorted(set(config) - names)
        if unknown:
            raise usage_error(f'Unknown option(s) in config file: {", ".join(unknown)}')
        flags = {name: options.get(name) for name in names}
        form = self.form_class(data=merge_options(config, flags))
        if not form.is_valid():
            raise usage_error(form_errors(form))
        return form.cleaned_data

    def handle(self, *args, **options):
        cleaned = self.clean_options(options)
        try:
            self.run(cleaned)
        except CommandError:
            raise
        except RUNTIME_ERRORS as exc:
            logger.error(f'{self.__module__.rsplit(".", 1)[-1]} failed: {exc}')
            raise runtime_error(str(exc)) from exc

    def run(self, options: Dict[str, Any]) -> None:
        raise NotImplementedError

    def report(self, message: str) -> None:
        self.stdout.write(message)


def ensure_parent(path: str) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    return target
