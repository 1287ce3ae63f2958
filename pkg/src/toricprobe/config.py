"""
Configuration for toricprobe, read from a TOML file.

The path comes from the 'TORICPROBE__CONFIG_FILE_PATH' environment variable (or the --config flag of the command
line).  Without either, the built-in defaults below are used.  A file only needs the sections and keys it changes;
each section is merged over its default.
"""
import copy
import os
from pathlib import Path
from typing import Any, Optional, Union

import tomli

from toricprobe.exceptions import ConfigError

CONFIG_ENV_VAR = 'TORICPROBE__CONFIG_FILE_PATH'

"""
The defaults.  Logging is quiet (warnings and up, on stderr) so that command output on stdout stays clean.
"""
DEFAULT_CONFIG: dict = {
    'common': {
        'dispatchers': ['console'],
    },
    'log_levels': {
        'default_log_level': 'warning',
    },
    'console': {
        'dispatcher_class_name': 'toricprobe.logs.dispatchers.console_dispatcher.ConsoleDispatcher',
        'colorize_messages': True,
        'log_utc_timezone': True,
        'datetime_format': '%Y-%m-%d_%H:%M:%S.%f',
        'message_format': 'date="[[DATE_STRING]]" level="[[LOG_LEVEL]]" source="[[CLASS_NAME]]" '
                          'message="[[LOG_MESSAGE_STATIC]]" [[LOG_PARAMS]]',
    },
    'presentation': {
        'j_convention': 'min',
        'variant': 'ring',
    },
    'validate': {
        'seed': 0,
        'random': 0,
        'max_rank': 3,
        'max_atoms': 5,
        'max_entry': 3,
        'kind': 'divisorial',
        'denominators': [1, 2],
    },
    'output': {
        'format': 'json',
    },
}

J_CONVENTIONS = ('min', 'max')
VARIANTS = ('ring', 'graded')
OUTPUT_FORMATS = ('json', 'table')
RANDOM_KINDS = ('divisorial', 'mixed')


class ProbeConfig:
    """
    The merged configuration, with typed accessors for the computational settings.
    """

    """
    The raw merged dictionary, section name to section.  The logger reads its dispatcher sections from here.
    """
    values: dict

    """
    Where we loaded it from, None for the built-in defaults.
    """
    path: Optional[Path]

    def __init__(self, values: Optional[dict] = None, path: Optional[Path] = None):
        self.values = merge_sections(DEFAULT_CONFIG, values or {})
        self.path = path
        self._check()

    def section(self, name: str) -> dict:
        return self.values.get(name, {})

    def get(self, section: str, key: str, default: Any = None) -> Any:
        return self.section(section).get(key, default)

    @property
    def j_convention(self) -> str:
        return self.get('presentation', 'j_convention')

    @property
    def variant(self) -> str:
        return self.get('presentation', 'variant')

    @property
    def degree_cap(self) -> Optional[int]:
        """
        Highest degree of the presentation computed, None for twice the ambient rank.
        """
        return self.get('presentation', 'degree_cap')

    @property
    def output_format(self) -> str:
        return self.get('output', 'format')

    def _check(self):
        if self.j_convention not in J_CONVENTIONS:
            raise ConfigError(f"presentation.j_convention must be one of {J_CONVENTIONS}, got {self.j_convention!r}")
        if self.variant not in VARIANTS:
            raise ConfigError(f"presentation.variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output.format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        cap = self.degree_cap
        if cap is not None and (not isinstance(cap, int) or cap < 0):
            raise ConfigError(f"presentation.degree_cap must be a non negative integer, got {cap!r}")
        validate = self.section('validate')
        for key in ('seed', 'random', 'max_rank', 'max_atoms', 'max_entry'):
            if not isinstance(validate.get(key), int) or validate[key] < 0:
                raise ConfigError(f"validate.{key} must be a non negative integer, got {validate.get(key)!r}")
        if validate.get('kind') not in RANDOM_KINDS:
            raise ConfigError(f"validate.kind must be one of {RANDOM_KINDS}, got {validate.get('kind')!r}")
        denominators = validate.get('denominators')
        if not denominators or any(not isinstance(q, int) or q < 1 for q in denominators):
            raise ConfigError(f"validate.denominators must be a list of positive integers, got {denominators!r}")
        if not isinstance(self.get('common', 'dispatchers'), list):
            raise ConfigError("common.dispatchers must be a list of section names")


def merge_sections(base: dict, override: dict) -> dict:
    """
    Merges a parsed file over the defaults, one section at a time.
    :param base: The defaults, left untouched.
    :param override: The values read from the file.
    :return: A new merged dictionary.
    """
    merged = copy.deepcopy(base)
    for name, section in override.items():
        if isinstance(section, dict) and isinstance(merged.get(name), dict):
            merged[name].update(section)
        else:
            merged[name] = copy.deepcopy(section)
    return merged


def load_config(config_path: Union[Path, str]) -> ProbeConfig:
    """
    Loads the configuration from the given Path (or str).
    :param config_path: The path to the toml config file.
    :return: The merged configuration.
    """
    path = Path(config_path)
    if not path.exists():
        raise ConfigError(f"Could not find TOML config file in {path}")
    #
    # 'rb' with no encoding, tomli wants bytes.
    #
    try:
        with open(path, "rb") as f:
            values = tomli.load(f)
    except tomli.TOMLDecodeError as ex:
        raise ConfigError(f"Could not parse TOML config file {path}: {ex}") from ex
    return ProbeConfig(values=values, path=path)


"""
The configuration in use by this process.
"""
_ACTIVE_CONFIG: Optional[ProbeConfig] = None


def get_config() -> ProbeConfig:
    """
    Gets the process wide configuration, loading it on first use from the file named by the environment variable,
    or from the defaults.
    """
    global _ACTIVE_CONFIG
    if _ACTIVE_CONFIG:
        return _ACTIVE_CONFIG

    config_file_str = os.getenv(CONFIG_ENV_VAR)
    _ACTIVE_CONFIG = load_config(config_file_str) if config_file_str else ProbeConfig()
    return _ACTIVE_CONFIG


def set_config(config: Optional[ProbeConfig]):
    """
    Replaces the process wide configuration.  None makes the next get_config() load it again.
    """
    global _ACTIVE_CONFIG
    _ACTIVE_CONFIG = config
