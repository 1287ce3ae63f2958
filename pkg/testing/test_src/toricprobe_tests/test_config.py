"""
Tests for loading and merging the TOML configuration.
"""
import os

import pytest

from toricprobe.config import CONFIG_ENV_VAR, ProbeConfig, get_config, load_config, merge_sections, set_config
from toricprobe.exceptions import ConfigError
from test_fixtures import test_context, TestContext


def test_loads_from_environment(test_context: TestContext):
    config = get_config()
    assert config.path == test_context.config_path
    assert config.get('common', 'dispatchers') == ['memory']
    assert config.section('validate')['seed'] == 3
    assert get_config() is config


def test_file_sections_merge_over_defaults(test_context: TestContext):
    config = get_config()
    # Not in the test file, comes from the defaults.
    assert config.output_format == 'json'
    assert config.degree_cap is None
    assert config.j_convention == 'min'
    assert config.variant == 'ring'
    assert config.section('console')['colorize_messages'] is True


def test_defaults_without_file(test_context: TestContext):
    del os.environ[CONFIG_ENV_VAR]
    set_config(None)
    config = get_config()
    assert config.path is None
    assert config.get('log_levels', 'default_log_level') == 'warning'
    assert config.get('common', 'dispatchers') == ['console']


def test_merge_sections_leaves_base_alone():
    base = {'a': {'x': 1, 'y': 2}, 'b': [1]}
    merged = merge_sections(base, {'a': {'y': 3}, 'c': {'z': 4}})
    assert merged == {'a': {'x': 1, 'y': 3}, 'b': [1], 'c': {'z': 4}}
    assert base == {'a': {'x': 1, 'y': 2}, 'b': [1]}


@pytest.mark.parametrize('values', [
    {'presentation': {'j_convention': 'middle'}},
    {'presentation': {'variant': 'tensor'}},
    {'presentation': {'degree_cap': -1}},
    {'output': {'format': 'xml'}},
    {'validate': {'max_rank': -2}},
    {'validate': {'kind': 'curved'}},
    {'validate': {'denominators': []}},
    {'validate': {'denominators': [0]}},
    {'common': {'dispatchers': 'memory'}},
])
def test_rejects_bad_values(values):
    with pytest.raises(ConfigError):
        ProbeConfig(values)


def test_missing_file(test_context: TestContext):
    with pytest.raises(ConfigError):
        load_config(test_context.test_collateral_path.joinpath('testing/nope.toml'))


def test_malformed_file(tmp_path):
    path = tmp_path.joinpath('bad.toml')
    path.write_text("[presentation\nvariant = 'ring'\n", encoding='utf-8')
    with pytest.raises(ConfigError) as info:
        load_config(path)
    assert 'bad.toml' in str(info.value)


def test_partial_file(tmp_path):
    path = tmp_path.joinpath('partial.toml')
    path.write_text("[presentation]\nj_convention = 'max'\ndegree_cap = 2\n", encoding='utf-8')
    config = load_config(str(path))
    assert config.j_convention == 'max'
    assert config.degree_cap == 2
    assert config.variant == 'ring'
