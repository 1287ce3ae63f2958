"""
Tests for the command line: outputs, formats and exit codes.
"""
import json

import pytest

from toricprobe.cli import EXIT_OK, EXIT_USAGE, main
from test_fixtures import test_context, TestContext


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_OK, err
    return json.loads(out)


def test_betti(test_context: TestContext, capsys):
    data = run_json(capsys, 'betti', str(test_context.arrangement_path('three_hypertori.json')))
    assert data['name'] == 'three hypertori through one point'
    assert data['atom_count'] == 3
    assert data['poincare'] == [1, 5, 6]
    assert data['poincare_text'] == '1 + 5t + 6t^2'
    assert [d['group'] for d in data['degrees']][:3] == ['Z', 'Z^5', 'Z^6']
    assert test_context.memory().find("Command finished")[-1].params['exit_code'] == EXIT_OK


def test_betti_table(test_context: TestContext, capsys):
    code, out, _ = run(capsys, 'betti', str(test_context.arrangement_path('three_hypertori.json')),
                       '--format', 'table')
    assert code == EXIT_OK
    lines = out.splitlines()
    assert 'poincare: [1,5,6]' in lines
    assert 'degrees:' in lines
    assert 'summands:' in lines


def test_poset(test_context: TestContext, capsys):
    data = run_json(capsys, 'poset', str(test_context.arrangement_path('three_hypertori.json')))
    assert data['layer_count'] == 5
    assert data['cover_count'] == 6
    assert data['characteristic_polynomial'] == [2, -3, 1]
    assert [lay['mobius'] for lay in data['layers']] == [1, -1, -1, -1, 2]
    assert data['layers'][4]['atoms'] == [0, 1, 2]


def test_e2(test_context: TestContext, capsys):
    data = run_json(capsys, 'e2', str(test_context.arrangement_path('three_hypertori.json')))
    assert [(e['p'], e['q']) for e in data['entries']] == [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]


def test_matroid(test_context: TestContext, capsys):
    data = run_json(capsys, 'matroid', str(test_context.arrangement_path('two_components.json')))
    [circuit] = data['circuits']
    assert circuit['support'] == [0, 1, 2]
    assert circuit['identity_holds'] is True
    assert sorted(len(lay['nbc_sets']) for lay in data['layers']) == [1, 1, 1, 1, 1, 2]


def test_presentation(test_context: TestContext, capsys):
    path = str(test_context.arrangement_path('three_hypertori.json'))
    data = run_json(capsys, 'presentation', path)
    assert data['degree_cap'] == 4
    assert data['dimensions'] == [1, 5, 6]
    assert data['nbc_dimensions'] == [1, 5, 6]
    assert data['poincare'] == [1, 5, 6]
    assert len(data['generators']) == 7
    assert len(data['nbc_basis']) == sum(data['nbc_dimensions'])
    capped = run_json(capsys, 'presentation', path, '--degree', '1', '--j-convention', 'max', '--variant', 'graded')
    assert capped['dimensions'] == [1, 5]
    assert capped['j_convention'] == 'max'
    assert capped['variant'] == 'graded'
    assert all(r['degree'] <= 1 for r in capped['relations'])


def test_presentation_needs_hypertori(test_context: TestContext, capsys):
    code, out, err = run(capsys, 'presentation', str(test_context.arrangement_path('point_in_plane.json')))
    assert code == EXIT_USAGE
    assert out == ''
    assert err.startswith('toricprobe: NotDivisorial:')
    assert test_context.memory().find("Command failed")


def test_positive_system(test_context: TestContext, capsys):
    data = run_json(capsys, 'positive-system', str(test_context.arrangement_path('basis_vector.json')))
    assert data['u'] == [[1, 1], [0, 1]]
    assert data['columns'] == [[2], [3]]
    assert data['flips'] == [True]


def test_conjecture_check(test_context: TestContext, capsys):
    data = run_json(capsys, 'conjecture-check', str(test_context.arrangement_path('three_hypertori.json')))
    assert data['unimodular'] is True
    assert data['all_match'] is True


def test_validate_file(test_context: TestContext, capsys):
    data = run_json(capsys, 'validate', str(test_context.arrangement_path('two_components.json')))
    assert data['passed'] is True
    assert data['instances'] == ['z1 = 1, z2 = 1, z1 z2^2 = 1']
    assert data['failure_count'] == 0


def test_validate_random(test_context: TestContext, capsys):
    data = run_json(capsys, 'validate', '--random', '2', '--seed', '3')
    assert data['instances'] == ['random[0]', 'random[1]']
    assert data['passed'] is True


@pytest.mark.parametrize('argv, kind', [
    (['unfold'], 'UnknownCommand'),
    (['betti'], 'UsageError'),
    (['validate'], 'UsageError'),
    (['betti', 'x.json', '--format', 'xml'], 'UsageError'),
    (['validate', '--random', '-1'], 'UsageError'),
    (['betti', 'no_such_file.json'], 'ParseError'),
])
def test_usage_errors(test_context: TestContext, capsys, argv, kind):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == ''
    assert err.startswith(f'toricprobe: {kind}:')


def test_negative_degree(test_context: TestContext, capsys):
    code, _, err = run(capsys, 'presentation', str(test_context.arrangement_path('three_hypertori.json')),
                       '--degree', '-1')
    assert code == EXIT_USAGE
    assert 'UsageError' in err


def test_config_flag(test_context: TestContext, capsys):
    data = run_json(capsys, 'validate', '--config', str(test_context.config_path), '--random', '1', '--verbose')
    assert data['instances'] == ['random[0]']
    assert test_context.memory().find("Validation finished")


def test_missing_config_file(test_context: TestContext, capsys):
    code, _, err = run(capsys, 'betti', str(test_context.arrangement_path('three_hypertori.json')),
                       '--config', str(test_context.test_collateral_path.joinpath('no_such_config.toml')))
    assert code == EXIT_USAGE
    assert err.startswith('toricprobe: ConfigError:')


def test_failure_is_logged_as_an_error_document(test_context: TestContext, capsys):
    code, _, err = run(capsys, 'betti', str(test_context.arrangement_path('zero_character.json')))
    assert code == EXIT_USAGE
    assert err.startswith('toricprobe: ZeroCharacter: atom 1:')
    [failed] = test_context.memory().find("Command failed")
    assert failed.params['error'] == 'ZeroCharacter'
    assert failed.params['atom_index'] == 1
    assert failed.params['message'] in err
