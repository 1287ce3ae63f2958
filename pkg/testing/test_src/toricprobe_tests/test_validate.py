"""
Tests for the cross checks and the random arrangement generator.
"""
import random
from itertools import combinations

import pytest

from toricprobe.arimat import circuit_report, circuits, ground_set, is_independent, multiplicity
from toricprobe.arrangement import AtomSpec, check_not_nested
from toricprobe.ospres import GradedQuotient, build_presentation
from toricprobe.validate import (CheckResult, RandomCaps, ValidationReport, check_characteristic_polynomial,
                                 check_circuit_identity, check_divisorial_homology, check_e2_degeneration,
                                 check_instance, check_mobius_euler, check_nbc_dimension, check_positive_system,
                                 random_arrangement, random_atom, random_vectors, validate_suite)
from test_fixtures import test_context, TestContext

DIVISORIAL_CHECKS = ['mobius_euler', 'e2_degeneration', 'positive_system', 'divisorial_homology',
                     'characteristic_polynomial', 'circuit_identity', 'nbc_dimension', 'j_convention',
                     'graded_dimensions', 'relations_vanish', 'orientation_flip', 'graded_commutativity',
                     'integral_probe']


@pytest.mark.parametrize('name', ['three_hypertori.json', 'two_components.json', 'parallel.json',
                                  'circle_two_points.json'])
def test_poset_checks(test_context: TestContext, name):
    poset = test_context.poset(name)
    assert check_mobius_euler(poset)[0]
    assert check_e2_degeneration(poset)[0]
    assert check_divisorial_homology(poset)[0]
    assert check_characteristic_polynomial(poset)[0]
    assert check_circuit_identity(poset)[0]


def test_nbc_dimension_witness(test_context: TestContext):
    poset = test_context.poset('three_hypertori.json')
    passed, witness = check_nbc_dimension(poset, GradedQuotient(build_presentation(poset)))
    assert passed
    assert witness == {'quotient': [1, 5, 6], 'nbc': [1, 5, 6], 'additive': [1, 5, 6]}


def test_check_instance_divisorial(test_context: TestContext):
    results = check_instance('three', test_context.poset('three_hypertori.json'), random.Random(0))
    assert [r.name for r in results] == DIVISORIAL_CHECKS
    assert all(r.passed for r in results), [r.to_dict() for r in results if not r.passed]
    assert {r.instance for r in results} == {'three'}


def test_check_instance_point(test_context: TestContext):
    results = check_instance('point', test_context.poset('point_in_plane.json'), random.Random(0))
    assert [r.name for r in results] == ['mobius_euler', 'e2_degeneration', 'positive_system']
    assert all(r.passed for r in results)


def test_check_instance_without_atoms(test_context: TestContext):
    results = check_instance('empty', test_context.poset('empty_rank3.json'), random.Random(0))
    assert [r.name for r in results] == ['mobius_euler', 'e2_degeneration', 'divisorial_homology',
                                         'characteristic_polynomial', 'circuit_identity', 'nbc_dimension',
                                         'j_convention', 'graded_dimensions', 'relations_vanish',
                                         'orientation_flip', 'graded_commutativity', 'integral_probe']


def test_positive_system_check():
    passed, witness = check_positive_system(2, [(1, -3)])
    assert passed
    assert witness == {}
    assert check_positive_system(3, [(1, 0, 0), (-2, 1, 0), (3, -1, 1), (0, -1, -2)])[0]


def test_report_shape():
    report = ValidationReport(('a',), (CheckResult('mobius_euler', 'a', True),
                                       CheckResult('nbc_dimension', 'a', False, {'degree': 2})))
    assert not report.passed
    assert report.failures() == [report.checks[1]]
    data = report.to_dict()
    assert data['check_count'] == 2
    assert data['failure_count'] == 1
    assert data['checks'][1] == {'name': 'nbc_dimension', 'instance': 'a', 'status': 'fail',
                                 'witness': {'degree': 2}}


def test_random_arrangements_respect_caps():
    rng = random.Random(11)
    caps = RandomCaps(max_rank=3, max_atoms=4, max_entry=2)
    for _ in range(20):
        rank, atoms = random_arrangement(rng, caps)
        assert 1 <= rank <= 3
        assert len(atoms) <= 4
        check_not_nested(rank, atoms)
        for atom in atoms:
            assert len(atom.characters) == 1
            assert all(abs(x) <= 2 for c in atom.characters for x in c)
            assert all(k.order in (1, 2) for k in atom.constants)


def test_random_atoms_of_any_codimension():
    rng = random.Random(5)
    caps = RandomCaps(kind='mixed')
    codims = {len(random_atom(rng, 3, caps).characters) for _ in range(40)}
    assert codims == {1, 2, 3}


def test_random_vectors():
    rank, vectors = random_vectors(random.Random(2), max_rank=3, max_entry=4)
    assert 1 <= rank <= 3
    assert 1 <= len(vectors) <= 2 * rank
    assert all(len(v) == rank and any(v) for v in vectors)


def test_suite_is_seeded(test_context: TestContext):
    caps = RandomCaps(max_rank=2, max_atoms=3, max_entry=2)
    first = validate_suite(seed=7, count=3, caps=caps)
    second = validate_suite(seed=7, count=3, caps=caps)
    assert first.to_dict() == second.to_dict()
    assert first.passed, [c.to_dict() for c in first.failures()]
    assert [c.instance for c in first.checks if c.instance.startswith('vectors')][-1] == 'vectors[11]'
    finished = test_context.memory().find("Validation finished")
    assert finished[-1].params['instances'] == 3


def test_suite_on_input(test_context: TestContext):
    poset = test_context.poset('two_components.json')
    report = validate_suite(poset, 'two', seed=1)
    assert report.instances == ('two',)
    assert report.passed
    assert not test_context.memory().find("Validation check failed")


def test_empty_suite(test_context: TestContext):
    report = validate_suite(count=0)
    assert report.checks == ()
    assert report.passed


@pytest.mark.parametrize('seed', [0, 1])
def test_suite_at_full_caps(test_context: TestContext, seed):
    report = validate_suite(seed=seed, count=25, caps=RandomCaps(max_rank=3, max_atoms=5, max_entry=3))
    assert report.passed, [c.to_dict() for c in report.failures()]
    assert len(report.instances) == 25
    assert len([c for c in report.checks if c.instance.startswith('vectors')]) == 100
    names = {c.name for c in report.checks}
    assert {'e2_degeneration', 'mobius_euler', 'nbc_dimension', 'j_convention', 'positive_system'} <= names


def test_positive_systems_of_random_vectors():
    rng = random.Random(4)
    for _ in range(100):
        rank, vectors = random_vectors(rng, max_rank=4, max_entry=9)
        passed, witness = check_positive_system(rank, vectors)
        assert passed, witness


def random_ground_set(rng: random.Random):
    rank = rng.randint(1, 3)
    characters = []
    for _ in range(rng.randint(1, 6)):
        c = [0] * rank
        while not any(c):
            c = [rng.randint(-4, 4) for _ in range(rank)]
        characters.append(c)
    return ground_set(rank, [AtomSpec.of([c]) for c in characters])


def test_circuit_identity_on_random_ground_sets():
    rng = random.Random(9)
    for _ in range(60):
        ground = random_ground_set(rng)
        for c in circuits(ground):
            report = circuit_report(ground, c)
            assert report.identity_holds, report.to_dict()


def test_multiplicity_divides_along_independent_sets():
    rng = random.Random(13)
    for _ in range(60):
        ground = random_ground_set(rng)
        n = len(ground.characters)
        for size in range(1, n + 1):
            for atoms in combinations(range(n), size):
                if not is_independent(ground, atoms):
                    continue
                m = multiplicity(ground, list(atoms))
                for i in atoms:
                    smaller = multiplicity(ground, [a for a in atoms if a != i])
                    assert smaller <= m
                    assert m % smaller == 0
