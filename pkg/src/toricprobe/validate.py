"""
Cross checks between the modules, run on one arrangement or on seeded random ones.

A failed check is a report entry with the values that witness it, never an exception.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from toricprobe.addcoh import cohomology_groups, divisorial_poincare, e2_page
from toricprobe.arimat import circuit_report, circuits, ground_set_of_poset
from toricprobe.arrangement import (AtomSpec, LayerPoset, UnityRoot, build_layer_poset, check_not_nested,
                                    positive_system, positive_system_of_vectors)
from toricprobe.exceptions import NestedAtoms, ToricProbeError
from toricprobe.intlat import IntMatrix, row_rank
from toricprobe.logs import get_logger
from toricprobe.ospres import GradedQuotient, build_presentation, circuit_relations, integral_conjecture_check
from toricprobe.ospres.quotient import nbc_dimensions
from toricprobe.topo import euler_characteristic, mobius_row, order_complex, reduced_homology

Witness = dict


@dataclass(frozen=True)
class CheckResult:
    name: str
    instance: str
    passed: bool
    witness: Witness = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {'name': self.name, 'instance': self.instance, 'status': 'pass' if self.passed else 'fail',
                'witness': self.witness}


@dataclass(frozen=True)
class ValidationReport:
    instances: Tuple[str, ...]
    checks: Tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {'passed': self.passed, 'instances': list(self.instances), 'check_count': len(self.checks),
                'failure_count': len(self.failures()), 'checks': [c.to_dict() for c in self.checks]}


@dataclass(frozen=True)
class RandomCaps:
    max_rank: int = 3
    max_atoms: int = 5
    max_entry: int = 3
    kind: str = 'divisorial'
    denominators: Tuple[int, ...] = (1, 2)


def _run(results: List[CheckResult], instance: str, name: str, check: Callable[[], Tuple[bool, Witness]]):
    try:
        passed, witness = check()
    except ToricProbeError as ex:
        passed, witness = False, {'error': ex.kind, 'message': str(ex), **{k: str(v) for k, v in ex.params.items()}}
    if not passed:
        get_logger().error(__name__, "Validation check failed", {'check': name, 'instance': instance, **witness})
    results.append(CheckResult(name, instance, passed, witness))


def check_mobius_euler(poset: LayerPoset) -> Tuple[bool, Witness]:
    """
    The reduced Euler characteristic of every interval's order complex is the Moebius function.
    """
    intervals = 0
    for lower in range(len(poset)):
        for upper, mu in mobius_row(poset, lower).items():
            intervals += 1
            chi = euler_characteristic(reduced_homology(order_complex(poset, lower, upper)))
            if chi != mu:
                return False, {'lower': lower, 'upper': upper, 'mobius': mu, 'euler': chi}
    return True, {'intervals': intervals}


def check_e2_degeneration(poset: LayerPoset) -> Tuple[bool, Witness]:
    table = cohomology_groups(poset)
    e2 = e2_page(poset)
    for k, group in enumerate(table.degrees):
        total = e2.total(k)
        if total != group:
            return False, {'degree': k, 'cohomology': str(group), 'e2_total': str(total)}
    return True, {'poincare': list(table.poincare())}


def check_divisorial_homology(poset: LayerPoset) -> Tuple[bool, Witness]:
    """
    For hypertori every interval from the torus has homology only in its top degree cd W - 2.
    """
    for w in range(1, len(poset)):
        for h in reduced_homology(order_complex(poset, 0, w)):
            if not h.group.is_trivial() and h.degree != poset.codim(w) - 2:
                return False, {'layer': w, 'degree': h.degree, 'group': str(h.group)}
    return True, {}


def check_characteristic_polynomial(poset: LayerPoset) -> Tuple[bool, Witness]:
    expected = divisorial_poincare(poset)
    found = cohomology_groups(poset).poincare()
    return expected == found, {'from_mobius': list(expected), 'poincare': list(found)}


def check_circuit_identity(poset: LayerPoset) -> Tuple[bool, Witness]:
    """
    m(C) |r_i| = m(C - i) on every circuit, the constants set to 1 so every intersection is non empty.
    """
    ground = ground_set_of_poset(poset).with_trivial_constants()
    found = circuits(ground)
    for c in found:
        report = circuit_report(ground, c)
        if not report.identity_holds:
            return False, report.to_dict()
    return True, {'circuits': len(found)}


def check_nbc_dimension(poset: LayerPoset, quotient: GradedQuotient) -> Tuple[bool, Witness]:
    d = poset.ambient_rank
    dims = quotient.dimensions()
    nbc = nbc_dimensions(quotient)
    betti = tuple(g.free_rank for g in cohomology_groups(poset).degrees[:d + 1])
    for k in range(d + 1):
        quotient.check_basis(k)
    witness = {'quotient': list(dims), 'nbc': list(nbc), 'additive': list(betti)}
    return dims == nbc == betti, witness


def check_j_convention(poset: LayerPoset, quotient: GradedQuotient) -> Tuple[bool, Witness]:
    other = GradedQuotient(build_presentation(poset, 'max')).dimensions()
    return other == quotient.dimensions(), {'min': list(quotient.dimensions()), 'max': list(other)}


def check_graded_dimensions(poset: LayerPoset, quotient: GradedQuotient) -> Tuple[bool, Witness]:
    graded = GradedQuotient(build_presentation(poset, variant='graded')).dimensions()
    return graded == quotient.dimensions(), {'ring': list(quotient.dimensions()), 'graded': list(graded)}


def check_relations_vanish(quotient: GradedQuotient) -> Tuple[bool, Witness]:
    relations = circuit_relations(quotient.presentation)
    for rel in relations:
        if quotient.reduce(rel.element):
            return False, {'relation': rel.to_dict()}
    return True, {'relations': len(relations)}


def check_orientation_flip(poset: LayerPoset, quotient: GradedQuotient) -> Tuple[bool, Witness]:
    """
    Reversing every circuit leaves the ideal unchanged.
    """
    flipped = GradedQuotient(quotient.presentation, orientation=-1)
    for k in range(poset.ambient_rank + 1):
        if flipped.ideal(k) != quotient.ideal(k):
            return False, {'degree': k}
    return True, {}


def check_graded_commutativity(quotient: GradedQuotient, rng: random.Random, pairs: int = 6) \
        -> Tuple[bool, Witness]:
    basis = [b for k in range(quotient.ambient_rank + 1) for b in quotient.nbc_basis(k)]
    if not basis:
        return True, {'pairs': 0}
    for _ in range(pairs):
        x, y = rng.choice(basis), rng.choice(basis)
        a, b = quotient.basis_element(x), quotient.basis_element(y)
        if not quotient.is_graded_commutative(a, b):
            return False, {'left': str(x), 'right': str(y)}
    return True, {'pairs': pairs}


def check_integral_probe(poset: LayerPoset, quotient: GradedQuotient) -> Tuple[bool, Witness]:
    """
    A mismatch only fails the check when every independent set meets in one component.
    """
    report = integral_conjecture_check(quotient.presentation, cohomology_groups(poset))
    witness = {'unimodular': report.unimodular, 'all_match': report.all_match,
               'mismatches': [d.to_dict() for d in report.mismatches()]}
    return report.all_match or not report.unimodular, witness


def check_positive_system(ambient_rank: int, vectors: Sequence[Sequence[int]]) -> Tuple[bool, Witness]:
    system = positive_system_of_vectors(ambient_rank, vectors)
    det = system.u.determinant()
    flipped = system.vectors.transpose().rows
    flipped = [tuple(-x for x in v) if f else v for v, f in zip(flipped, system.flips)]
    expected = system.u @ IntMatrix.from_rows(flipped, ambient_rank).transpose()
    negative = any(x < 0 for row in system.columns.rows for x in row)
    zero_column = any(not any(system.columns.column(j)) for j in range(system.columns.ncols))
    passed = abs(det) == 1 and not negative and not zero_column and expected == system.columns
    return passed, {} if passed else {'vectors': [list(v) for v in vectors], **system.to_dict()}


def check_instance(name: str, poset: LayerPoset, rng: random.Random) -> List[CheckResult]:
    results: List[CheckResult] = []
    _run(results, name, 'mobius_euler', lambda: check_mobius_euler(poset))
    _run(results, name, 'e2_degeneration', lambda: check_e2_degeneration(poset))

    def positive():
        system = positive_system(poset.ambient_rank, poset.atoms)
        return check_positive_system(poset.ambient_rank, system.vectors.transpose().rows)

    if poset.atoms:
        _run(results, name, 'positive_system', positive)
    if not poset.is_divisorial():
        return results

    _run(results, name, 'divisorial_homology', lambda: check_divisorial_homology(poset))
    _run(results, name, 'characteristic_polynomial', lambda: check_characteristic_polynomial(poset))
    _run(results, name, 'circuit_identity', lambda: check_circuit_identity(poset))
    quotient = GradedQuotient(build_presentation(poset))
    _run(results, name, 'nbc_dimension', lambda: check_nbc_dimension(poset, quotient))
    _run(results, name, 'j_convention', lambda: check_j_convention(poset, quotient))
    _run(results, name, 'graded_dimensions', lambda: check_graded_dimensions(poset, quotient))
    _run(results, name, 'relations_vanish', lambda: check_relations_vanish(quotient))
    _run(results, name, 'orientation_flip', lambda: check_orientation_flip(poset, quotient))
    _run(results, name, 'graded_commutativity', lambda: check_graded_commutativity(quotient, rng))
    _run(results, name, 'integral_probe', lambda: check_integral_probe(poset, quotient))
    return results


def _random_character(rng: random.Random, rank: int, max_entry: int) -> Tuple[int, ...]:
    while True:
        c = tuple(rng.randint(-max_entry, max_entry) for _ in range(rank))
        if any(c):
            return c


def _random_root(rng: random.Random, denominators: Sequence[int]) -> UnityRoot:
    q = rng.choice(list(denominators))
    return UnityRoot.of(Fraction(rng.randrange(q), q))


def random_atom(rng: random.Random, rank: int, caps: RandomCaps) -> AtomSpec:
    codim = 1 if caps.kind == 'divisorial' else rng.randint(1, rank)
    while True:
        chars = [_random_character(rng, rank, max(caps.max_entry, 1)) for _ in range(codim)]
        if row_rank(IntMatrix.from_rows(chars, rank)) == codim:
            return AtomSpec(tuple(chars), tuple(_random_root(rng, caps.denominators) for _ in chars))


def random_arrangement(rng: random.Random, caps: RandomCaps, attempts: int = 50) -> Tuple[int, List[AtomSpec]]:
    """
    A random arrangement within the caps; atoms nested in (or equal to) earlier ones are drawn again.
    """
    rank = rng.randint(1, max(caps.max_rank, 1))
    atoms: List[AtomSpec] = []
    for _ in range(rng.randint(0, caps.max_atoms)):
        for _ in range(attempts):
            candidate = random_atom(rng, rank, caps)
            try:
                check_not_nested(rank, atoms + [candidate])
            except NestedAtoms:
                continue
            atoms.append(candidate)
            break
    return rank, atoms


def random_vectors(rng: random.Random, max_rank: int = 4, max_entry: int = 9) -> Tuple[int, List[Tuple[int, ...]]]:
    rank = rng.randint(1, max_rank)
    return rank, [_random_character(rng, rank, max_entry) for _ in range(rng.randint(1, 2 * rank))]


def validate_suite(poset: Optional[LayerPoset] = None, name: str = 'input', seed: int = 0, count: int = 0,
                   caps: RandomCaps = RandomCaps()) -> ValidationReport:
    """
    Runs the checks on the given arrangement, then on count random ones drawn with the seed.  Random runs also test
    the positive system on 4 * count random vector families.
    """
    rng = random.Random(seed)
    instances = []
    results: List[CheckResult] = []
    if poset is not None:
        instances.append(name)
        results.extend(check_instance(name, poset, rng))
    for i in range(count):
        rank, atoms = random_arrangement(rng, caps)
        label = f'random[{i}]'
        instances.append(label)
        try:
            random_poset = build_layer_poset(rank, atoms)
        except ToricProbeError as ex:
            results.append(CheckResult('build_poset', label, False, {'error': ex.kind, 'message': str(ex)}))
            continue
        results.extend(check_instance(label, random_poset, rng))
    for i in range(4 * count):
        rank, vectors = random_vectors(rng)
        _run(results, f'vectors[{i}]', 'positive_system', lambda: check_positive_system(rank, vectors))
    report = ValidationReport(tuple(instances), tuple(results))
    get_logger().info(__name__, "Validation finished", {
        'instances': len(instances), 'checks': len(results), 'failures': len(report.failures())})
    return report
