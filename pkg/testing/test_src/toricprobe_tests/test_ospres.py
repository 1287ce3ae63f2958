"""
Tests for the presentation of the cohomology ring, its quotient in the NBC basis, and the integral variant.
"""
from fractions import Fraction

import pytest

from toricprobe.addcoh import cohomology_groups
from toricprobe.exceptions import DegreeMixed, NotDivisorial
from toricprobe.exterior import ExteriorElement
from toricprobe.intlat import INTEGERS, TRIVIAL_GROUP, TorsionData
from toricprobe.ospres import (BasisElement, GeneratorIndex, GradedQuotient, PresentationElement, build_presentation,
                               circuit_relations, integral_conjecture_check, nbc_basis_and_dimensions,
                               product_relations, reduce_to_basis, restriction_relations)
from toricprobe.ospres.integral import (IntegerEchelon, IntegralQuotient, is_unimodular, oriented_complement,
                                        quotient_group)
from toricprobe.ospres.presentation import UNIT, circuit_relation, generator_product
from toricprobe.ospres.quotient import nbc_dimensions, rational_rref
from test_fixtures import test_context, TestContext


def layer_with_atoms(poset, atoms):
    return next(w for w in range(len(poset)) if poset.atoms_below[w] == frozenset(atoms))


def gen(poset, atoms, layer_atoms=None):
    """
    e_{W,A} with W the layer lying on exactly layer_atoms (A itself by default).
    """
    return GeneratorIndex(layer_with_atoms(poset, layer_atoms if layer_atoms is not None else atoms), tuple(atoms))


def test_generators(test_context: TestContext):
    poset = test_context.poset('three_hypertori.json')
    pres = build_presentation(poset)
    assert len(pres.generators) == 7
    assert pres.generators[0] == UNIT
    assert [g.degree for g in pres.generators] == [0, 1, 1, 1, 2, 2, 2]
    assert str(gen(poset, (0, 1), (0, 1, 2))) == f"e[{len(poset) - 1};0,1]"
    assert pres.to_dict()['generators'][0] == {'layer': 0, 'atoms': [], 'degree': 0, 'name': 'e[0;]'}
    assert test_context.memory().find("Enumerated generators")[-1].params['generators'] == 7

    two = build_presentation(test_context.poset('two_components.json'))
    assert len(two.generators) == 8
    assert len(two.components[(0, 2)]) == 2


def test_presentation_needs_hypertori(test_context: TestContext):
    with pytest.raises(NotDivisorial):
        build_presentation(test_context.poset('point_in_plane.json'))
    with pytest.raises(ValueError):
        build_presentation(test_context.poset('three_hypertori.json'), j_convention='middle')
    with pytest.raises(ValueError):
        build_presentation(test_context.poset('three_hypertori.json'), variant='tensor')


def test_generator_product(test_context: TestContext):
    poset = test_context.poset('three_hypertori.json')
    pres = build_presentation(poset)
    s0, s1 = gen(poset, (0,)), gen(poset, (1,))
    p01 = gen(poset, (0, 1), (0, 1, 2))
    assert generator_product(pres, s0, s1) == [(1, p01)]
    assert generator_product(pres, s1, s0) == [(-1, p01)]
    assert generator_product(pres, s0, s0) == []
    assert generator_product(pres, UNIT, s1) == [(1, s1)]
    # Three atoms of rank two are dependent.
    assert generator_product(pres, s0, gen(poset, (1, 2), (0, 1, 2))) == []


def test_product_of_parallel_layers(test_context: TestContext):
    poset = test_context.poset('parallel.json')
    pres = build_presentation(poset)
    assert generator_product(pres, gen(poset, (0,)), gen(poset, (1,))) == []


def test_relation_families(test_context: TestContext):
    poset = test_context.poset('three_hypertori.json')
    pres = build_presentation(poset)
    products = product_relations(pres)
    # Unordered pairs of the six non unit generators, squares included.
    assert len(products) == 21
    restrictions = restriction_relations(pres)
    # One per row of the constant characters: 0 for the unit, 1 for each e[S], 2 for each e[P].
    assert len(restrictions) == 3 + 6
    assert all(r.degree() == r.element.terms[0].generators[0].degree + 1 for r in restrictions)
    [circuit] = circuit_relations(pres)
    assert circuit.degree() == 2
    assert dict(circuit.source) == {'atoms': [0, 1, 2], 'layer': len(poset) - 1}
    assert len(pres.relations()) == 21 + 9 + 1


def test_circuit_relation_terms(test_context: TestContext):
    poset = test_context.poset('two_components.json')
    pres = build_presentation(poset)
    p = layer_with_atoms(poset, {0, 1, 2})
    relation = circuit_relation(pres, (0, 1, 2), p)
    terms = [(t.coefficient, t.generators, t.psi) for t in relation.terms]
    assert terms == [
        (Fraction(-1), (gen(poset, (2,)),), ExteriorElement.linear((0, 1))),
        (Fraction(1), (GeneratorIndex(p, (0, 1)),), ExteriorElement.one()),
        (Fraction(-1), (GeneratorIndex(p, (0, 2)),), ExteriorElement.one()),
        (Fraction(1), (GeneratorIndex(p, (1, 2)),), ExteriorElement.one()),
    ]
    assert relation.to_dict()['kind'] == 'circuit'


def test_circuit_relation_max_convention(test_context: TestContext):
    poset = test_context.poset('two_components.json')
    pres = build_presentation(poset, j_convention='max')
    p = layer_with_atoms(poset, {0, 1, 2})
    relation = circuit_relation(pres, (0, 1, 2), p)
    first = relation.terms[0]
    # j = 1 is the largest atom left out of A = {2}; m({2}) / m({0, 2}) = 1/2.
    assert first.generators == (gen(poset, (2,)),)
    assert first.coefficient == Fraction(1, 2)
    assert first.psi == ExteriorElement.linear((1, 0))


def test_graded_variant_keeps_leading_terms(test_context: TestContext):
    poset = test_context.poset('three_hypertori.json')
    pres = build_presentation(poset, variant='graded')
    [relation] = circuit_relations(pres)
    p = len(poset) - 1
    assert [(t.coefficient, t.generators[0]) for t in relation.terms] == [
        (1, GeneratorIndex(p, (1, 2))), (-1, GeneratorIndex(p, (0, 2))), (1, GeneratorIndex(p, (0, 1)))]


def test_element_degrees_and_signs():
    g = GeneratorIndex(1, (0,))
    h = GeneratorIndex(2, (1,))
    x0 = ExteriorElement.linear((1, 0))
    mixed = PresentationElement.generator(g) + PresentationElement.of_torus(ExteriorElement.one())
    with pytest.raises(DegreeMixed):
        mixed.degree()
    product = PresentationElement.generator(g, x0) * PresentationElement.generator(h)
    [term] = product.terms
    assert term.coefficient == -1
    assert term.generators == (g, h)
    assert product.degree() == 3
    assert PresentationElement().degree() == 0
    assert PresentationElement.generator(g).scale(3).terms[0].coefficient == 3


@pytest.mark.parametrize('name, dims', [
    ('circle_point.json', (1, 2)),
    ('circle_two_points.json', (1, 3)),
    ('three_hypertori.json', (1, 5, 6)),
    ('two_components.json', (1, 5, 7)),
    ('parallel.json', (1, 4, 3)),
    ('empty_rank3.json', (1, 3, 3, 1)),
])
@pytest.mark.parametrize('variant', ['ring', 'graded'])
@pytest.mark.parametrize('j_convention', ['min', 'max'])
def test_dimensions_match_betti_numbers(test_context: TestContext, name, dims, variant, j_convention):
    poset = test_context.poset(name)
    quotient = GradedQuotient(build_presentation(poset, j_convention, variant))
    assert quotient.dimensions() == dims
    assert nbc_dimensions(quotient) == dims
    for k in range(len(dims)):
        quotient.check_basis(k)
    assert quotient.dimension(poset.ambient_rank + 1) == 0


def test_degree_cap(test_context: TestContext):
    quotient = GradedQuotient(build_presentation(test_context.poset('three_hypertori.json')), degree_cap=1)
    assert quotient.dimensions() == (1, 5)
    basis, dims = nbc_basis_and_dimensions(quotient)
    assert len(basis) == 6
    assert dims == (1, 5, 6)


def test_nbc_basis(test_context: TestContext):
    poset = test_context.poset('three_hypertori.json')
    quotient = GradedQuotient(build_presentation(poset))
    p = len(poset) - 1
    top = quotient.nbc_basis(2)
    assert len(top) == 6
    assert BasisElement(GeneratorIndex(p, (1, 2)), ()) not in top
    assert BasisElement(GeneratorIndex(p, (0, 1)), ()) in top
    assert BasisElement(UNIT, (0, 1)) in top
    assert str(BasisElement(UNIT, (0, 1))) == 'e[0;]*y0*y1'
    assert not quotient.is_nbc(GeneratorIndex(p, (1, 2)))
    assert quotient.frame(0).g.rows == ((1, 0), (0, 1))


def test_reduce_products(test_context: TestContext):
    poset = test_context.poset('three_hypertori.json')
    quotient = GradedQuotient(build_presentation(poset))
    p = len(poset) - 1
    s0, s1, s2 = gen(poset, (0,)), gen(poset, (1,)), gen(poset, (2,))
    e = PresentationElement.generator
    assert quotient.multiply(e(s0), e(s1)) == {BasisElement(GeneratorIndex(p, (0, 1)), ()): 1}
    assert quotient.multiply(e(s0), e(s0)) == {}

    # e[P;1,2] is not NBC: the circuit relation rewrites it.
    reduced = reduce_to_basis(quotient, e(s1) * e(s2))
    assert reduced[BasisElement(GeneratorIndex(p, (0, 1)), ())] == -1
    assert reduced[BasisElement(GeneratorIndex(p, (0, 2)), ())] == 1
    [(restricted, c)] = [(b, c) for b, c in reduced.items() if b.generator == s2]
    assert restricted.monomial == (1,)
    assert abs(c) == 1
    assert len(reduced) == 3


def test_reduce_restrictions(test_context: TestContext):
    poset = test_context.poset('three_hypertori.json')
    quotient = GradedQuotient(build_presentation(poset))
    s0 = gen(poset, (0,))
    # x0 is constant on S0, so e[S0] x0 vanishes; x1 does not.
    assert quotient.reduce(PresentationElement.generator(s0, ExteriorElement.linear((1, 0)))) == {}
    assert quotient.reduce(PresentationElement.generator(s0, ExteriorElement.linear((0, 1))))
    # Degree 3 vanishes in rank 2.
    assert quotient.reduce(PresentationElement.of_torus(ExteriorElement.monomial((0, 1))) *
                           PresentationElement.generator(s0)) == {}


def test_graded_commutativity(test_context: TestContext):
    poset = test_context.poset('two_components.json')
    quotient = GradedQuotient(build_presentation(poset))
    e = PresentationElement.generator
    x1 = PresentationElement.of_torus(ExteriorElement.linear((0, 1)))
    assert quotient.is_graded_commutative(e(gen(poset, (0,))), e(gen(poset, (2,))))
    assert quotient.is_graded_commutative(e(gen(poset, (0,))), x1)
    assert quotient.is_graded_commutative(x1, PresentationElement.of_torus(ExteriorElement.linear((1, 0))))


def test_orientation_flip(test_context: TestContext):
    poset = test_context.poset('two_components.json')
    pres = build_presentation(poset)
    forward, backward = GradedQuotient(pres), GradedQuotient(pres, orientation=-1)
    assert forward.ideal(2) == backward.ideal(2)


def test_rational_rref():
    rows = [{0: Fraction(2), 1: Fraction(4)}, {0: Fraction(1), 1: Fraction(2)}, {1: Fraction(3), 2: Fraction(1)}]
    assert rational_rref(rows, 3) == [{0: Fraction(1), 2: Fraction(-2, 3)}, {1: Fraction(1), 2: Fraction(1, 3)}]
    assert rational_rref([{}], 2) == []


def test_integer_echelon():
    echelon = IntegerEchelon()
    echelon.insert({0: 4, 1: 1})
    echelon.insert({0: 6, 2: 1})
    basis = echelon.basis()
    assert [min(row) for row in basis] == [0, 1]
    assert basis[0][0] == 2
    assert quotient_group(3, basis) == INTEGERS
    assert quotient_group(3, [{0: 4, 1: 1}, {0: 6, 2: 1}]) == INTEGERS
    coprime = IntegerEchelon()
    coprime.insert({0: -3, 1: 2})
    coprime.insert({0: 5})
    assert coprime.basis()[0][0] == 1
    assert coprime.basis()[1] == {1: 10}
    assert quotient_group(2, coprime.basis()) == TorsionData((10,), 0)


def test_quotient_group():
    assert quotient_group(3, [{0: 2, 1: 4}, {1: 1}]) == TorsionData((2,), 1)
    assert quotient_group(2, []) == TorsionData((), 2)
    assert quotient_group(2, [{0: 2}, {1: 3}]) == TorsionData((6,), 0)


def test_oriented_complement(test_context: TestContext):
    poset = test_context.poset('three_hypertori.json')
    layers = poset.layers
    p = len(poset) - 1
    s2 = layer_with_atoms(poset, {2})
    [chibar] = oriented_complement(layers[s2], layers[p], [(0, 1)])
    [flipped] = oriented_complement(layers[s2], layers[p], [(0, -1)])
    assert flipped == tuple(-x for x in chibar)
    assert oriented_complement(layers[p], layers[p], []) == []


def test_integral_check_unimodular(test_context: TestContext):
    poset = test_context.poset('three_hypertori.json')
    pres = build_presentation(poset)
    assert is_unimodular(pres)
    report = integral_conjecture_check(pres, cohomology_groups(poset))
    assert report.unimodular
    assert 'Lambda_L / Lambda_W' in report.to_dict()['orientation']
    assert report.all_match
    assert [d.found for d in report.degrees] == [INTEGERS, TorsionData((), 5), TorsionData((), 6), TRIVIAL_GROUP,
                                                 TRIVIAL_GROUP]
    assert report.to_dict()['degrees'][2] == {'degree': 2, 'match': True, 'expected': 'Z^6', 'found': 'Z^6',
                                              'expected_group': {'free_rank': 6, 'invariant_factors': []},
                                              'found_group': {'free_rank': 6, 'invariant_factors': []}}


def test_integral_check_reports_not_unimodular(test_context: TestContext):
    poset = test_context.poset('two_components.json')
    pres = build_presentation(poset)
    assert not is_unimodular(pres)
    report = integral_conjecture_check(pres, cohomology_groups(poset))
    assert not report.unimodular
    assert report.degrees[0].match and report.degrees[1].match
    integral = IntegralQuotient(GradedQuotient(pres))
    assert integral.group(0) == INTEGERS
    assert integral.group(5) == TRIVIAL_GROUP
