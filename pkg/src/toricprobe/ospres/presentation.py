"""
Generators and relations of the rational cohomology ring of the complement of a divisorial arrangement.

The ring is generated over H(T; Q) by one class e_{W,A} for every independent set of atoms A and every connected
component W of their intersection, in degree |A|.  The relations come in three families: products of generators,
restrictions (e_{W,A} psi vanishes when psi restricts to zero on W), and one circuit relation per set X of corank
one and component L of its intersection.  Terms are written with psi in the coordinates x_0..x_{d-1} of the torus.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from toricprobe.arimat import (AtomSet, GroundSet, fundamental_circuit, ground_set_of_poset, intersection_components,
                               is_independent, is_positroid, rank_of)
from toricprobe.arrangement import LayerPoset, layer_components, layer_leq
from toricprobe.exceptions import DegreeMixed, InconsistentConstants
from toricprobe.exterior import ExteriorElement, sort_sign
from toricprobe.logs import get_logger

PRODUCT = 'product'
RESTRICTION = 'restriction'
CIRCUIT = 'circuit'


@dataclass(frozen=True, order=True)
class GeneratorIndex:
    """
    e_{W,A}: W a layer index, A the atoms in increasing order.  The generator of the torus with no atoms is the unit.
    """
    layer: int
    atoms: AtomSet

    @property
    def degree(self) -> int:
        return len(self.atoms)

    def is_unit(self) -> bool:
        return not self.atoms

    def sort_key(self):
        return self.degree, self.layer, self.atoms

    def to_dict(self) -> dict:
        return {'layer': self.layer, 'atoms': list(self.atoms), 'degree': self.degree}

    def __str__(self):
        return f"e[{self.layer};{','.join(str(a) for a in self.atoms)}]"


UNIT = GeneratorIndex(0, ())


@dataclass(frozen=True)
class RelationTerm:
    """
    coefficient * e_{g_1} ... e_{g_r} * psi, the generators multiplied in the given order.
    """
    coefficient: Fraction
    generators: Tuple[GeneratorIndex, ...]
    psi: ExteriorElement

    def degree(self) -> int:
        try:
            return sum(g.degree for g in self.generators) + self.psi.degree()
        except ValueError as ex:
            raise DegreeMixed(str(ex)) from ex

    def to_dict(self) -> dict:
        return {'coefficient': str(self.coefficient), 'generators': [str(g) for g in self.generators],
                'psi': self.psi.to_dict()}


@dataclass(frozen=True)
class PresentationElement:
    """
    A formal combination of terms, not reduced modulo the relations.
    """
    terms: Tuple[RelationTerm, ...] = ()

    @classmethod
    def generator(cls, g: GeneratorIndex, psi: Optional[ExteriorElement] = None, coefficient=1) \
            -> 'PresentationElement':
        return cls((RelationTerm(Fraction(coefficient), (g,), psi if psi is not None else ExteriorElement.one()),))

    @classmethod
    def of_torus(cls, psi: ExteriorElement) -> 'PresentationElement':
        """
        A class pulled back from the torus.
        """
        return cls((RelationTerm(Fraction(1), (), psi),))

    def degree(self) -> int:
        """
        :raises DegreeMixed: When the terms live in different degrees.
        """
        degrees = {t.degree() for t in self.terms if not t.psi.is_zero() and t.coefficient}
        if len(degrees) > 1:
            raise DegreeMixed(f"element has terms in degrees {sorted(degrees)}", params={'degrees': sorted(degrees)})
        return degrees.pop() if degrees else 0

    def __add__(self, other: 'PresentationElement') -> 'PresentationElement':
        return PresentationElement(self.terms + other.terms)

    def scale(self, factor) -> 'PresentationElement':
        factor = Fraction(factor)
        return PresentationElement(tuple(RelationTerm(t.coefficient * factor, t.generators, t.psi)
                                         for t in self.terms))

    def __mul__(self, other: 'PresentationElement') -> 'PresentationElement':
        """
        (e_g psi)(e_h phi) = (-1)^(deg psi * deg e_h) e_g e_h psi phi, term by term.
        """
        terms = []
        for s in self.terms:
            for t in other.terms:
                psi_degree = s.psi.degree()
                sign = -1 if (psi_degree * sum(g.degree for g in t.generators)) % 2 else 1
                terms.append(RelationTerm(s.coefficient * t.coefficient * sign, s.generators + t.generators,
                                          s.psi.wedge(t.psi)))
        return PresentationElement(tuple(terms))

    def to_dict(self) -> list:
        return [t.to_dict() for t in self.terms]


@dataclass(frozen=True)
class Relation:
    kind: str
    element: PresentationElement

    """
    What produced the relation: the generator pair, the restricted generator, or the set X and component L.
    """
    source: Tuple[Tuple[str, object], ...] = ()

    @property
    def terms(self) -> Tuple[RelationTerm, ...]:
        return self.element.terms

    def degree(self) -> int:
        return self.element.degree()

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'degree': self.degree(), 'source': dict(self.source),
                'terms': self.element.to_dict()}


@dataclass
class Presentation:
    """
    The generators of a divisorial arrangement and, computed on demand, its relations.
    """
    poset: LayerPoset
    ground: GroundSet
    generators: Tuple[GeneratorIndex, ...]
    j_convention: str = 'min'
    variant: str = 'ring'

    """
    For every independent atom set, the layers that are components of its intersection.
    """
    components: Dict[AtomSet, Tuple[int, ...]] = field(default_factory=dict)
    _products: Dict[Tuple[GeneratorIndex, GeneratorIndex], List[Tuple[int, GeneratorIndex]]] = \
        field(default_factory=dict, repr=False)

    @property
    def ambient_rank(self) -> int:
        return self.poset.ambient_rank

    def relations(self) -> List[Relation]:
        return product_relations(self) + restriction_relations(self) + circuit_relations(self)

    def to_dict(self) -> dict:
        return {'j_convention': self.j_convention, 'variant': self.variant,
                'generators': [{**g.to_dict(), 'name': str(g)} for g in self.generators]}


def build_presentation(poset: LayerPoset, j_convention: str = 'min', variant: str = 'ring') -> Presentation:
    """
    :raises NotDivisorial: When some atom is not a hypertorus.
    """
    if j_convention not in ('min', 'max'):
        raise ValueError(f"j_convention must be 'min' or 'max', got {j_convention!r}")
    if variant not in ('ring', 'graded'):
        raise ValueError(f"variant must be 'ring' or 'graded', got {variant!r}")
    ground = ground_set_of_poset(poset)
    components: Dict[AtomSet, Tuple[int, ...]] = {}
    generators = enumerate_generators(ground, poset, components)
    get_logger().debug(__name__, "Enumerated generators", {
        'generators': len(generators), 'j_convention': j_convention, 'variant': variant})
    return Presentation(poset, ground, tuple(generators), j_convention, variant, components)


def enumerate_generators(ground: GroundSet, poset: LayerPoset,
                         components: Optional[Dict[AtomSet, Tuple[int, ...]]] = None) -> List[GeneratorIndex]:
    """
    Every pair (W, A): A independent, W a component of the intersection of A.  The empty set gives the unit.
    :param components: When given, filled with the layers of each independent set.
    """
    components = {} if components is None else components
    out = []
    for size in range(0, min(len(ground), ground.ambient_rank) + 1):
        for atoms in combinations(range(len(ground)), size):
            if not is_independent(ground, atoms):
                continue
            layers = tuple(sorted(poset.index_of(lay) for lay in intersection_components(ground, atoms)))
            components[atoms] = layers
            out.extend(GeneratorIndex(w, atoms) for w in layers)
    return sorted(out, key=GeneratorIndex.sort_key)


def generator_product(pres: Presentation, g: GeneratorIndex, h: GeneratorIndex) -> List[Tuple[int, GeneratorIndex]]:
    """
    e_g e_h as a signed sum of generators: (-1)^l(A, A') times the components of W meet W' over A + A', or nothing
    when the atoms overlap, are dependent, or the layers do not meet.
    """
    if g.is_unit():
        return [(1, h)]
    if h.is_unit():
        return [(1, g)]
    key = (g, h)
    if key in pres._products:
        return pres._products[key]
    out: List[Tuple[int, GeneratorIndex]] = []
    joined = g.atoms + h.atoms
    sign = sort_sign(joined)
    union = tuple(sorted(joined))
    if sign and is_independent(pres.ground, union):
        layers = pres.poset.layers
        try:
            meets = layer_components(pres.ambient_rank, layers[g.layer].equations() + layers[h.layer].equations())
        except InconsistentConstants:
            meets = []
        out = [(sign, GeneratorIndex(pres.poset.index_of(lay), union)) for lay in meets]
    pres._products[key] = out
    return out


def product_relations(pres: Presentation) -> List[Relation]:
    """
    e_g e_h - (-1)^l(A, A') sum e_{L, A + A'} for every unordered pair of non unit generators.
    """
    out = []
    movable = [g for g in pres.generators if not g.is_unit()]
    one = ExteriorElement.one()
    for i, g in enumerate(movable):
        for h in movable[i:]:
            terms = [RelationTerm(Fraction(1), (g, h), one)]
            terms.extend(RelationTerm(Fraction(-sign), (lg,), one) for sign, lg in generator_product(pres, g, h))
            out.append(Relation(PRODUCT, PresentationElement(tuple(terms)), (('left', str(g)), ('right', str(h)))))
    return out


def restriction_relations(pres: Presentation) -> List[Relation]:
    """
    e_{W,A} chi for every Hermite basis row chi of the characters constant on W.
    """
    out = []
    for g in pres.generators:
        for row in pres.poset.layers[g.layer].sub.rows:
            element = PresentationElement.generator(g, ExteriorElement.linear(row))
            out.append(Relation(RESTRICTION, element, (('generator', str(g)), ('character', list(row)))))
    return out


def corank_one_sets(ground: GroundSet) -> List[AtomSet]:
    """
    The sets X with |X| = rank(X) + 1, which each contain exactly one circuit.
    """
    out = []
    for size in range(2, min(len(ground), ground.ambient_rank + 1) + 1):
        for xs in combinations(range(len(ground)), size):
            if rank_of(ground, xs) == size - 1:
                out.append(xs)
    return out


def component_through(pres: Presentation, atoms: AtomSet, layer: int) -> int:
    """
    The component of the intersection of atoms that contains the given layer.
    """
    target = pres.poset.layers[layer]
    for lay in intersection_components(pres.ground, atoms):
        if layer_leq(lay, target):
            return pres.poset.index_of(lay)
    raise ValueError(f"No component of atoms {list(atoms)} contains layer {layer}")


def psi_of(ground: GroundSet, atoms: Sequence[int]) -> ExteriorElement:
    """
    The product of the classes of the characters of atoms, in the order given; 1 for no atoms.
    """
    out = ExteriorElement.one()
    for b in atoms:
        out = out.wedge(ExteriorElement.linear(ground.characters[b]))
    return out


def circuit_relation(pres: Presentation, xs: AtomSet, layer: int, orientation: int = 1) -> Relation:
    """
    The relation of a corank one set X at a component L of its intersection.
    :param orientation: -1 runs the construction with the opposite circuit orientation.
    """
    ground = pres.ground
    circuit = fundamental_circuit(ground, xs)
    if orientation < 0:
        circuit = circuit.negated()
    support = set(circuit.support)
    forced = tuple(x for x in xs if x not in support)
    terms = []
    if pres.variant == 'graded':
        for j in circuit.support:
            below = sum(1 for x in xs if x < j)
            atoms = tuple(x for x in xs if x != j)
            terms.append(RelationTerm(Fraction((-1) ** below), (GeneratorIndex(layer, atoms),), ExteriorElement.one()))
    else:
        for size in range(0, len(circuit.support)):
            for taken in combinations(circuit.support, size):
                atoms = tuple(sorted(forced + taken))
                if not is_positroid(circuit, atoms):
                    continue
                outside = [x for x in xs if x not in atoms]
                if pres.j_convention == 'min':
                    j = min(c for c in circuit.support if c not in atoms)
                else:
                    j = max(outside)
                bs = tuple(c for c in circuit.support if c not in atoms and c != j)
                below = sum(1 for x in xs if x < j)
                sign = (-1) ** below * sort_sign(atoms + bs)
                deleted = tuple(x for x in xs if x != j)
                coefficient = Fraction(len(intersection_components(ground, atoms)),
                                       len(intersection_components(ground, deleted)))
                w = component_through(pres, atoms, layer)
                terms.append(RelationTerm(sign * coefficient, (GeneratorIndex(w, atoms),), psi_of(ground, bs)))
    return Relation(CIRCUIT, PresentationElement(tuple(terms)), (('atoms', list(xs)), ('layer', layer)))


def circuit_relations(pres: Presentation, orientation: int = 1) -> List[Relation]:
    """
    One relation per corank one set X and component L of its intersection; the graded variant keeps only the
    leading part sum over j in C of (-1)^|X_<j| e_{L, X - j}.
    """
    out = []
    for xs in corank_one_sets(pres.ground):
        for lay in intersection_components(pres.ground, xs):
            out.append(circuit_relation(pres, xs, pres.poset.index_of(lay), orientation))
    get_logger().debug(__name__, "Built circuit relations", {'relations': len(out), 'variant': pres.variant})
    return out
