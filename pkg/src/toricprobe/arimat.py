"""
The oriented arithmetic matroid of an arrangement of hypertori.

Atom i is {chi_i = c_i}, chi_i the generator of the lattice its characters span.  That generator may be a multiple
of a primitive vector (z^2 = 1 is one atom with two components), in which case m({i}) is its content.  Atom sets
are tuples of indices in input order, which is also the order used for broken circuits.
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from toricprobe.arrangement import (ONE, AtomSpec, Character, Layer, LayerPoset, UnityRoot, layer_components,
                                    span_homomorphism)
from toricprobe.exceptions import EmptyIntersection, InconsistentConstants, NotCorank1, NotDivisorial
from toricprobe.intlat import IntMatrix, content, kernel_and_saturation, row_rank
from toricprobe.logs import get_logger

AtomSet = Tuple[int, ...]


@dataclass(frozen=True)
class GroundSet:
    ambient_rank: int
    characters: Tuple[Character, ...]
    constants: Tuple[UnityRoot, ...]
    _ranks: Dict[FrozenSet[int], int] = field(default_factory=dict, compare=False, repr=False)
    _components: Dict[FrozenSet[int], Optional[Tuple[Layer, ...]]] = field(default_factory=dict, compare=False,
                                                                            repr=False)

    def __len__(self):
        return len(self.characters)

    def matrix(self, atoms: Iterable[int]) -> IntMatrix:
        return IntMatrix.from_rows([self.characters[a] for a in atoms], self.ambient_rank)

    def equations(self, atoms: Iterable[int]):
        return [(self.characters[a], self.constants[a]) for a in atoms]

    def with_trivial_constants(self) -> 'GroundSet':
        return GroundSet(self.ambient_rank, self.characters, tuple(ONE for _ in self.characters))

    def to_dict(self) -> dict:
        return {'ambient_rank': self.ambient_rank,
                'atoms': [{'character': list(c), 'constant': str(k), 'content': content(c)}
                          for c, k in zip(self.characters, self.constants)]}


@dataclass(frozen=True)
class OrientedCircuit:
    """
    support lists the atoms of the circuit in increasing order; relation[k] is the coefficient of support[k] in the
    primitive relation, the first one positive.
    """
    support: AtomSet
    relation: Tuple[int, ...]

    def coefficient(self, atom: int) -> int:
        return self.relation[self.support.index(atom)]

    def sign(self, atom: int) -> int:
        return 1 if self.coefficient(atom) > 0 else -1

    @property
    def signs(self) -> Tuple[int, ...]:
        return tuple(1 if r > 0 else -1 for r in self.relation)

    def negated(self) -> 'OrientedCircuit':
        return OrientedCircuit(self.support, tuple(-r for r in self.relation))

    def to_dict(self) -> dict:
        return {'support': list(self.support), 'relation': list(self.relation),
                'signs': ['+' if s > 0 else '-' for s in self.signs]}


@dataclass(frozen=True)
class CircuitReport:
    """
    A circuit with its multiplicities.  scaled_relation is m(C) times the primitive one; the coefficient identity
    says its entries are, up to sign, m(C minus i).  Multiplicities are None when the intersection is empty.
    """
    circuit: OrientedCircuit
    m_circuit: Optional[int]
    m_deleted: Tuple[Optional[int], ...]

    @property
    def scaled_relation(self) -> Optional[Tuple[int, ...]]:
        if self.m_circuit is None:
            return None
        return tuple(self.m_circuit * r for r in self.circuit.relation)

    @property
    def identity_holds(self) -> Optional[bool]:
        if self.m_circuit is None or any(m is None for m in self.m_deleted):
            return None
        return all(self.m_circuit * abs(r) == m for r, m in zip(self.circuit.relation, self.m_deleted))

    def to_dict(self) -> dict:
        return {**self.circuit.to_dict(), 'm_circuit': self.m_circuit, 'm_deleted': list(self.m_deleted),
                'scaled_relation': None if self.scaled_relation is None else list(self.scaled_relation),
                'identity_holds': self.identity_holds}


@dataclass(frozen=True)
class NbcCertificate:
    layer: int
    atoms: AtomSet
    independent: bool = True
    no_broken_circuit: bool = True

    def to_dict(self) -> dict:
        return {'layer': self.layer, 'atoms': list(self.atoms), 'independent': self.independent,
                'no_broken_circuit': self.no_broken_circuit}


def ground_set(ambient_rank: int, atoms: Sequence[AtomSpec]) -> GroundSet:
    """
    :raises NotDivisorial: When an atom is not of codimension one.
    """
    characters = []
    constants = []
    for i, atom in enumerate(atoms):
        basis, values = span_homomorphism(ambient_rank, atom.equations())
        if basis.nrows != 1:
            raise NotDivisorial(f"the atom has codimension {basis.nrows}", i)
        characters.append(basis.rows[0])
        constants.append(UnityRoot.of(values[0]))
    return GroundSet(ambient_rank, tuple(characters), tuple(constants))


def ground_set_of_poset(poset: LayerPoset) -> GroundSet:
    return ground_set(poset.ambient_rank, poset.atoms)


def rank_of(ground: GroundSet, atoms: Iterable[int]) -> int:
    key = frozenset(atoms)
    if key not in ground._ranks:
        ground._ranks[key] = row_rank(ground.matrix(sorted(key))) if key else 0
    return ground._ranks[key]


def is_independent(ground: GroundSet, atoms: Sequence[int]) -> bool:
    return len(set(atoms)) == len(atoms) and rank_of(ground, atoms) == len(atoms)


def intersection_components(ground: GroundSet, atoms: Iterable[int]) -> Tuple[Layer, ...]:
    """
    :return: The connected components of the intersection of the atoms, empty when they do not meet.
    """
    key = frozenset(atoms)
    if key not in ground._components:
        try:
            found = tuple(layer_components(ground.ambient_rank, ground.equations(sorted(key))))
        except InconsistentConstants:
            found = ()
        ground._components[key] = found
    return ground._components[key]


def multiplicity(ground: GroundSet, atoms: Iterable[int]) -> int:
    """
    m(A), the number of connected components of the intersection of the atoms in A.
    :raises EmptyIntersection: When the atoms do not meet.
    """
    atoms = tuple(atoms)
    found = intersection_components(ground, atoms)
    if not found:
        raise EmptyIntersection(f"atoms {sorted(set(atoms))} have an empty intersection",
                                params={'atoms': sorted(set(atoms))})
    return len(found)


def fundamental_circuit(ground: GroundSet, atoms: Iterable[int]) -> OrientedCircuit:
    """
    The unique circuit of a set X with |X| = rank(X) + 1, with its primitive relation.
    :raises NotCorank1: For any other X.
    """
    xs = tuple(sorted(set(atoms)))
    if len(xs) != rank_of(ground, xs) + 1:
        raise NotCorank1(f"atoms {list(xs)} have rank {rank_of(ground, xs)}", params={'atoms': list(xs)})
    kernel, _ = kernel_and_saturation(ground.matrix(xs))
    vector = kernel.rows[0]
    support = tuple(x for x, r in zip(xs, vector) if r)
    relation = tuple(r for r in vector if r)
    if relation[0] < 0:
        relation = tuple(-r for r in relation)
    return OrientedCircuit(support, relation)


def is_positroid(circuit: OrientedCircuit, atoms: Iterable[int]) -> bool:
    """
    C/A is a positroid when the signs of the circuit outside A all agree.
    """
    taken = set(atoms)
    return len({circuit.sign(c) for c in circuit.support if c not in taken}) <= 1


def circuits(ground: GroundSet, within: Optional[Iterable[int]] = None) -> List[OrientedCircuit]:
    """
    Every circuit of the matroid, or of its restriction to the atoms in within, ordered by size then support.
    """
    atoms = sorted(set(within)) if within is not None else list(range(len(ground)))
    found = []
    for size in range(1, min(len(atoms), ground.ambient_rank + 1) + 1):
        for subset in combinations(atoms, size):
            if rank_of(ground, subset) != size - 1:
                continue
            circuit = fundamental_circuit(ground, subset)
            if circuit.support == subset:
                found.append(circuit)
    return found


def circuit_report(ground: GroundSet, circuit: OrientedCircuit) -> CircuitReport:
    def m_or_none(atoms):
        found = intersection_components(ground, atoms)
        return len(found) if found else None

    return CircuitReport(circuit, m_or_none(circuit.support),
                         tuple(m_or_none(tuple(c for c in circuit.support if c != i)) for i in circuit.support))


def broken_circuits(ground: GroundSet, within: Iterable[int]) -> List[AtomSet]:
    """
    The circuits of the restriction to within, each with its smallest atom removed.
    """
    return [c.support[1:] for c in circuits(ground, within)]


def nbc_sets(ground: GroundSet, poset: LayerPoset, layer: int) -> List[NbcCertificate]:
    """
    The no broken circuit sets of a layer W: independent sets of cd W atoms through W with no broken circuit of the
    matroid of the atoms through W.  W is then a component of their intersection.
    """
    through = sorted(poset.atoms_below[layer])
    broken = [set(b) for b in broken_circuits(ground, through)]
    codim = poset.codim(layer)
    out = []
    for subset in combinations(through, codim):
        if not is_independent(ground, subset):
            continue
        if any(b <= set(subset) for b in broken):
            continue
        out.append(NbcCertificate(layer, subset))
    get_logger().trace(__name__, "Enumerated no broken circuit sets", {'layer': layer, 'count': len(out)})
    return out
