"""
An integral version of the presentation, compared degree by degree with the integral cohomology.

In every circuit relation the term (m(A)/m(X - j)) e_{W,A} psi_B becomes e_{W,A} chibar_1 ... chibar_r, where the
chibar_i are a basis of the characters constant on L modulo those constant on W, oriented like the chi_b, b in B.
The relations then generate a submodule of the free Z-module on the spanning set, and each degree of the quotient is
compared with the group the layer sum gives.  A difference is a finding, not an error.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from sympy import ZZ

from toricprobe.addcoh import BettiTable
from toricprobe.arimat import fundamental_circuit, intersection_components, is_positroid
from toricprobe.arrangement import Layer
from toricprobe.exterior import ExteriorElement, sort_sign
from toricprobe.intlat import (TRIVIAL_GROUP, IntMatrix, TorsionData, inverse_unimodular, lattice_coordinates,
                               smith_normal_form, unimodular_completion)
from toricprobe.logs import get_logger
from toricprobe.ospres.presentation import (CIRCUIT, GeneratorIndex, Presentation, PresentationElement, Relation,
                                            RelationTerm, component_through, corank_one_sets)
from toricprobe.ospres.quotient import GradedQuotient, SparseRow

ORIENTATION_RULE = ("chibar is a basis of Lambda_L / Lambda_W, the saturated lattice of characters constant on L "
                    "modulo the saturated lattice of characters constant on W (not the lattices spanned by the atom "
                    "characters of the circuit and of A); it is completed from Lambda_W inside Lambda_L, then its "
                    "first vector is negated when the coordinates of (chi_b, b in B) in it have negative determinant")

IntRow = Dict[int, int]


@dataclass(frozen=True)
class IntegralDegree:
    degree: int
    expected: TorsionData
    found: TorsionData

    @property
    def match(self) -> bool:
        return self.expected == self.found

    def to_dict(self) -> dict:
        return {'degree': self.degree, 'match': self.match, 'expected': str(self.expected),
                'found': str(self.found), 'expected_group': self.expected.to_dict(),
                'found_group': self.found.to_dict()}


@dataclass(frozen=True)
class ConjectureReport:
    j_convention: str
    unimodular: bool
    orientation: str
    degrees: Tuple[IntegralDegree, ...]

    @property
    def all_match(self) -> bool:
        return all(d.match for d in self.degrees)

    def mismatches(self) -> List[IntegralDegree]:
        return [d for d in self.degrees if not d.match]

    def to_dict(self) -> dict:
        return {'j_convention': self.j_convention, 'unimodular': self.unimodular, 'all_match': self.all_match,
                'orientation': self.orientation, 'degrees': [d.to_dict() for d in self.degrees]}


def is_unimodular(pres: Presentation) -> bool:
    """
    True when every independent set of atoms meets in a single component.
    """
    return all(len(layers) == 1 for layers in pres.components.values())


def oriented_complement(lower: Layer, upper: Layer, characters: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """
    A basis of the characters constant on upper modulo those constant on lower (lower <= upper), oriented so that
    the given characters have coordinates of positive determinant in it.
    """
    basis = upper.sub
    r = basis.nrows
    inner = IntMatrix.from_rows([lattice_coordinates(basis, row) for row in lower.sub.rows], r)
    completion = unimodular_completion(inner)
    c = inner.nrows
    complement = [basis.apply(completion.rows[k]) for k in range(c, r)]
    if not complement:
        return []
    to_completion = inverse_unimodular(completion)
    coords = [to_completion.apply(lattice_coordinates(basis, chi))[c:] for chi in characters]
    if IntMatrix.from_rows(coords, r - c).determinant() < 0:
        complement[0] = tuple(-x for x in complement[0])
    return complement


def integral_circuit_relation(pres: Presentation, xs: Tuple[int, ...], layer: int) -> Relation:
    ground = pres.ground
    layers = pres.poset.layers
    circuit = fundamental_circuit(ground, xs)
    support = set(circuit.support)
    forced = tuple(x for x in xs if x not in support)
    terms = []
    for size in range(0, len(circuit.support)):
        for taken in combinations(circuit.support, size):
            atoms = tuple(sorted(forced + taken))
            if not is_positroid(circuit, atoms):
                continue
            if pres.j_convention == 'min':
                j = min(c for c in circuit.support if c not in atoms)
            else:
                j = max(x for x in xs if x not in atoms)
            bs = tuple(c for c in circuit.support if c not in atoms and c != j)
            sign = (-1) ** sum(1 for x in xs if x < j) * sort_sign(atoms + bs)
            w = component_through(pres, atoms, layer)
            psi = ExteriorElement.one()
            for chi in oriented_complement(layers[w], layers[layer], [ground.characters[b] for b in bs]):
                psi = psi.wedge(ExteriorElement.linear(chi))
            terms.append(RelationTerm(Fraction(sign), (GeneratorIndex(w, atoms),), psi))
    return Relation(CIRCUIT, PresentationElement(tuple(terms)), (('atoms', list(xs)), ('layer', layer)))


def integral_circuit_relations(pres: Presentation) -> List[Relation]:
    out = []
    for xs in corank_one_sets(pres.ground):
        for lay in intersection_components(pres.ground, xs):
            out.append(integral_circuit_relation(pres, xs, pres.poset.index_of(lay)))
    return out


def _combine(a: int, left: IntRow, b: int, right: IntRow) -> IntRow:
    out = {j: a * c for j, c in left.items()}
    for j, c in right.items():
        out[j] = out.get(j, 0) + b * c
    return {j: c for j, c in out.items() if c}


class IntegerEchelon:
    """
    A sparse echelon basis of a submodule of Z^n, one row per pivot column.  Inserting a row keeps the span; when
    two rows share a pivot, a 2x2 unimodular combination puts their gcd on the pivot.
    """

    def __init__(self):
        self.rows: Dict[int, IntRow] = {}

    def insert(self, row: IntRow) -> None:
        row = {j: c for j, c in row.items() if c}
        while row:
            p = min(row)
            if p not in self.rows:
                self.rows[p] = row if row[p] > 0 else {j: -c for j, c in row.items()}
                return
            held = self.rows[p]
            a, b = held[p], row[p]
            if b % a == 0:
                row = _combine(1, row, -(b // a), held)
                continue
            s, t, g = (int(x) for x in ZZ.gcdex(a, b))
            self.rows[p] = _combine(s, held, t, row)
            row = _combine(a // g, row, -(b // g), held)

    def basis(self) -> List[IntRow]:
        return [self.rows[p] for p in sorted(self.rows)]


def quotient_group(ncols: int, rows: List[IntRow]) -> TorsionData:
    """
    Z^ncols modulo the span of the rows: rows with a unit entry eliminate their column, the rest goes to a Smith
    form.
    """
    rows = [dict(r) for r in rows if r]
    remaining = ncols
    while True:
        found = None
        for k, row in enumerate(rows):
            col = next((j for j, c in row.items() if abs(c) == 1), None)
            if col is not None:
                found = (k, col)
                break
        if found is None:
            break
        k, col = found
        unit = rows.pop(k)
        unit_sign = unit[col]
        rows = [_combine(1, row, -row[col] * unit_sign, unit) if col in row else row for row in rows]
        rows = [r for r in rows if r]
        remaining -= 1
    if not rows:
        return TorsionData.from_diagonal([], remaining)
    used = sorted({j for row in rows for j in row})
    dense = IntMatrix.from_rows([[row.get(j, 0) for j in used] for row in rows], len(used))
    diagonal = [x for x in smith_normal_form(dense).diagonal if x]
    return TorsionData.from_diagonal(diagonal, remaining - len(diagonal))


class IntegralQuotient:
    """
    The integral analogue of GradedQuotient, sharing its frames and spanning sets.
    """

    def __init__(self, quotient: GradedQuotient):
        self.quotient = quotient
        self.presentation = quotient.presentation
        self._ideal: Dict[int, List[IntRow]] = {}
        self._relations: Optional[Dict[int, List[Relation]]] = None

    def _integral_row(self, row: Dict[int, Fraction]) -> IntRow:
        if any(c.denominator != 1 for c in row.values()):
            raise ValueError(f"Row {row} has non integral entries")
        return {j: int(c) for j, c in row.items()}

    def relations_in_degree(self, degree: int) -> List[Relation]:
        if self._relations is None:
            grouped: Dict[int, List[Relation]] = {}
            for rel in integral_circuit_relations(self.presentation):
                grouped.setdefault(rel.degree(), []).append(rel)
            self._relations = grouped
        return self._relations.get(degree, [])

    def ideal(self, degree: int) -> List[IntRow]:
        if degree in self._ideal:
            return self._ideal[degree]
        q = self.quotient
        if degree > q.ambient_rank:
            self._ideal[degree] = []
            return []
        vectors = [q.to_frame(rel.element) for rel in self.relations_in_degree(degree)]
        if degree >= 1:
            for row in self.ideal(degree - 1):
                below = q._to_vector(_as_fractions(row), degree - 1)
                vectors.extend(q.times_x(below, i) for i in range(q.ambient_rank))
        for h in q.generators:
            if 1 <= h.degree <= degree:
                for row in self.ideal(degree - h.degree):
                    vectors.append(q.times_generator(h, q._to_vector(_as_fractions(row), degree - h.degree)))
        echelon = IntegerEchelon()
        for v in vectors:
            if v:
                echelon.insert(self._integral_row(q._to_row(v, degree)))
        self._ideal[degree] = echelon.basis()
        get_logger().debug(__name__, "Closed the integral ideal in one degree", {
            'degree': degree, 'spanning': len(q.columns(degree)), 'rank': len(self._ideal[degree])})
        return self._ideal[degree]

    def group(self, degree: int) -> TorsionData:
        if degree > self.quotient.ambient_rank:
            return TRIVIAL_GROUP
        return quotient_group(len(self.quotient.columns(degree)), self.ideal(degree))


def _as_fractions(row: IntRow) -> SparseRow:
    return {j: Fraction(c) for j, c in row.items()}


def integral_conjecture_check(pres: Presentation, table: BettiTable) -> ConjectureReport:
    """
    Compares, in every degree, the integral presentation with the integral cohomology.
    """
    integral = IntegralQuotient(GradedQuotient(pres))
    degrees = tuple(IntegralDegree(k, expected, integral.group(k)) for k, expected in enumerate(table.degrees))
    report = ConjectureReport(pres.j_convention, is_unimodular(pres), ORIENTATION_RULE, degrees)
    params = {'unimodular': report.unimodular, 'mismatches': [d.degree for d in report.mismatches()]}
    if report.all_match:
        get_logger().debug(__name__, "Integral presentation matches the cohomology", params)
    else:
        get_logger().warning(__name__, "Integral presentation differs from the cohomology", params)
    return report
